#include "doctest.h"

#include <numeric>

#include "ffdyn/errors.hpp"
#include "ffdyn/expr_io.hpp"
#include "ffdyn/mult_dependence.hpp"
#include "helpers.hpp"
#include "random_objects.hpp"

using namespace ffdyn;
using namespace test;

namespace {

DependenceQuery box(const char* alpha, const char* places, int n, int k, int r, int s) {
  DependenceQuery q;
  q.alpha = Pt(alpha);
  q.S = S(places);
  q.n_max = n;
  q.k_max = k;
  q.r_max = r;
  q.s_max = s;
  return q;
}

// Brute force over the box with field arithmetic and factoring-based is_S_unit.
std::vector<std::array<int, 4>> brute_force(const RationalMap& phi, const DependenceQuery& q) {
  const auto orbit = iterate(phi, q.alpha, q.n_max + q.k_max);
  std::vector<std::array<int, 4>> out;
  for (int n = 1; n <= q.n_max; ++n) {
    for (int k = 0; k <= q.k_max; ++k) {
      const auto& X = orbit[static_cast<std::size_t>(n + k)];
      const auto& Y = orbit[static_cast<std::size_t>(k)];
      if (X.is_infinity() || Y.is_infinity()) continue;
      const FieldElement x = X.to_affine(), y = Y.to_affine();
      if (x.is_zero() || y.is_zero()) continue;
      for (int r = 1; r <= q.r_max; ++r) {
        for (int s = -q.s_max; s <= q.s_max; ++s) {
          if (s == 0 || std::gcd(r, s) != 1) continue;
          if (is_S_unit(x.pow(r) / y.pow(s), q.S)) out.push_back({n, k, r, s});
        }
      }
    }
  }
  return out;
}

std::vector<std::array<int, 4>> keys(const DependenceResult& res) {
  std::vector<std::array<int, 4>> out;
  for (const auto& s : res.solutions) out.push_back({s.n, s.k, s.r, s.s});
  return out;
}

FieldElement evaluate_ratio_check(const RationalMap& phi, const ProjectivePoint& alpha,
                                  const DependenceSolution& s) {
  const auto orbit = iterate(phi, alpha, s.n + s.k);
  return orbit[static_cast<std::size_t>(s.n + s.k)].to_affine().pow(s.r) /
         orbit[static_cast<std::size_t>(s.k)].to_affine().pow(s.s);
}

}  // namespace

TEST_CASE("unit hits") {
  CHECK(unit_hits(Map("z^2 + t"), Pt("0"), S("t, inf"), 3).hits == std::vector<int>{1});
  CHECK(unit_hits(Map("t*z^2"), Pt("1"), S("t, inf"), 5).hits == std::vector<int>{1, 2, 3, 4, 5});
  // Independent check of the induction formula phi^n(1) = t^(2^n - 1).
  const auto orbit = iterate(Map("t*z^2"), Pt("1"), 5);
  for (int n = 0; n <= 5; ++n) {
    CHECK(orbit[static_cast<std::size_t>(n)] == ProjectivePoint::affine(Polynomial::monomial(1, (1u << n) - 1)));
  }
  CHECK(unit_hits(Map("z^2 - 1"), Pt("0"), S(""), 6).hits == std::vector<int>{1, 3, 5});
  CHECK(unit_hits(Map("z^2 + t"), Pt("0"), S(""), 4).hits.empty());
  CHECK_THROWS_AS(unit_hits(Map("z^2 + t"), Pt("inf"), S(""), 4), std::invalid_argument);
}

TEST_CASE("saturate exponents") {
  CHECK(saturate_exponents(4, -6) == std::pair{2, -3});
  CHECK(saturate_exponents(-1, 5) == std::pair{1, -5});
  CHECK(saturate_exponents(3, 7) == std::pair{3, 7});
  CHECK(saturate_exponents(-4, -2) == std::pair{2, 1});
  CHECK_THROWS_AS(saturate_exponents(0, 3), std::invalid_argument);
}

TEST_CASE("dependence search examples") {
  const auto phi = Map("z^2 + t");
  const auto q = box("0", "inf", 3, 3, 3, 3);
  const auto res = dependence_search(phi, q);
  CHECK(res.solutions.empty());
  CHECK(brute_force(phi, q).empty());
  CHECK(res.alpha_wandering == true);
  CHECK(res.zero_periodic == false);
  CHECK_FALSE(res.notes.empty());  // k = 0 hits alpha = 0

  const auto mono = Map("t*z^2");
  const auto q2 = box("1", "t, inf", 2, 2, 3, 3);
  const auto res2 = dependence_search(mono, q2);
  for (int n = 1; n <= 2; ++n) {
    for (int k = 0; k <= 2; ++k) {
      const bool found = std::any_of(res2.solutions.begin(), res2.solutions.end(),
                                     [&](const DependenceSolution& s) { return s.n == n && s.k == k; });
      CHECK(found);
    }
  }
  const auto it = std::find_if(res2.solutions.begin(), res2.solutions.end(), [](const auto& s) {
    return s.n == 1 && s.k == 1 && s.r == 1 && s.s == 1;
  });
  REQUIRE(it != res2.solutions.end());
  CHECK(it->u == K("t^2"));
  CHECK(keys(res2) == brute_force(mono, q2));
  for (const auto& s : res2.solutions) {
    CHECK(s.r > 0);
    CHECK(std::gcd(s.r, s.s) == 1);
    CHECK(is_S_unit(s.u, q2.S));
    CHECK(s.u == evaluate_ratio_check(mono, q2.alpha, s));
    CHECK(s.n_at_least_rho == (static_cast<double>(s.n) >= s.rho - 1e-12));
  }
  CHECK_THROWS_AS(dependence_search(phi, box("inf", "inf", 1, 1, 1, 1)), std::invalid_argument);
}

TEST_CASE("polynomial case classifier") {
  const auto phi = Map("z^2 + t");
  CHECK(polynomial_bad_places(phi) == S("inf"));
  CHECK(polynomial_bad_places(Map("(z^2 + 1)/t")) == S("t, inf"));
  CHECK(polynomial_bad_places(Map("t*z^2 + 1")) == S("t, inf"));
  CHECK_THROWS_AS(polynomial_bad_places(Map("(z^2 - t)/z")), DomainError);

  // A.1: with S = {(t), (t+1), inf}, x2 * x1 = t^2 (t + 1) is a unit.
  const auto res = dependence_search(phi, box("0", "t, t + 1, inf", 1, 1, 1, 1));
  REQUIRE(res.solutions.size() == 2);  // s = -1 and s = 1 (x2 / x1 = t + 1)
  const auto& sol = res.solutions.front();
  CHECK(sol.s == -1);
  CHECK(poly_case_classifier(phi, Pt("0"), res.solutions.back(), S("t, t + 1, inf")).label == "A.4");
  const auto a1 = poly_case_classifier(phi, Pt("0"), sol, S("t, t + 1, inf"));
  CHECK(a1.label == "A.1");
  CHECK(a1.alpha_integral);
  CHECK(a1.units_check == true);

  DependenceSolution manual{1, 0, 1, 2, FieldElement(), 0, true};
  const auto b = poly_case_classifier(phi, Pt("1/t"), manual, S("inf"));
  CHECK(b.label == "B");
  REQUIRE(b.witness.has_value());
  CHECK(*b.witness == Pl("t"));
  CHECK(b.valuation_check == true);
  CHECK(b.shape_check == true);
  // Valuation recursion oracle: v_t(phi^k(1/t)) = -2^k.
  const auto orbit = iterate(phi, Pt("1/t"), 3);
  for (int k = 0; k <= 3; ++k) CHECK(ord(orbit[static_cast<std::size_t>(k)].to_affine(), Pl("t")) == -(1 << k));

  manual.s = 1;
  CHECK(poly_case_classifier(phi, Pt("0"), manual, S("inf")).label == "A.4");
  manual.r = 2;
  CHECK(poly_case_classifier(phi, Pt("0"), manual, S("inf")).label == "A.3");
  manual.r = 1;
  manual.s = 3;
  CHECK(poly_case_classifier(phi, Pt("0"), manual, S("inf")).label == "A.2");
  CHECK_THROWS_AS(poly_case_classifier(Map("(z^2 - t)/z"), Pt("0"), manual, S("inf")), DomainError);
}

TEST_CASE("split multilinear zero scans") {
  const auto a = split_multilinear_zero_scan(parse_split_form("T1 - t"), Map("z^2 + t"), Pt("0"), 3);
  CHECK(a.tuples == std::vector<std::vector<int>>{{1}});
  CHECK(a.tuples_checked == 4);
  const auto b = split_multilinear_zero_scan(parse_split_form("T1 - T2"), Map("z^2 + t"), Pt("0"), 10);
  CHECK(b.tuples.empty());
  CHECK(b.tuples_checked == 55);
  const auto c = split_multilinear_zero_scan(parse_split_form("T1*T2 - 1"), Map("t*z^2"), Pt("1"), 5);
  CHECK(c.tuples.empty());
  // Brute force with field arithmetic.
  const auto form = parse_split_form("T1*T3 - T2 + t");
  const auto d = split_multilinear_zero_scan(form, Map("z^2 + t"), Pt("0"), 5);
  const auto orbit = iterate(Map("z^2 + t"), Pt("0"), 5);
  std::vector<std::vector<int>> expected;
  for (int i = 0; i <= 5; ++i) {
    for (int j = 0; j < i; ++j) {
      for (int l = 0; l < j; ++l) {
        const std::vector<FieldElement> v{orbit[i].to_affine(), orbit[j].to_affine(), orbit[l].to_affine()};
        if (form.evaluate(v).is_zero()) expected.push_back({i, j, l});
      }
    }
  }
  CHECK(d.tuples == expected);
  CHECK(d.tuples_checked == 20);
  CHECK(d.tuples.size() == 4);  // (i, 1, 0) for i = 2..5
  const auto e = split_multilinear_zero_scan(parse_split_form("1/t*T1 - 1/t*T2 - 1"), Map("z^2 + t"),
                                             Pt("0"), 3);
  CHECK(e.tuples == std::vector<std::vector<int>>{{1, 0}});
  CHECK_THROWS_AS(split_multilinear_zero_scan(parse_split_form("T1*T2*T3 - 1"), Map("z^2 + t"),
                                              Pt("0"), 400, kDefaultMaxHeight, 1000),
                  DomainError);
}

TEST_CASE("dependence search agrees with brute force on a seeded suite") {
  std::mt19937_64 rng(9);
  int solutions = 0;
  for (int it = 0; it < 25; ++it) {
    const RationalMap phi = random_map(rng, 2, 1);
    ProjectivePoint alpha = random_point(rng, 1);
    if (alpha.is_infinity()) alpha = Pt("t");
    const char* places = (it % 2) ? "t, inf" : "t, t + 1, t - 1, inf";
    const auto q = box("0", places, 2, 2, 2, 2);
    DependenceQuery qq = q;
    qq.alpha = alpha;
    const auto res = dependence_search(phi, qq);
    CHECK(keys(res) == brute_force(phi, qq));
    for (const auto& s : res.solutions) {
      CHECK(is_S_unit(evaluate_ratio_check(phi, alpha, s), qq.S));
      ++solutions;
    }
    if (phi.is_polynomial()) {
      for (const auto& s : res.solutions) {
        const auto label = poly_case_classifier(phi, alpha, s, qq.S).label;
        CHECK((label == "A.1" || label == "A.2" || label == "A.3" || label == "A.4" || label == "B"));
      }
    }
  }
  CHECK(solutions > 0);
}

TEST_CASE("unit hits stabilize away from the excluded forms") {
  // Maps with no special form and at least three preimages of {0, inf}.
  const std::vector<std::pair<const char*, const char*>> family{
      {"(z^2 + t)/(z - 1)", "t"}, {"(z^2 - t)/(z + t)", "1"}, {"z^2 + t*z + 1", "t"}};
  for (const auto& [m, a] : family) {
    const auto phi = Map(m);
    CAPTURE(m);
    CHECK(special_form_classify(phi).kind == SpecialForm::None);
    CHECK(preimage_count_zero_infty(phi) >= 3);
    const auto h = unit_hits(phi, Pt(a), S("t, inf"), 10);
    for (int n : h.hits) CHECK(n <= 5);
  }
  CHECK(special_form_classify(Map("t*z^2")).kind == SpecialForm::MonomialForm);
}
