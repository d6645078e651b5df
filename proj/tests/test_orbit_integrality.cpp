#include "doctest.h"

#include "ffdyn/errors.hpp"
#include "ffdyn/orbit_integrality.hpp"
#include "helpers.hpp"
#include "random_objects.hpp"

using namespace ffdyn;
using namespace test;

namespace {

// Iterates phi specialized at t = t0 on Q u {inf}; nullopt stands for inf.
std::vector<std::optional<Rational>> specialized_orbit(const RationalMap& phi, const Rational& t0,
                                                       const ProjectivePoint& P, int n) {
  const Polynomial f = phi.F().specialize(t0), g = phi.G().specialize(t0);
  std::vector<std::optional<Rational>> out;
  std::optional<Rational> x;
  if (!P.is_infinity()) x = P.x0().evaluate(t0) / P.x1().evaluate(t0);
  out.push_back(x);
  const int d = phi.degree();
  for (int i = 0; i < n; ++i) {
    if (!x) {
      // Homogeneous evaluation at [1:0]: [F_d : G_d].
      if (g.coefficient(static_cast<std::size_t>(d)) != 0) {
        x = f.coefficient(static_cast<std::size_t>(d)) / g.coefficient(static_cast<std::size_t>(d));
      }
    } else {
      const Rational den = g.evaluate(*x);
      if (den == 0) {
        x.reset();
      } else {
        x = f.evaluate(*x) / den;
      }
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace

TEST_CASE("gamma set examples") {
  const auto phi = Map("(z^2 - t)/z");
  const auto r = gamma_set(phi, S("inf"), Pt("inf"), Pt("t"), Rational(1, 2), 2, 6);
  REQUIRE(r.records.size() == 3);
  const auto& rec = r.records[1];
  CHECK(rec.point == Pt("t - 1"));
  CHECK(rec.lambda == LocalHeightValue(1));
  Membership expected = Membership::Undecided;
  if (Rational(1) >= rec.canonical.hi / 2) expected = Membership::In;
  if (Rational(1) < rec.canonical.lo / 2) expected = Membership::Out;
  CHECK(rec.membership == expected);
  CHECK(rec.s_integer);
  CHECK_FALSE(r.records[2].s_integer);
  CHECK(r.in_count + r.out_count + r.undecided_count == 3);

  // S empty: lambda = 0, so nothing is in once the enclosures leave 0.
  const auto e = gamma_set(Map("z^2 + t"), S(""), Pt("0"), Pt("0"), Rational(1, 3), 6, 10);
  for (const auto& x : e.records) {
    if (x.n >= 1) CHECK(x.membership == Membership::Out);
  }
  const bool late_hit = e.max_hit.has_value() && *e.max_hit >= 1;
  CHECK_FALSE(late_hit);

  // phi(P) = A: infinite lambda.
  const auto f = gamma_set(Map("z^2 + t"), S("inf"), Pt("t"), Pt("0"), Rational(1), 3, 6);
  CHECK(f.records[1].lambda.is_infinite());
  CHECK(f.records[1].membership == Membership::In);

  CHECK_THROWS_WITH_AS(gamma_set(Map("z^2 + t"), S("inf"), Pt("inf"), Pt("0"), Rational(1, 2), 3, 6),
                       "exceptional target", DomainError);
  CHECK_THROWS_AS(gamma_set(phi, S("inf"), Pt("inf"), Pt("0"), Rational(1, 2), 3, 6), DomainError);
  CHECK_THROWS_AS(gamma_set(phi, S("inf"), Pt("inf"), Pt("t"), Rational(0), 3, 6),
                  std::invalid_argument);
  CHECK_THROWS_AS(gamma_set(phi, S("inf"), Pt("inf"), Pt("t"), Rational(3, 2), 3, 6),
                  std::invalid_argument);
}

TEST_CASE("S-integral counts") {
  const auto phi = Map("(z^2 - t)/z");
  const auto a = count_S_integral(phi, Pt("t"), S("inf"), 2);
  CHECK(a.hits == std::vector<int>{1});
  CHECK(a.count == 1);
  CHECK(a.warnings.empty());

  const auto b = count_S_integral(Map("z^2 + t"), Pt("0"), S("inf"), 10);
  CHECK(b.count == 10);
  CHECK(b.undecided.empty());
  REQUIRE_FALSE(b.warnings.empty());
  CHECK(b.warnings.back().find("polynomial") != std::string::npos);

  // Every support place of the scanned orbit in S.
  PlaceSet all{Place::infinity()};
  for (const auto& x : iterate(phi, Pt("t"), 3)) all = all | places_dividing(x.x1());
  CHECK(count_S_integral(phi, Pt("t"), all, 3).hits == std::vector<int>{1, 2, 3});

  const auto c = count_S_integral(Map("z^2 + t"), Pt("0"), S("inf"), 30);
  CHECK(c.count == 30);
  CHECK(c.certificate == "integrality-persistence");

  const auto pre = count_S_integral(phi, Pt("0"), S("inf"), 4);
  CHECK(std::find(pre.warnings.begin(), pre.warnings.end(), "point is preperiodic") !=
        pre.warnings.end());
}

TEST_CASE("S-integral count at N = 30 against a reduction oracle") {
  const auto phi = Map("(z^2 - t)/z");
  const auto r = count_S_integral(phi, Pt("t"), S("inf"), 30);
  CHECK(r.undecided.empty());
  CHECK(r.certificate == "pole-persistence");
  for (int n : r.hits) CHECK(n <= 15);
  CHECK(r.hits == std::vector<int>{1});
  // Reduction at t = 1 (good reduction: Res = -t): x_n = inf there means a
  // pole at (t - 1), so x_n is not {inf}-integral.
  CHECK(phi.resultant().evaluate(1) != 0);
  const auto red = specialized_orbit(phi, 1, Pt("t"), 30);
  for (int n = 2; n <= 30; ++n) CHECK_FALSE(red[static_cast<std::size_t>(n)].has_value());
}

TEST_CASE("bound expressions") {
  HeightInterval zero, half, two;
  half.lo = half.hi = Rational(1, 2);
  two.lo = two.hi = 2;
  CHECK(th29_rhs(3, zero, 1, half, 2).lo == 4);
  CHECK(th29_rhs(3, zero, 1, half, 2).hi == 4);
  CHECK(th29_rhs(3, zero, 1, two, 2).hi == 3);
  CHECK(cor210_rhs(2, 1, half, 2).lo == 3);
  CHECK(cor210_rhs(2, 1, half, 2).hi == 3);
  CHECK(cor210_rhs(2, 0, half, 2).hi == 2);
  CHECK_THROWS_WITH_AS(cor210_rhs(2, 1, zero, 2), "increase depth or point is preperiodic",
                       DomainError);

  const auto l = log_d_plus(Rational(5), Rational(9), 2);
  CHECK(l.lo == 2);
  CHECK(l.hi == 4);
  CHECK(log_d_plus(Rational(1, 3), Rational(1), 3).hi == 0);

  BoundParams p;
  p.gamma1 = 0;
  const auto phi = Map("(z^2 - t)/z");
  const auto I = th29_bound_rhs(p, phi, Pt("0"), Pt("t"), 8);
  const auto hA = canonical_height(phi, Pt("0"), 8), hP = canonical_height(phi, Pt("t"), 8);
  const auto ratio = log_d_plus((hA.lo + 1) / hP.hi, (hA.hi + 1) / hP.lo, 2);
  CHECK(I.lo == ratio.lo);
  CHECK(I.hi == ratio.hi);
  CHECK(I.lo <= I.hi);
  CHECK_THROWS_AS(th29_bound_rhs(BoundParams{}, phi, Pt("0"), Pt("t"), 8), std::invalid_argument);
  CHECK_THROWS_AS(th29_bound_rhs(p, phi, Pt("0"), Pt("0"), 8), DomainError);
  p.gamma = 2;
  CHECK(cor210_bound_rhs(p, phi, Pt("t"), 8).lo >= 2);
}

TEST_CASE("gamma estimates") {
  const PlaceSet S0 = S("inf");
  // Empty Gamma up to N: only the terminal iterates far from A.
  const std::vector<GammaInstance> one{{Map("z^2 + t"), Pt("0"), Pt("t")}};
  const auto a = estimate_gamma(one, S(""), Rational(1, 2), 6, 10);
  CHECK(a.gamma_hat == 0);
  CHECK(a.excluded.empty());

  std::vector<GammaInstance> fam;
  const auto phi = Map("(z^2 - t)/z");
  for (const char* p : {"t", "t + 1", "2*t", "t^2"}) fam.push_back({phi, Pt("0"), Pt(p)});
  fam.push_back({phi, Pt("0"), Pt("0")});  // preperiodic: excluded
  const auto b = estimate_gamma(fam, S0, Rational(1, 2), 6, 8);
  CHECK(b.gamma_hat >= 0);
  CHECK(std::find(b.excluded.begin(), b.excluded.end(), 4) != b.excluded.end());
  if (b.gamma_hat > 0) CHECK_FALSE(b.witnesses.empty());
  const auto c = estimate_gamma(fam, S0, Rational(1, 2), 9, 8);
  CHECK(c.gamma_hat >= b.gamma_hat);
}

TEST_CASE("gamma set properties") {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int it = 0; it < 30; ++it) {
    const RationalMap phi = random_map(rng, 2, 1);
    const ProjectivePoint P = random_point(rng, 1);
    const ProjectivePoint A = random_point(rng, 1);
    const PlaceSet places = S("t, inf");
    OrbitScanReport lo, hi;
    try {
      lo = gamma_set(phi, places, A, P, Rational(1, 4), 5, 4);
      hi = gamma_set(phi, places, A, P, Rational(3, 4), 5, 4);
    } catch (const DomainError&) {
      continue;
    }
    ++checked;
    REQUIRE(lo.records.size() == hi.records.size());
    for (std::size_t i = 0; i < lo.records.size(); ++i) {
      CHECK(lo.records[i].n == static_cast<int>(i));
      // Decided membership at the larger epsilon implies membership at the smaller.
      if (hi.records[i].membership == Membership::In) {
        CHECK(lo.records[i].membership == Membership::In);
      }
      if (lo.records[i].membership == Membership::Out) {
        CHECK(hi.records[i].membership == Membership::Out);
      }
    }
    // S-integral hits lie in Gamma(infinity) for a small enough epsilon.
    const IntegralCount ic = count_S_integral(phi, P, places, 5);
    Rational eps = 1;
    for (int n : ic.hits) {
      if (n >= static_cast<int>(lo.records.size())) continue;
      const auto& rec = lo.records[static_cast<std::size_t>(n)];
      const long lam = lambda_sum(rec.point, ProjectivePoint::infinity(), places).value();
      CHECK(lam == rec.point.height());
      if (rec.canonical.hi > 0 && Rational(lam) / rec.canonical.hi < eps) {
        eps = Rational(lam) / rec.canonical.hi;
      }
    }
    if (eps > 0 && !is_exceptional(phi, ProjectivePoint::infinity())) {
      const auto g = gamma_set(phi, places, ProjectivePoint::infinity(), P, eps, 5, 4);
      for (int n : ic.hits) {
        if (n < static_cast<int>(g.records.size())) {
          CHECK(g.records[static_cast<std::size_t>(n)].membership == Membership::In);
        }
      }
    }
  }
  CHECK(checked >= 10);
}

TEST_CASE("local heights along orbits shrink relative to d^n") {
  const auto phi = Map("(z^2 - t)/z");
  const auto orbit = iterate(phi, Pt("t"), 10);
  Rational envelope = -1;
  for (int n = 10; n >= 1; --n) {
    const Rational r(lambda_v(orbit[static_cast<std::size_t>(n)], Pt("0"), Pl("inf")).value(),
                     1L << n);
    if (r > envelope) envelope = r;
    if (n == 6) CHECK(envelope <= Rational(1, 8));
  }
}

TEST_CASE("no late S-integral hits for non-polynomial maps") {
  const std::vector<std::pair<const char*, const char*>> family{
      {"(z^2 - t)/z", "t"}, {"(z^2 - t)/z", "t + 1"}, {"(z^3 + t)/(z^2 - 1)", "t"},
      {"(z^2 + t)/(z + 1)", "t^2"}, {"(t*z^2 + 1)/z", "1"}};
  for (const auto& [m, p] : family) {
    const auto r = count_S_integral(Map(m), Pt(p), S("inf"), 30);
    CAPTURE(m);
    CAPTURE(p);
    CHECK(r.undecided.empty());
    for (int n : r.hits) CHECK(n <= 15);
  }
}
