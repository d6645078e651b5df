#include "doctest.h"

#include "ffdyn/errors.hpp"
#include "ffdyn/heights.hpp"
#include "ffdyn/local_geometry.hpp"
#include "helpers.hpp"
#include "random_objects.hpp"

using namespace ffdyn;
using namespace test;

namespace {

// For affine x, y: -log|x - y|_v + max(log|x|_v, 0) + max(log|y|_v, 0).
long affine_lambda(const FieldElement& x, const FieldElement& y, const Place& v) {
  const auto plus = [&](const FieldElement& a) {
    return a.is_zero() ? 0L : std::max(0L, static_cast<long>(log_abs(a, v)));
  };
  return -static_cast<long>(log_abs(x - y, v)) + plus(x) + plus(y);
}

FieldElement random_element(std::mt19937_64& rng) {
  Polynomial den = random_poly(rng, 2, 3);
  if (den.is_zero()) den = Polynomial(1);
  return FieldElement(random_poly(rng, 3, 3), den);
}

}  // namespace

TEST_CASE("lambda_v examples") {
  const auto P = Pt("t"), Q = Pt("0");
  CHECK(lambda_v(P, Q, Pl("t")) == LocalHeightValue(1));
  CHECK(lambda_v(P, Q, Pl("t + 1")) == LocalHeightValue(0));
  CHECK(lambda_v(P, Q, Pl("inf")) == LocalHeightValue(0));
  CHECK(lambda_v(P, P, Pl("t")).is_infinite());
  CHECK(lambda_v(Pt("inf"), Pt("inf"), Pl("inf")).is_infinite());
  CHECK(lambda_v(Pt("1/t"), Pt("inf"), Pl("t")) == LocalHeightValue(1));
  CHECK(lambda_v(Pt("t^2"), Pt("inf"), Pl("inf")) == LocalHeightValue(2));
  CHECK(lambda_v(Pt("t^2 + 1"), Pt("t^2"), Pl("inf")) == LocalHeightValue(4));
  CHECK(lambda_v(Pt("t^2 + 1"), Pt("t^2"), Pl("t^2 + 1")) == LocalHeightValue(0));
  CHECK(lambda_v(Pt("0"), Pt("t^2 + 1"), Pl("t^2 + 1")) == LocalHeightValue(2));
}

TEST_CASE("lambda sums") {
  const auto P = Pt("t"), Q = Pt("0");
  CHECK(lambda_sum(P, Q, S("t, inf")) == LocalHeightValue(1));
  CHECK(lambda_sum(P, Q, S("")) == LocalHeightValue(0));
  CHECK(lambda_sum(P, P, S("")).is_infinite());
  CHECK(lambda_sum(P, P, S("t")).is_infinite());
  CHECK(LocalHeightValue(3) < LocalHeightValue::infinite());
  CHECK((LocalHeightValue(3) + LocalHeightValue::infinite()).is_infinite());
  CHECK_THROWS_AS(LocalHeightValue::infinite().value(), std::logic_error);
}

TEST_CASE("lemma22 examples") {
  const auto a = lemma22_check(K("2*t"), K("t"), Pl("t"));
  CHECK(a.applicable);
  CHECK(a.lower == 0);
  CHECK(a.middle == 0);
  CHECK(a.upper == 0);
  CHECK(a.holds);
  // x = t, y = 1/t at infinity: cross t^2 - 1 gives lambda(x, y) = -2 + 1 + 1 = 0
  // and lambda(y, inf) = 0, so the hypothesis fails.
  const auto b = lemma22_check(K("t"), K("1/t"), Pl("inf"));
  CHECK(affine_lambda(K("t"), K("1/t"), Pl("inf")) == 0);
  CHECK_FALSE(b.applicable);
  CHECK(b.lower == 0);
  CHECK(b.middle == 0 + 1);
  CHECK(b.holds);
  const auto b2 = lemma22_check(K("t + 1/t"), K("1/t"), Pl("t"));
  CHECK(b2.applicable == (affine_lambda(K("t + 1/t"), K("1/t"), Pl("t")) > 1));
  const auto c = lemma22_check(K("t"), K("t + 1"), Pl("t"));
  CHECK_FALSE(c.applicable);
  CHECK(c.holds);
  CHECK_THROWS_AS(lemma22_check(K("t"), K("t"), Pl("t")), std::invalid_argument);
}

TEST_CASE("lemma26 examples") {
  const auto a = lemma26_defect(Map("z^2 + t"), 1, Pt("t"), Pt("1"), S("inf"));
  // Fiber {0} with e = 2; lambda_inf(1, 0) = 0; psi(1) = t + 1 against t: cross 1.
  CHECK(a.fiber_multiplicity == 2);
  CHECK(a.lhs == 2 * affine_lambda(K("1"), K("0"), Pl("inf")));
  CHECK(a.lhs == 0);
  CHECK(a.rhs_main == affine_lambda(K("t + 1"), K("t"), Pl("inf")));
  CHECK(a.rhs_main == 2);
  CHECK(a.defect == -2);
  CHECK(a.normalizer == 1 + 1 + 1);
  const auto b = lemma26_defect(Map("z^2 + t"), 1, Pt("t"), Pt("1"), S(""));
  CHECK(b.lhs == 0);
  CHECK(b.rhs_main == 0);
  CHECK(b.defect == 0);
  CHECK_THROWS_WITH_AS(lemma26_defect(Map("z^2 + t"), 1, Pt("0"), Pt("1"), S("inf")),
                       doctest::Contains("requires extension"), DomainError);
  CHECK_THROWS_AS(lemma26_defect(Map("z^2 + t"), 1, Pt("t"), Pt("0"), S("inf")), DomainError);
  const auto c = lemma26_defect(Map("z^2"), 2, Pt("0"), Pt("t"), S("t, inf"));
  CHECK(c.lhs == 4);
  CHECK(c.rhs_main == 4);
  CHECK(c.fiber_multiplicity == 4);
  CHECK(c.psi_degree == 4);
}

TEST_CASE("local height properties") {
  std::mt19937_64 rng(5);
  const PlaceSet places = S("t, t + 1, t^2 + 1, t - 2, inf");
  for (int it = 0; it < 400; ++it) {
    const ProjectivePoint P = random_point(rng), Q = random_point(rng);
    for (const auto& v : places) {
      const auto a = lambda_v(P, Q, v);
      CHECK(a == lambda_v(Q, P, v));
      CHECK(a.is_infinite() == (P == Q));
      if (!a.is_infinite()) CHECK(a.value() >= 0);
      if (!P.is_infinity() && !Q.is_infinity() && P != Q) {
        CHECK(a.value() == affine_lambda(P.to_affine(), Q.to_affine(), v));
      }
    }
    if (!P.is_infinity()) {
      // Sum over every place of lambda_v(P, inf) is the height.
      PlaceSet all = places_dividing(P.x1()) | PlaceSet{Place::infinity()};
      CHECK(lambda_sum(P, ProjectivePoint::infinity(), all).value() == P.height());
    }
  }
  for (int it = 0; it < 1000; ++it) {
    const FieldElement x = random_element(rng), y = random_element(rng);
    if (x == y) continue;
    for (const auto& v : places) CHECK(lemma22_check(x, y, v).holds);
  }
}
