#include "doctest.h"

#include <random>

#include "ffdyn/errors.hpp"
#include "helpers.hpp"

using namespace ffdyn;
using namespace test;

TEST_CASE("field element parsing") {
  const FieldElement x = parse_field_elem("(t^2+1)/t");
  CHECK(x.num() == Polynomial({1, 0, 1}));
  CHECK(x.den() == Polynomial({0, 1}));
  const FieldElement y = parse_field_elem("1/2*t - 3");
  CHECK(y == FieldElement(Polynomial({-6, 1}), Polynomial(2)));
  CHECK(parse_field_elem(" - t ^ 2 ") == FieldElement(Polynomial({0, 0, -1})));
  CHECK(parse_field_elem("2^3^2") == FieldElement(64));
  CHECK(parse_field_elem("8/2/2") == FieldElement(2));
  CHECK(parse_field_elem("1 - 2 - 3") == FieldElement(-4));
}

TEST_CASE("parse errors report positions") {
  try {
    parse_field_elem("t/(t");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  try {
    parse_field_elem("z + 1");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("map context required") != std::string::npos);
    CHECK(e.position() == 0);
  }
  CHECK_THROWS_AS(parse_field_elem("1/0"), ParseError);
  CHECK_THROWS_AS(parse_field_elem("t +"), ParseError);
  CHECK_THROWS_AS(parse_field_elem("2t"), ParseError);
  CHECK_THROWS_AS(parse_field_elem("t^-1"), ParseError);
  CHECK_THROWS_AS(parse_field_elem(""), ParseError);
}

TEST_CASE("map parsing") {
  const RationalMap a = parse_rational_map("z^2 + t");
  CHECK(a.degree() == 2);
  CHECK(a.G() == ZPolynomial(Polynomial(1)));
  CHECK(parse_rational_map("(z^2 - t)/z").degree() == 2);
  CHECK(parse_rational_map("(t*z^2 + t^2)/t") == a);
  CHECK(parse_rational_map("z^2 + 1/t") == parse_rational_map("(t*z^2 + 1)/t"));
  CHECK_THROWS_WITH_AS(parse_rational_map("(z+1)/(z+1)"), "constant map", std::invalid_argument);
  CHECK_THROWS_AS(parse_rational_map("t"), std::invalid_argument);
}

TEST_CASE("printing") {
  CHECK(to_string(parse_field_elem("0")) == "0");
  CHECK(to_string(Place::infinity()) == "inf");
  CHECK(to_string(parse_field_elem("(t^2+1)/t")) == "(t^2 + 1)/(t)");
  CHECK(to_string(parse_field_elem("1/2*t - 3")) == "1/2*t - 3");
  CHECK(to_string(parse_rational_map("z^2+t")) == "z^2 + t");
  CHECK(to_string(parse_rational_map("(z^2-t)/z")) == "(z^2 - t)/(z)");
  CHECK(to_string(parse_rational_map("-t^2*z^3 + 2*z - 1/3")) == "(3*t^2*z^3 - 6*z + 1)/(-3)");
  CHECK(to_string(ProjectivePoint::infinity()) == "inf");
  CHECK(to_string(parse_places("inf, t+1, t")) == "t, t + 1, inf");
}

TEST_CASE("places") {
  CHECK(parse_place("inf").is_infinite());
  CHECK(parse_place("t^2+1").degree() == 2);
  CHECK_THROWS_AS(parse_place("t^2-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_place("1/t"), std::invalid_argument);
  CHECK(parse_places("").empty());
  CHECK(parse_places("t, t, inf").size() == 2);
}

TEST_CASE("rationals") {
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a"), std::invalid_argument);
}

TEST_CASE("split forms") {
  const auto f = parse_split_form("T1 - t");
  CHECK(f.arity == 1);
  CHECK(f.constant == parse_field_elem("-t"));
  const auto g = parse_split_form("T1*T2 - 1");
  CHECK(g.arity == 2);
  REQUIRE(g.blocks.size() == 1);
  CHECK(g.blocks[0] == std::vector<int>{1, 2});
  const auto h = parse_split_form("T1 - T2");
  CHECK(h.blocks.size() == 2);
  CHECK(h.evaluate({FieldElement(3), FieldElement(3)}).is_zero());
  CHECK_THROWS_AS(parse_split_form("T1^2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_split_form("T1*T2 + T1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_split_form("T2 + 1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_split_form("T1/T2"), ParseError);
  CHECK(parse_split_form(to_string(g)).blocks == g.blocks);
}
