#pragma once

// Text form of field elements, maps, points, places and split forms.
//
//   expr    := term (("+" | "-") term)*
//   term    := unary (("*" | "/") unary)*
//   unary   := ("-" | "+") unary | power
//   power   := primary ("^" integer)*
//   primary := integer | "t" | "z" | "T" integer | "(" expr ")"
//
// Errors carry 0-based character positions (ParseError).

#include <string>
#include <string_view>

#include "ffdyn/function_field.hpp"
#include "ffdyn/map_algebra.hpp"
#include "ffdyn/split_form.hpp"

namespace ffdyn {

FieldElement parse_field_elem(std::string_view text);
RationalMap parse_rational_map(std::string_view text);
// "inf" or a field element.
ProjectivePoint parse_point(std::string_view text);
// "inf" or a monic irreducible polynomial in t.
Place parse_place(std::string_view text);
// Comma-separated places; empty text is the empty set.
PlaceSet parse_places(std::string_view text);
SplitMultilinearForm parse_split_form(std::string_view text);
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const Polynomial& p);
std::string to_string(const FieldElement& x);
std::string to_string(const ZPolynomial& p);
std::string to_string(const RationalMap& phi);
std::string to_string(const ProjectivePoint& P);
std::string to_string(const Place& v);
std::string to_string(const PlaceSet& S);
std::string to_string(const SplitMultilinearForm& form);

}  // namespace ffdyn
