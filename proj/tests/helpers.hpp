#pragma once

#include <string>

#include "ffdyn/expr_io.hpp"

namespace test {

inline ffdyn::FieldElement K(const std::string& s) { return ffdyn::parse_field_elem(s); }
inline ffdyn::Polynomial Poly(const std::string& s) { return ffdyn::parse_field_elem(s).num(); }
inline ffdyn::RationalMap Map(const std::string& s) { return ffdyn::parse_rational_map(s); }
inline ffdyn::ProjectivePoint Pt(const std::string& s) { return ffdyn::parse_point(s); }
inline ffdyn::Place Pl(const std::string& s) { return ffdyn::parse_place(s); }
inline ffdyn::PlaceSet S(const std::string& s) { return ffdyn::parse_places(s); }

}  // namespace test
