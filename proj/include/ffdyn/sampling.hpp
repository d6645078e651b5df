#pragma once

// Seeded generators for the verification suites. Draws use raw engine output
// reduced modulo the range, so streams are identical across standard libraries.

#include <cstdint>
#include <random>
#include <vector>

#include "ffdyn/map_algebra.hpp"

namespace ffdyn::sampling {

using Engine = std::mt19937_64;

long uniform(Engine& rng, long lo, long hi);  // inclusive
Rational small_rational(Engine& rng, long range);
Polynomial polynomial(Engine& rng, int max_degree, long range);
FieldElement element(Engine& rng, int max_degree = 3, long range = 3);
FieldElement nonzero_element(Engine& rng, int max_degree = 3, long range = 3);
ProjectivePoint point(Engine& rng, int max_degree = 2, long range = 3);
// Degree exactly d, coefficients of t-degree <= max_t_degree.
RationalMap map(Engine& rng, int d, int max_t_degree = 2);

// Fixed pool of places of small degree, infinity included.
const std::vector<Place>& place_pool();
Place place(Engine& rng);
PlaceSet place_subset(Engine& rng);

}  // namespace ffdyn::sampling
