#pragma once

// Seeded generators shared by the property tests.

#include <random>

#include "ffdyn/map_algebra.hpp"

namespace test {

inline ffdyn::Polynomial random_poly(std::mt19937_64& rng, int max_degree, long range) {
  std::vector<ffdyn::Rational> c;
  const int deg = static_cast<int>(rng() % static_cast<unsigned>(max_degree + 1));
  for (int i = 0; i <= deg; ++i) {
    c.emplace_back(static_cast<long>(rng() % static_cast<unsigned>(2 * range + 1)) - range);
  }
  return ffdyn::Polynomial(c);
}

inline ffdyn::RationalMap random_map(std::mt19937_64& rng, int d, int max_t_degree = 2) {
  for (;;) {
    std::vector<ffdyn::Polynomial> f, g;
    for (int i = 0; i <= d; ++i) {
      f.push_back(random_poly(rng, max_t_degree, 2));
      g.push_back(random_poly(rng, max_t_degree, 2));
    }
    if (rng() % 3 == 0) g.assign(1, ffdyn::Polynomial(static_cast<long>(rng() % 3) + 1));
    const ffdyn::ZPolynomial F(f), G(g);
    if (F.is_zero() || G.is_zero()) continue;
    ffdyn::RationalMap phi = ffdyn::normalize_map(F, G);
    if (phi.degree() == d) return phi;
  }
}

inline ffdyn::ProjectivePoint random_point(std::mt19937_64& rng, int max_degree = 2) {
  if (rng() % 10 == 0) return ffdyn::ProjectivePoint::infinity();
  ffdyn::Polynomial x1 = random_poly(rng, max_degree, 3);
  if (x1.is_zero()) x1 = ffdyn::Polynomial(1);
  return ffdyn::ProjectivePoint(random_poly(rng, max_degree, 3), x1);
}

}  // namespace test
