#pragma once

#include <vector>

#include "ffdyn/polynomial.hpp"

namespace ffdyn {

struct FactorPower {
  Polynomial factor;  // monic, irreducible over Q
  int multiplicity = 0;
};

struct Factorization {
  Rational unit;
  std::vector<FactorPower> factors;  // sorted by (degree, coefficients)
};

// Squarefree decomposition of a nonzero polynomial: monic, pairwise coprime,
// squarefree parts s_i with p = lc(p) * prod s_i^i. Entries with s_i = 1 are
// omitted; multiplicities are increasing.
std::vector<FactorPower> squarefree_decomposition(const Polynomial& p);

// Complete factorization over the rationals (Zassenhaus: modular factoring,
// Hensel lifting, recombination). Throws std::invalid_argument on zero.
Factorization factor_poly(const Polynomial& p);

bool is_irreducible(const Polynomial& p);

}  // namespace ffdyn
