#pragma once

// S-units in orbits, multiplicative dependence of orbit elements modulo
// S-units, the case split for polynomial maps, and zeros of split multilinear
// forms along orbits.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffdyn/heights.hpp"
#include "ffdyn/split_form.hpp"

namespace ffdyn {

struct UnitHits {
  std::vector<int> hits;     // 1 <= n <= N with phi^n(alpha) an S-unit
  int scanned_through = 0;   // last index computed exactly
  bool truncated = false;    // height budget stopped the scan before N
};
UnitHits unit_hits(const RationalMap& phi, const ProjectivePoint& alpha, const PlaceSet& S, int N,
                   int max_height = kDefaultMaxHeight);

struct DependenceQuery {
  ProjectivePoint alpha = ProjectivePoint::infinity();
  PlaceSet S;
  int n_max = 1;  // 1 <= n <= n_max
  int k_max = 0;  // 0 <= k <= k_max
  int r_max = 1;  // 1 <= r <= r_max
  int s_max = 1;  // 1 <= |s| <= s_max
  int max_height = kDefaultMaxHeight;
};

struct DependenceSolution {
  int n = 0;
  int k = 0;
  int r = 0;
  int s = 0;
  FieldElement u;       // phi^(n+k)(alpha)^r / phi^k(alpha)^s
  double rho = 0;       // log(|s|/r)/log d + 1
  bool n_at_least_rho;  // r d^(n-1) >= |s|, decided exactly
};

struct DependenceResult {
  std::vector<DependenceSolution> solutions;  // sorted by (n, k, r, s)
  std::vector<std::string> notes;
  std::optional<bool> alpha_wandering;        // nullopt when undecided
  std::optional<bool> zero_periodic;
};

// Every (n, k, r, s) in the box with gcd(r, s) = 1 and u an S-unit.
DependenceResult dependence_search(const RationalMap& phi, const DependenceQuery& q);

// Divides by the gcd and makes r positive. std::invalid_argument when rs = 0.
std::pair<int, int> saturate_exponents(int r, int s);

struct CaseLabel {
  std::string label;                     // "A.1" .. "A.4" or "B"
  PlaceSet s_phi;                        // S enlarged by the bad places of phi
  bool alpha_integral = false;           // alpha in R_{S_phi}
  std::optional<Place> witness;          // case B: v outside S_phi with v(alpha) < 0
  std::optional<bool> valuation_check;   // case B: v(phi^j alpha) = d^j v(alpha)
  std::optional<bool> shape_check;       // case B: r = 1 and s = d^n
  std::optional<bool> units_check;       // case A.1: both iterates are S_phi-units
};
// DomainError for a map that is not a polynomial in z.
CaseLabel poly_case_classifier(const RationalMap& phi, const ProjectivePoint& alpha,
                               const DependenceSolution& solution, const PlaceSet& S);

// Places where a polynomial map has a coefficient with a pole or a leading
// coefficient with a zero, together with the places dividing the resultant.
PlaceSet polynomial_bad_places(const RationalMap& phi);

struct ZeroScan {
  std::vector<std::vector<int>> tuples;  // n_1 > ... > n_k, lexicographic
  long tuples_checked = 0;
  long tuples_skipped = 0;               // containing an iterate at infinity
  int scanned_through = 0;
  bool truncated = false;
};
// Tuples n_1 > ... > n_k with 0 <= n_i <= N and Fm(phi^n_1(alpha), ...) = 0.
// DomainError when the box holds more than max_tuples tuples.
ZeroScan split_multilinear_zero_scan(const SplitMultilinearForm& form, const RationalMap& phi,
                                     const ProjectivePoint& alpha, int N,
                                     int max_height = kDefaultMaxHeight,
                                     long max_tuples = 2000000);

}  // namespace ffdyn
