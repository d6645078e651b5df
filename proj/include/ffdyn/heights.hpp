#pragma once

// Heights of maps, the iterate-height inequality, certified canonical-height
// enclosures, preperiodicity classification and lattice scans.

#include <optional>
#include <string>
#include <variant>

#include "ffdyn/map_algebra.hpp"

namespace ffdyn {

// Default exact-arithmetic budget for orbit heights (max t-degree of an
// iterate's coordinates).
inline constexpr int kDefaultMaxHeight = 2048;

struct HeightInterval {
  Rational lo;
  Rational hi;
  int depth = 0;  // iterates actually used

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  Rational center() const { return (lo + hi) / 2; }
  Rational width() const { return hi - lo; }
};

struct BoundParams {
  std::optional<Rational> gamma, gamma1, gamma2, gamma3, gamma4;
  std::optional<Rational> kappa1, kappa2;
  std::optional<Rational> c1, c2, c3, c4;

  // Lines "name = p/q"; '#' starts a comment. Throws std::invalid_argument on
  // unknown names, malformed values or out-of-range constants.
  static BoundParams parse(const std::string& text);
  static BoundParams load(const std::string& path);
};

// Maximum t-degree over all coefficients of the normalized model.
int map_height(const RationalMap& phi);

struct IterateHeightCheck {
  int n = 0;
  int lhs = 0;                // h(phi^n)
  Rational sharp_rhs;         // (d^n - 1)/(d - 1) * h(phi)
  Rational stated_rhs;        // sharp_rhs + d^2 (d^(n-1) - 1)/(d - 1) * 21/10
  bool holds = false;         // lhs <= sharp_rhs
};
// DomainError when d^n exceeds max_degree.
IterateHeightCheck iterate_height_check(const RationalMap& phi, int n, int max_degree = 1024);

// B(phi) = h(phi) + deg_t Res + 2 d h(phi): |h(phi(P)) - d h(P)| <= B(phi).
Rational displacement_bound(const RationalMap& phi);

// Enclosure of hat-h(P) from h(phi^N(P)) / d^N with radius B / (d^N (d - 1)).
// Uses fewer iterates (reported in `depth`) if the height budget runs out.
HeightInterval canonical_height(const RationalMap& phi, const ProjectivePoint& P, int N,
                                int max_height = kDefaultMaxHeight);
// Enclosure of hat-h(orbit[n]) from orbit[min(n + depth, last)].
HeightInterval canonical_height_in_orbit(const RationalMap& phi, const OrbitPrefix& orbit, int n,
                                         int depth);

struct Preperiodic {
  int tail = 0;
  int cycle = 0;
};
struct Wandering {
  Rational lower_bound;  // certified, > 0
  int depth = 0;         // iterate giving the bound
  int certified_at = 0;  // first iterate whose enclosure excluded 0
};
using Classification = std::variant<Preperiodic, Wandering>;

struct ClassifyOptions {
  int max_iterates = 10000;
  int report_depth = 6;
  int max_height = kDefaultMaxHeight;
  long max_coefficient_bits = 200000;
};
// DomainError when a cap is reached without a decision.
Classification classify_preperiodic(const RationalMap& phi, const ProjectivePoint& P,
                                    const ClassifyOptions& options = {});

struct LatticeScan {
  Rational min_positive_upper;
  ProjectivePoint witness;
  int points = 0;
  int wandering = 0;
  int undecided = 0;
};
// Points [x0:x1] whose coordinates have t-degree <= deg_bound and coefficients
// p/q with |p|, q <= coeff_height_bound. Throws DomainError when the lattice is
// empty or holds no certified wandering point.
LatticeScan hmin_lattice_scan(const RationalMap& phi, int deg_bound, int coeff_height_bound, int N,
                              long max_points = 200000);

}  // namespace ffdyn
