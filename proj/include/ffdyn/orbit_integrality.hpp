#pragma once

// Quasi-integral orbit elements, S-integral orbit counts, the shape of the
// effective index bounds, and empirical estimation of their constants.

#include <optional>
#include <string>
#include <vector>

#include "ffdyn/heights.hpp"
#include "ffdyn/local_geometry.hpp"

namespace ffdyn {

enum class Membership { In, Out, Undecided };
const char* to_string(Membership m);

struct OrbitRecord {
  int n = 0;
  ProjectivePoint point = ProjectivePoint::infinity();
  int height = 0;
  HeightInterval canonical;     // enclosure of hat-h(phi^n(P))
  LocalHeightValue lambda;      // sum_{v in S} lambda_v(phi^n(P), A)
  Membership membership = Membership::Out;
  bool s_integer = false;       // affine and S-integral
};

struct OrbitScanReport {
  std::vector<OrbitRecord> records;  // n = 0, 1, ... in order
  int in_count = 0;
  int out_count = 0;
  int undecided_count = 0;
  std::optional<int> max_hit;        // largest n decided "in"
  bool truncated = false;            // height budget stopped the scan before N
  Rational epsilon;
  int N = 0;
  int depth = 0;
};

struct GammaSetOptions {
  bool assume_wandering = false;     // skip the classification precondition
  int max_height = kDefaultMaxHeight;
};

// n in Gamma iff sum_{v in S} lambda_v(phi^n(P), A) >= epsilon * hat-h(phi^n(P)).
// DomainError for exceptional A or a preperiodic P.
OrbitScanReport gamma_set(const RationalMap& phi, const PlaceSet& S, const ProjectivePoint& A,
                          const ProjectivePoint& P, const Rational& epsilon, int N, int depth,
                          const GammaSetOptions& options = {});

struct IntegralCount {
  std::vector<int> hits;
  int count = 0;
  int exact_through = 0;               // iterates computed exactly
  std::optional<int> certified_from;   // every n beyond exact_through decided by a certificate
  std::string certificate;             // "pole-persistence", "integrality-persistence" or ""
  std::vector<int> undecided;          // indices neither computed nor certified
  std::vector<std::string> warnings;
};
// hits = {1 <= n <= N : phi^n(P) is affine and S-integral}.
IntegralCount count_S_integral(const RationalMap& phi, const ProjectivePoint& P, const PlaceSet& S,
                               int N, int max_height = kDefaultMaxHeight);

struct RationalInterval {
  Rational lo;
  Rational hi;
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

// Outer enclosure of log_d^+(r) for r in [lo, hi], lo >= 0: integer endpoints
// floor(log_d max(lo, 1)) and ceil(log_d max(hi, 1)).
RationalInterval log_d_plus(const Rational& lo, const Rational& hi, int d);

// gamma1 + log_d^+((hat-h(A) + h(phi)) / hat-h(P)) over the given enclosures.
RationalInterval th29_rhs(const Rational& gamma1, const HeightInterval& hA, int h_phi,
                          const HeightInterval& hP, int d);
// gamma + log_d^+(h(phi) / hat-h(P)).
RationalInterval cor210_rhs(const Rational& gamma, int h_phi, const HeightInterval& hP, int d);

// As above with hat-h enclosures computed at the given depth. Throws
// std::invalid_argument when the needed constant is missing from params and
// DomainError when the enclosure of hat-h(P) touches 0.
RationalInterval th29_bound_rhs(const BoundParams& params, const RationalMap& phi,
                                const ProjectivePoint& A, const ProjectivePoint& P, int depth);
RationalInterval cor210_bound_rhs(const BoundParams& params, const RationalMap& phi,
                                  const ProjectivePoint& P, int depth);

struct GammaInstance {
  RationalMap phi;
  ProjectivePoint A;
  ProjectivePoint P;
};

struct GammaEstimate {
  Rational gamma_hat;               // >= 0
  std::vector<int> witnesses;       // instance indices attaining gamma_hat
  std::vector<Rational> per_instance;
  std::vector<int> excluded;        // undecided or invalid instances
  std::vector<std::string> warnings;
};
// Max over the family of (largest n in Gamma) - log_d^+ term (lower endpoint),
// clamped at 0.
GammaEstimate estimate_gamma(const std::vector<GammaInstance>& family, const PlaceSet& S,
                             const Rational& epsilon, int N, int depth);

}  // namespace ffdyn
