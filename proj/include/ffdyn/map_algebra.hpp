#pragma once

// Points of P^1(K) and rational self-maps of P^1 over K: normalization,
// evaluation, iteration, composition, fibers, ramification and a few
// structural tests.

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ffdyn/function_field.hpp"
#include "ffdyn/zpolynomial.hpp"

namespace ffdyn {

class ProjectivePoint {
 public:
  // Normalizes to coprime coordinates with x1 monic (or x0 = 1 at infinity).
  // Throws std::invalid_argument for [0:0].
  ProjectivePoint(const Polynomial& x0, const Polynomial& x1);
  // Coordinates already known to be coprime; only the scaling is fixed.
  static ProjectivePoint from_coprime(Polynomial x0, Polynomial x1);
  static ProjectivePoint affine(const FieldElement& x);
  static ProjectivePoint infinity() { return from_coprime(Polynomial(1), Polynomial()); }

  const Polynomial& x0() const { return x0_; }
  const Polynomial& x1() const { return x1_; }
  bool is_infinity() const { return x1_.is_zero(); }
  // x0/x1; throws std::domain_error at infinity.
  FieldElement to_affine() const;
  int height() const { return std::max(x0_.degree(), x1_.degree()); }

  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
  friend std::strong_ordering operator<=>(const ProjectivePoint& a, const ProjectivePoint& b);

 private:
  ProjectivePoint() = default;
  Polynomial x0_;
  Polynomial x1_;
};

class RationalMap {
 public:
  const ZPolynomial& F() const { return F_; }
  const ZPolynomial& G() const { return G_; }
  int degree() const { return d_; }
  // Denominator constant in z.
  bool is_polynomial() const { return G_.degree() == 0; }

  // Homogeneous resultant Res_{d,d}(F, G), computed once and shared by copies.
  const Polynomial& resultant() const;

  static RationalMap identity();

  friend bool operator==(const RationalMap& a, const RationalMap& b) {
    return a.F_ == b.F_ && a.G_ == b.G_;
  }

 private:
  friend RationalMap normalize_map(const ZPolynomial&, const ZPolynomial&);
  friend RationalMap normalize_coprime(ZPolynomial, ZPolynomial);
  RationalMap(ZPolynomial F, ZPolynomial G);

  struct Cache;
  ZPolynomial F_;
  ZPolynomial G_;
  int d_ = 0;
  std::shared_ptr<Cache> cache_;
};

// Clears common factors over K, the joint k[t]-content and the joint rational
// scale; makes the leading coefficient of F (or of G when F = 0) positive.
// Throws std::invalid_argument when both inputs are zero.
RationalMap normalize_map(const ZPolynomial& F, const ZPolynomial& G);
// As normalize_map for inputs already coprime over K (skips the gcd).
RationalMap normalize_coprime(ZPolynomial F, ZPolynomial G);

ProjectivePoint apply(const RationalMap& phi, const ProjectivePoint& P);
// P, phi(P), ..., phi^n(P).
std::vector<ProjectivePoint> iterate(const RationalMap& phi, const ProjectivePoint& P, int n);

struct OrbitPrefix {
  std::vector<ProjectivePoint> points;  // points[j] = phi^j(P)
  bool truncated = false;               // stopped before n by the height budget
};
// Iterates like `iterate` but stops once the next iterate could exceed
// max_height (estimated by d*h + h(phi)).
OrbitPrefix orbit_prefix(const RationalMap& phi, const ProjectivePoint& P, int n, int max_height);

// phi o psi.
RationalMap compose(const RationalMap& phi, const RationalMap& psi);
RationalMap power(const RationalMap& phi, int n);

PlaceSet bad_reduction_places(const RationalMap& phi);

// Integrality predicates read off the coprime coordinates without reducing a
// quotient; infinity is neither S-integral nor an S-unit.
bool is_S_integral(const ProjectivePoint& P, const PlaceSet& S);
bool is_S_unit(const ProjectivePoint& P, const PlaceSet& S);

// a1*F - a0*G for A = [a0:a1].
ZPolynomial fiber_polynomial(const RationalMap& phi, const ProjectivePoint& A);

struct FiberDecomposition {
  std::vector<ZFactorPower> factors;  // irreducible over K, primitive representatives
  int infinity_multiplicity = 0;

  int total_multiplicity() const;
  int max_multiplicity() const;
  bool is_split() const;  // every finite factor linear in z
  // The K-rational points of a split fiber with their multiplicities.
  std::vector<std::pair<ProjectivePoint, int>> points() const;
};

FiberDecomposition fiber(const RationalMap& phi, const ProjectivePoint& A);

int ramification_index(const RationalMap& phi, const ProjectivePoint& P);
int max_fiber_ram(const RationalMap& phi, int m, const ProjectivePoint& A);
bool is_exceptional(const RationalMap& phi, const ProjectivePoint& A);
// Smallest m <= cap with 5 * max_fiber_ram(phi, m, A) <= epsilon * d^m.
// DomainError for an exceptional target or when the cap is exceeded.
int choose_m(const RationalMap& phi, const ProjectivePoint& A, const Rational& epsilon,
             int cap = 12);

int preimage_count_zero_infty(const RationalMap& phi);

enum class SpecialForm { None, PowerForm, QuotientForm, MonomialForm };
struct SpecialFormResult {
  SpecialForm kind = SpecialForm::None;
  int sign = 0;                        // +1 or -1 for PowerForm/MonomialForm
  std::optional<FieldElement> g, h;    // centres of the linear forms
};
SpecialFormResult special_form_classify(const RationalMap& phi);

bool is_polynomial_iterate(const RationalMap& phi, int j);

enum class Isotriviality { ConstantCoefficients, IsotrivialWitness, Unknown };
struct IsotrivialityResult {
  Isotriviality kind = Isotriviality::Unknown;
  std::optional<RationalMap> conjugacy;  // M with M^-1 o phi o M over k
  std::optional<RationalMap> conjugate;
};
IsotrivialityResult isotriviality_heuristic(const RationalMap& phi, int search_degree_bound);

// Degree of the ramification divisor from the Wronskian F'G - FG', with the
// contribution at infinity read off the reversed pair. Equals 2d - 2.
int ramification_divisor_degree(const RationalMap& phi);

}  // namespace ffdyn
