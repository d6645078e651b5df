#pragma once

// Polynomials in the dynamical variable z with coefficients in k[t]. Used for
// the numerator and denominator of rational self-maps and for fiber
// polynomials. Divisibility questions are answered over K = k(t) via Gauss's
// lemma on primitive representatives.

#include <compare>
#include <vector>

#include "ffdyn/polynomial.hpp"

namespace ffdyn {

class FieldElement;

class ZPolynomial {
 public:
  ZPolynomial() = default;
  ZPolynomial(const Polynomial& c);  // NOLINT: constants in z
  explicit ZPolynomial(std::vector<Polynomial> coefficients);

  static ZPolynomial z() { return ZPolynomial(std::vector<Polynomial>{Polynomial(), Polynomial(1)}); }
  static ZPolynomial monomial(const Polynomial& c, std::size_t k);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Polynomial& leading() const;
  const Polynomial& coefficient(std::size_t k) const;
  const std::vector<Polynomial>& coefficients() const { return coeffs_; }
  // Largest t-degree among the coefficients (-1 for zero).
  int t_degree() const;
  bool is_constant_in_t() const { return t_degree() <= 0; }

  ZPolynomial derivative() const;
  ZPolynomial pow(unsigned e) const;
  // Substitutes t = value.
  Polynomial specialize(const Rational& value) const;
  // z^n * p(1/z) for n >= degree.
  ZPolynomial reversed(int n) const;

  ZPolynomial operator-() const;
  ZPolynomial& operator+=(const ZPolynomial& rhs);
  ZPolynomial& operator-=(const ZPolynomial& rhs);
  ZPolynomial& operator*=(const Polynomial& c);
  friend ZPolynomial operator+(ZPolynomial a, const ZPolynomial& b) { return a += b; }
  friend ZPolynomial operator-(ZPolynomial a, const ZPolynomial& b) { return a -= b; }
  friend ZPolynomial operator*(const ZPolynomial& a, const ZPolynomial& b);
  friend ZPolynomial operator*(ZPolynomial a, const Polynomial& c) { return a *= c; }
  friend ZPolynomial operator*(const Polynomial& c, ZPolynomial a) { return a *= c; }

  friend bool operator==(const ZPolynomial&, const ZPolynomial&) = default;
  friend std::strong_ordering operator<=>(const ZPolynomial& a, const ZPolynomial& b);

 private:
  void trim();
  std::vector<Polynomial> coeffs_;  // lowest z-degree first
};

// Monic gcd in k[t] of all coefficients (0 for the zero polynomial).
Polynomial content(const ZPolynomial& p);
// p / content(p), scaled to integer coefficients with coprime entries and
// positive leading rational constant.
ZPolynomial primitive_part(const ZPolynomial& p);

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
ZPolynomial pseudo_remainder(const ZPolynomial& a, const ZPolynomial& b);
// Quotient when b divides a in k[t][z]; throws std::domain_error otherwise.
ZPolynomial exact_quotient(const ZPolynomial& a, const ZPolynomial& b);
// Whether b divides a in K[z].
bool divides_over_K(const ZPolynomial& b, const ZPolynomial& a);

// gcd over K[z], returned as a primitive representative (1 when coprime).
ZPolynomial gcd_over_K(const ZPolynomial& a, const ZPolynomial& b);

struct ZFactorPower {
  ZPolynomial factor;  // primitive representative, degree in z >= 1
  int multiplicity = 0;
};

// Squarefree decomposition over K of a nonzero polynomial (z-constant parts are
// dropped). Multiplicities strictly increase.
std::vector<ZFactorPower> squarefree_decomposition_over_K(const ZPolynomial& p);

// Irreducible factorization over K of a polynomial that is squarefree over K,
// via Kronecker substitution t -> x^B and univariate factoring over Q.
std::vector<ZPolynomial> irreducible_factors_over_K(const ZPolynomial& squarefree);

// Homogeneous evaluation sum_i c_i x0^i x1^(n-i), n >= degree.
Polynomial evaluate_homogeneous(const ZPolynomial& p, int n, const Polynomial& x0,
                                const Polynomial& x1);

// Evaluation at z = x for x in K.
FieldElement evaluate(const ZPolynomial& p, const FieldElement& x);

}  // namespace ffdyn
