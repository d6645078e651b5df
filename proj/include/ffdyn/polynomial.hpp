#pragma once

// Dense univariate polynomials over the rationals. These are the elements of
// k[t] underlying the function field K = k(t).

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace ffdyn {

using Rational = mpq_class;
using Integer = mpz_class;

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT: constants convert implicitly
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT
  explicit Polynomial(std::vector<Rational> coefficients);
  Polynomial(std::initializer_list<long> coefficients);

  static Polynomial monomial(const Rational& c, std::size_t k);
  static Polynomial t() { return monomial(1, 1); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_one() const;
  bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }
  bool has_integer_coefficients() const;

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& leading() const;
  // Coefficient of t^k (zero beyond the degree).
  Rational coefficient(std::size_t k) const;
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Polynomial monic() const;
  Polynomial derivative() const;
  Rational evaluate(const Rational& x) const;
  Polynomial pow(unsigned e) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;
  // Total order: by degree, then coefficients from the top down.
  friend std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b);

  // Integer coefficient vector and scale s with *this == s * result, where the
  // result has coprime integer entries and positive leading coefficient.
  std::pair<std::vector<Integer>, Rational> primitive_integer_part() const;

  std::string debug_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;  // lowest degree first
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

// Euclidean division over the rationals. Throws on a zero divisor.
DivMod divmod(const Polynomial& a, const Polynomial& b);
Polynomial operator%(const Polynomial& a, const Polynomial& b);
// Quotient when b divides a exactly; throws std::domain_error otherwise.
Polynomial exact_quotient(const Polynomial& a, const Polynomial& b);
bool divides(const Polynomial& b, const Polynomial& a);

// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// Largest e with p^e | a, for nonconstant p and nonzero a.
int multiplicity(const Polynomial& a, const Polynomial& p);

// Removes from a every factor it shares with b (repeatedly), returning the
// part of a coprime to b.
Polynomial strip_common_factors(Polynomial a, const Polynomial& b);

Polynomial from_integers(const std::vector<Integer>& coefficients);

}  // namespace ffdyn
