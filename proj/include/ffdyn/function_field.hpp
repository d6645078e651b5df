#pragma once

// The rational function field K = k(t), k = Q: elements, places, valuations and
// the height and integrality predicates built on them. Logarithmic absolute
// values are integers: log|x|_v = -ord_v(x) * deg(v).

#include <compare>
#include <initializer_list>
#include <optional>
#include <vector>

#include "ffdyn/polynomial.hpp"

namespace ffdyn {

class FieldElement {
 public:
  FieldElement() : den_(1) {}
  FieldElement(const Polynomial& p) : num_(p), den_(1) {}  // NOLINT
  FieldElement(const Rational& c) : num_(c), den_(1) {}    // NOLINT
  FieldElement(long c) : FieldElement(Rational(c)) {}      // NOLINT
  // Reduces num/den; throws std::domain_error for a zero denominator.
  FieldElement(const Polynomial& num, const Polynomial& den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  bool is_polynomial() const { return den_.degree() == 0; }

  FieldElement inverse() const;
  FieldElement pow(int e) const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);
  FieldElement& operator/=(const FieldElement& rhs);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b);

 private:
  Polynomial num_;
  Polynomial den_;
};

class Place {
 public:
  // Validates that p is monic and irreducible; throws std::invalid_argument.
  static Place finite(const Polynomial& p);
  // Skips the irreducibility check (p must come from a factorization).
  static Place finite_unchecked(const Polynomial& p);
  static Place infinity() { return Place(); }

  bool is_infinite() const { return !poly_.has_value(); }
  const Polynomial& polynomial() const;
  int degree() const { return poly_ ? poly_->degree() : 1; }

  friend bool operator==(const Place&, const Place&) = default;
  // Finite places ordered by polynomial, then infinity last.
  friend std::strong_ordering operator<=>(const Place& a, const Place& b);

 private:
  Place() = default;
  explicit Place(Polynomial p) : poly_(std::move(p)) {}
  std::optional<Polynomial> poly_;
};

class PlaceSet {
 public:
  PlaceSet() = default;
  PlaceSet(std::initializer_list<Place> places);
  explicit PlaceSet(std::vector<Place> places);

  void insert(const Place& v);
  bool contains(const Place& v) const;
  bool contains_infinity() const;
  bool empty() const { return places_.empty(); }
  std::size_t size() const { return places_.size(); }
  const std::vector<Place>& places() const { return places_; }
  auto begin() const { return places_.begin(); }
  auto end() const { return places_.end(); }

  friend PlaceSet operator|(const PlaceSet& a, const PlaceSet& b);
  friend bool operator==(const PlaceSet&, const PlaceSet&) = default;

 private:
  std::vector<Place> places_;  // sorted, unique
};

// Valuation of a nonzero polynomial at a place.
int ord(const Polynomial& p, const Place& v);
int ord(const FieldElement& x, const Place& v);
int log_abs(const FieldElement& x, const Place& v);

// max(deg num, deg den).
int height_elem(const FieldElement& x);
// The same height as a sum of local contributions over the factored support.
int height_elem_by_places(const FieldElement& x);

// Every place where x has nonzero valuation, plus infinity.
PlaceSet support(const FieldElement& x);
// Irreducible factors of p as places (empty for constants).
PlaceSet places_dividing(const Polynomial& p);

int product_formula_defect(const FieldElement& x);

bool is_S_integer(const FieldElement& x, const PlaceSet& S);
bool is_S_unit(const FieldElement& x, const PlaceSet& S);
// Sum over v in S of max(log|x|_v, 0).
int S_height(const FieldElement& x, const PlaceSet& S);
bool quasi_integral(const FieldElement& x, const PlaceSet& S, const Rational& epsilon);

}  // namespace ffdyn
