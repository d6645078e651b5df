#include "ffdyn/function_field.hpp"

#include <algorithm>
#include <stdexcept>

#include "ffdyn/factor.hpp"

namespace ffdyn {

FieldElement::FieldElement(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw std::domain_error("division by zero in K");
  if (num.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (den.degree() == 0) {
    num_ = num * (1 / den.leading());
    den_ = Polynomial(1);
    return;
  }
  Polynomial g = gcd(num, den);
  Polynomial n = g.is_one() ? num : exact_quotient(num, g);
  Polynomial d = g.is_one() ? den : exact_quotient(den, g);
  const Rational scale = 1 / d.leading();
  num_ = n * scale;
  den_ = d * scale;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in K");
  return FieldElement(den_, num_);
}

FieldElement FieldElement::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement out;
  out.num_ = num_.pow(static_cast<unsigned>(e));
  out.den_ = den_.pow(static_cast<unsigned>(e));
  return out;
}

FieldElement FieldElement::operator-() const {
  FieldElement out = *this;
  out.num_ = -out.num_;
  return out;
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  if (den_ == rhs.den_) {
    *this = FieldElement(num_ + rhs.num_, den_);
  } else {
    *this = FieldElement(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) { return *this += -rhs; }

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  if (den_.degree() == 0 && rhs.den_.degree() == 0) {
    num_ *= rhs.num_;
    if (num_.is_zero()) den_ = Polynomial(1);
    return *this;
  }
  *this = FieldElement(num_ * rhs.num_, den_ * rhs.den_);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero in K");
  *this = FieldElement(num_ * rhs.den_, den_ * rhs.num_);
  return *this;
}

std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
  if (auto c = a.num_ <=> b.num_; c != 0) return c;
  return a.den_ <=> b.den_;
}

Place Place::finite(const Polynomial& p) {
  if (p.degree() < 1 || !p.is_monic()) {
    throw std::invalid_argument("place polynomial must be monic of positive degree");
  }
  if (!is_irreducible(p)) throw std::invalid_argument("place polynomial must be irreducible");
  return Place(p);
}

Place Place::finite_unchecked(const Polynomial& p) { return Place(p); }

const Polynomial& Place::polynomial() const {
  if (!poly_) throw std::logic_error("infinite place has no polynomial");
  return *poly_;
}

std::strong_ordering operator<=>(const Place& a, const Place& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() <=> b.is_infinite();
  return *a.poly_ <=> *b.poly_;
}

PlaceSet::PlaceSet(std::initializer_list<Place> places) : PlaceSet(std::vector<Place>(places)) {}

PlaceSet::PlaceSet(std::vector<Place> places) : places_(std::move(places)) {
  std::sort(places_.begin(), places_.end());
  places_.erase(std::unique(places_.begin(), places_.end()), places_.end());
}

void PlaceSet::insert(const Place& v) {
  auto it = std::lower_bound(places_.begin(), places_.end(), v);
  if (it == places_.end() || !(*it == v)) places_.insert(it, v);
}

bool PlaceSet::contains(const Place& v) const {
  return std::binary_search(places_.begin(), places_.end(), v);
}

bool PlaceSet::contains_infinity() const {
  return !places_.empty() && places_.back().is_infinite();
}

PlaceSet operator|(const PlaceSet& a, const PlaceSet& b) {
  std::vector<Place> all = a.places_;
  all.insert(all.end(), b.places_.begin(), b.places_.end());
  return PlaceSet(std::move(all));
}

int ord(const Polynomial& p, const Place& v) {
  if (p.is_zero()) throw std::domain_error("valuation of zero undefined");
  if (v.is_infinite()) return -p.degree();
  return multiplicity(p, v.polynomial());
}

int ord(const FieldElement& x, const Place& v) {
  if (x.is_zero()) throw std::domain_error("valuation of zero undefined");
  return ord(x.num(), v) - ord(x.den(), v);
}

int log_abs(const FieldElement& x, const Place& v) { return -ord(x, v) * v.degree(); }

int height_elem(const FieldElement& x) { return std::max(x.num().degree(), x.den().degree()); }

PlaceSet places_dividing(const Polynomial& p) {
  std::vector<Place> out;
  if (p.degree() < 1) return PlaceSet();
  for (const auto& f : factor_poly(p).factors) out.push_back(Place::finite_unchecked(f.factor));
  return PlaceSet(std::move(out));
}

PlaceSet support(const FieldElement& x) {
  PlaceSet s = places_dividing(x.num()) | places_dividing(x.den());
  s.insert(Place::infinity());
  return s;
}

int height_elem_by_places(const FieldElement& x) {
  if (x.is_zero()) return 0;
  int h = 0;
  for (const auto& v : support(x)) h += std::max(log_abs(x, v), 0);
  return h;
}

int product_formula_defect(const FieldElement& x) {
  if (x.is_zero()) throw std::domain_error("product formula needs a nonzero element");
  int total = 0;
  for (const auto& v : support(x)) total += ord(x, v) * v.degree();
  return total;
}

namespace {

// Part of p coprime to every finite place of S.
Polynomial strip_places(Polynomial p, const PlaceSet& S) {
  for (const auto& v : S) {
    if (v.is_infinite() || p.degree() < 1) continue;
    const int e = multiplicity(p, v.polynomial());
    if (e > 0) p = exact_quotient(p, v.polynomial().pow(static_cast<unsigned>(e)));
  }
  return p;
}

}  // namespace

bool is_S_integer(const FieldElement& x, const PlaceSet& S) {
  if (x.is_zero()) return true;
  if (!S.contains_infinity() && x.num().degree() > x.den().degree()) return false;
  return strip_places(x.den(), S).degree() == 0;
}

bool is_S_unit(const FieldElement& x, const PlaceSet& S) {
  if (x.is_zero()) return false;
  if (!S.contains_infinity() && x.num().degree() != x.den().degree()) return false;
  return strip_places(x.den(), S).degree() == 0 && strip_places(x.num(), S).degree() == 0;
}

int S_height(const FieldElement& x, const PlaceSet& S) {
  if (x.is_zero()) return 0;
  int h = 0;
  for (const auto& v : S) h += std::max(log_abs(x, v), 0);
  return h;
}

bool quasi_integral(const FieldElement& x, const PlaceSet& S, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon > 1) throw std::invalid_argument("epsilon must lie in (0,1]");
  return Rational(S_height(x, S)) >= epsilon * height_elem(x);
}

}  // namespace ffdyn
