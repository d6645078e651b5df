#include "ffdyn/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ffdyn {

namespace {

// Common-denominator integer representation: p == values / denominator.
struct Scaled {
  std::vector<Integer> values;
  Integer denominator = 1;
};

Scaled scale_to_integers(const std::vector<Rational>& coeffs) {
  Scaled out;
  for (const auto& c : coeffs) {
    if (c.get_den() != 1) mpz_lcm(out.denominator.get_mpz_t(), out.denominator.get_mpz_t(),
                                  c.get_den_mpz_t());
  }
  out.values.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    if (out.denominator == 1) {
      out.values.push_back(c.get_num());
    } else {
      Integer v = out.denominator / c.get_den();
      v *= c.get_num();
      out.values.push_back(std::move(v));
    }
  }
  return out;
}

std::size_t max_bits(const std::vector<Integer>& v) {
  std::size_t bits = 0;
  for (const auto& x : v) bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
  return bits;
}

// Packs the nonnegative (sign > 0) or negated negative (sign < 0) entries of v
// into slots of `limbs` limbs each.
Integer pack(const std::vector<Integer>& v, std::size_t limbs, int sign) {
  std::vector<mp_limb_t> buf(v.size() * limbs, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (mpz_sgn(v[i].get_mpz_t()) != sign) continue;
    std::size_t count = 0;
    mpz_export(buf.data() + i * limbs, &count, -1, sizeof(mp_limb_t), 0, 0, v[i].get_mpz_t());
  }
  Integer out;
  mpz_import(out.get_mpz_t(), buf.size(), -1, sizeof(mp_limb_t), 0, 0, buf.data());
  return out;
}

// Product of integer polynomials by Kronecker substitution t -> 2^(64 * limbs),
// with slots wide enough to hold every signed product coefficient.
std::vector<Integer> kronecker_product(const std::vector<Integer>& a,
                                       const std::vector<Integer>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t log_n = 0;
  while ((std::size_t{1} << log_n) < n) ++log_n;
  const std::size_t bits = max_bits(a) + max_bits(b) + log_n + 2;
  const std::size_t limb_bits = sizeof(mp_limb_t) * 8;
  const std::size_t limbs = (bits + limb_bits - 1) / limb_bits;
  const Integer pa = pack(a, limbs, 1) - pack(a, limbs, -1);
  const Integer pb = pack(b, limbs, 1) - pack(b, limbs, -1);
  Integer prod = pa * pb;
  const int sign = mpz_sgn(prod.get_mpz_t());
  mpz_abs(prod.get_mpz_t(), prod.get_mpz_t());

  const std::size_t slots = a.size() + b.size() - 1;
  std::vector<mp_limb_t> buf(slots * limbs + 1, 0);
  std::size_t count = 0;
  mpz_export(buf.data(), &count, -1, sizeof(mp_limb_t), 0, 0, prod.get_mpz_t());
  Integer half, full;
  mpz_setbit(full.get_mpz_t(), limbs * limb_bits);
  mpz_setbit(half.get_mpz_t(), limbs * limb_bits - 1);
  std::vector<Integer> out(slots);
  int carry = 0;
  for (std::size_t i = 0; i < slots; ++i) {
    Integer c;
    mpz_import(c.get_mpz_t(), limbs, -1, sizeof(mp_limb_t), 0, 0, buf.data() + i * limbs);
    c += carry;
    carry = 0;
    if (c >= half) {
      c -= full;
      carry = 1;
    }
    out[i] = sign < 0 ? Integer(-c) : c;
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) coeffs_.push_back(c);
}

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

Polynomial::Polynomial(std::initializer_list<long> coefficients) {
  for (long c : coefficients) coeffs_.emplace_back(c);
  trim();
}

Polynomial Polynomial::monomial(const Rational& c, std::size_t k) {
  Polynomial p;
  if (c == 0) return p;
  p.coeffs_.assign(k + 1, Rational(0));
  p.coeffs_[k] = c;
  return p;
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

bool Polynomial::is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }

bool Polynomial::has_integer_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& c) { return c.get_den() == 1; });
}

const Rational& Polynomial::leading() const {
  if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
  return coeffs_.back();
}

Rational Polynomial::coefficient(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

Polynomial Polynomial::monic() const {
  if (is_zero() || is_monic()) return *this;
  Polynomial out = *this;
  Rational inv = 1 / coeffs_.back();
  for (auto& c : out.coeffs_) c *= inv;
  return out;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  // Multiply over the integers and rescale once; avoids a gcd per product term.
  const Scaled sa = scale_to_integers(a.coeffs_);
  const Scaled sb = scale_to_integers(b.coeffs_);
  std::vector<Integer> prod;
  if (std::min(sa.values.size(), sb.values.size()) >= 24) {
    prod = kronecker_product(sa.values, sb.values);
  } else {
    prod.resize(sa.values.size() + sb.values.size() - 1);
    for (std::size_t i = 0; i < sa.values.size(); ++i) {
      if (sa.values[i] == 0) continue;
      for (std::size_t j = 0; j < sb.values.size(); ++j) {
        mpz_addmul(prod[i + j].get_mpz_t(), sa.values[i].get_mpz_t(), sb.values[j].get_mpz_t());
      }
    }
  }
  Integer den = sa.denominator * sb.denominator;
  Polynomial out;
  out.coeffs_.resize(prod.size());
  for (std::size_t i = 0; i < prod.size(); ++i) {
    out.coeffs_[i] = Rational(prod[i], den);
    out.coeffs_[i].canonicalize();
  }
  out.trim();
  return out;
}

std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = a.coeffs_.size(); i-- > 0;) {
    int s = cmp(a.coeffs_[i], b.coeffs_[i]);
    if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::pair<std::vector<Integer>, Rational> Polynomial::primitive_integer_part() const {
  if (is_zero()) return {{}, Rational(0)};
  Scaled s = scale_to_integers(coeffs_);
  Integer g = 0;
  for (const auto& v : s.values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (s.values.back() < 0) g = -g;
  for (auto& v : s.values) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  Rational scale(g, s.denominator);
  scale.canonicalize();
  return {std::move(s.values), scale};
}

std::string Polynomial::debug_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? ", " : "") << coeffs_[i];
  os << "]";
  return os.str();
}

DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial(), a};
  const auto& bc = b.coefficients();
  const int db = b.degree();
  std::vector<Rational> r = a.coefficients();
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
  const bool monic = b.is_monic();
  const Rational inv = 1 / b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    Rational& top = r[static_cast<std::size_t>(k + db)];
    if (top == 0) continue;
    Rational f = monic ? top : Rational(top * inv);
    for (int j = 0; j <= db; ++j) {
      if (bc[static_cast<std::size_t>(j)] == 0) continue;
      r[static_cast<std::size_t>(k + j)] -= f * bc[static_cast<std::size_t>(j)];
    }
    q[static_cast<std::size_t>(k)] = std::move(f);
  }
  r.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).remainder; }

Polynomial exact_quotient(const Polynomial& a, const Polynomial& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

bool divides(const Polynomial& b, const Polynomial& a) { return (a % b).is_zero(); }

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a.monic();
  Polynomial y = b.monic();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    Polynomial r = (x % y).monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

int multiplicity(const Polynomial& a, const Polynomial& p) {
  if (p.degree() < 1) throw std::invalid_argument("multiplicity: need a nonconstant factor");
  if (a.is_zero()) throw std::invalid_argument("multiplicity: zero polynomial");
  int e = 0;
  Polynomial rest = a;
  while (rest.degree() >= p.degree()) {
    auto [q, r] = divmod(rest, p);
    if (!r.is_zero()) break;
    rest = std::move(q);
    ++e;
  }
  return e;
}

Polynomial strip_common_factors(Polynomial a, const Polynomial& b) {
  if (a.is_zero()) return a;
  Polynomial g = gcd(a, b);
  while (g.degree() > 0) {
    a = exact_quotient(a, g);
    g = gcd(a, g);
  }
  return a;
}

Polynomial from_integers(const std::vector<Integer>& coefficients) {
  std::vector<Rational> c;
  c.reserve(coefficients.size());
  for (const auto& v : coefficients) c.emplace_back(v);
  return Polynomial(std::move(c));
}

}  // namespace ffdyn
