#include "ffdyn/zpolynomial.hpp"

#include <algorithm>
#include <stdexcept>

#include "ffdyn/factor.hpp"
#include "ffdyn/function_field.hpp"

namespace ffdyn {

ZPolynomial::ZPolynomial(const Polynomial& c) {
  if (!c.is_zero()) coeffs_.push_back(c);
}

ZPolynomial::ZPolynomial(std::vector<Polynomial> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

ZPolynomial ZPolynomial::monomial(const Polynomial& c, std::size_t k) {
  if (c.is_zero()) return {};
  std::vector<Polynomial> v(k + 1);
  v[k] = c;
  return ZPolynomial(std::move(v));
}

void ZPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const Polynomial& ZPolynomial::leading() const {
  if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
  return coeffs_.back();
}

const Polynomial& ZPolynomial::coefficient(std::size_t k) const {
  static const Polynomial zero;
  return k < coeffs_.size() ? coeffs_[k] : zero;
}

int ZPolynomial::t_degree() const {
  int d = -1;
  for (const auto& c : coeffs_) d = std::max(d, c.degree());
  return d;
}

ZPolynomial ZPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Polynomial> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
  return ZPolynomial(std::move(d));
}

ZPolynomial ZPolynomial::pow(unsigned e) const {
  ZPolynomial result(Polynomial(1));
  ZPolynomial base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial ZPolynomial::specialize(const Rational& value) const {
  std::vector<Rational> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.evaluate(value));
  return Polynomial(std::move(out));
}

ZPolynomial ZPolynomial::reversed(int n) const {
  if (n < degree()) throw std::invalid_argument("reversed: n below degree");
  std::vector<Polynomial> out(static_cast<std::size_t>(n + 1));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[static_cast<std::size_t>(n) - i] = coeffs_[i];
  return ZPolynomial(std::move(out));
}

ZPolynomial ZPolynomial::operator-() const {
  ZPolynomial out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

ZPolynomial& ZPolynomial::operator+=(const ZPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

ZPolynomial& ZPolynomial::operator-=(const ZPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

ZPolynomial& ZPolynomial::operator*=(const Polynomial& c) {
  if (c.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

ZPolynomial operator*(const ZPolynomial& a, const ZPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Polynomial> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return ZPolynomial(std::move(out));
}

std::strong_ordering operator<=>(const ZPolynomial& a, const ZPolynomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = a.coeffs_.size(); i-- > 0;) {
    if (auto c = a.coeffs_[i] <=> b.coeffs_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Polynomial content(const ZPolynomial& p) {
  Polynomial g;
  for (const auto& c : p.coefficients()) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

ZPolynomial primitive_part(const ZPolynomial& p) {
  if (p.is_zero()) return p;
  const Polynomial c = content(p);
  std::vector<Polynomial> coeffs;
  coeffs.reserve(p.coefficients().size());
  for (const auto& x : p.coefficients()) {
    coeffs.push_back(c.degree() > 0 ? exact_quotient(x, c) : x);
  }
  // Integer normalization across all coefficients.
  Integer den_lcm = 1;
  Integer num_gcd = 0;
  for (const auto& x : coeffs) {
    for (const auto& q : x.coefficients()) {
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num_mpz_t());
    }
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (coeffs.back().leading() < 0) scale = -scale;
  for (auto& x : coeffs) x *= scale;
  return ZPolynomial(std::move(coeffs));
}

ZPolynomial pseudo_remainder(const ZPolynomial& a, const ZPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-division by zero");
  ZPolynomial r = a;
  const Polynomial& lb = b.leading();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const auto shift = static_cast<std::size_t>(r.degree() - b.degree());
    ZPolynomial next = r * lb;
    next -= ZPolynomial::monomial(r.leading(), shift) * b;
    r = std::move(next);
  }
  return r;
}

ZPolynomial exact_quotient(const ZPolynomial& a, const ZPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  ZPolynomial r = a;
  std::vector<Polynomial> q(a.degree() >= b.degree() ? static_cast<std::size_t>(a.degree() - b.degree() + 1)
                                                     : 0);
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const auto shift = static_cast<std::size_t>(r.degree() - b.degree());
    Polynomial c = exact_quotient(r.leading(), b.leading());
    r -= ZPolynomial::monomial(c, shift) * b;
    q[shift] = std::move(c);
  }
  if (!r.is_zero()) throw std::domain_error("inexact division in k[t][z]");
  return ZPolynomial(std::move(q));
}

bool divides_over_K(const ZPolynomial& b, const ZPolynomial& a) {
  if (b.is_zero()) return a.is_zero();
  if (b.degree() == 0) return true;
  return pseudo_remainder(a, b).is_zero();
}

ZPolynomial gcd_over_K(const ZPolynomial& a, const ZPolynomial& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  ZPolynomial x = primitive_part(a);
  ZPolynomial y = primitive_part(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero() && y.degree() > 0) {
    ZPolynomial r = pseudo_remainder(x, y);
    x = std::move(y);
    y = primitive_part(r);
  }
  if (!y.is_zero()) return ZPolynomial(Polynomial(1));  // nonzero constant remainder
  return x.degree() == 0 ? ZPolynomial(Polynomial(1)) : x;
}

std::vector<ZFactorPower> squarefree_decomposition_over_K(const ZPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("cannot decompose zero");
  std::vector<ZFactorPower> out;
  if (p.degree() < 1) return out;
  ZPolynomial f = primitive_part(p);
  ZPolynomial c = gcd_over_K(f, f.derivative());
  ZPolynomial w = exact_quotient(f, c);
  int i = 1;
  while (w.degree() > 0) {
    ZPolynomial y = gcd_over_K(w, c);
    ZPolynomial part = exact_quotient(w, y);
    if (part.degree() > 0) out.push_back({primitive_part(part), i});
    w = primitive_part(y);
    c = exact_quotient(c, y);
    ++i;
  }
  return out;
}

namespace {

// Kronecker map sum c_ij z^i t^j -> sum c_ij x^(i + stride*j).
Polynomial kronecker(const ZPolynomial& p, int stride) {
  std::vector<Rational> out(static_cast<std::size_t>(p.degree() + 1 + stride * std::max(p.t_degree(), 0)));
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
    const auto& c = p.coefficients()[i].coefficients();
    for (std::size_t j = 0; j < c.size(); ++j) out[i + static_cast<std::size_t>(stride) * j] = c[j];
  }
  return Polynomial(std::move(out));
}

ZPolynomial kronecker_inverse(const Polynomial& u, int stride) {
  const auto s = static_cast<std::size_t>(stride);
  std::vector<std::vector<Rational>> cols(s);
  const auto& c = u.coefficients();
  for (std::size_t e = 0; e < c.size(); ++e) {
    if (c[e] == 0) continue;
    auto& col = cols[e % s];
    if (col.size() <= e / s) col.resize(e / s + 1);
    col[e / s] = c[e];
  }
  std::vector<Polynomial> out;
  out.reserve(s);
  for (auto& col : cols) out.emplace_back(std::move(col));
  return ZPolynomial(std::move(out));
}

bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<ZPolynomial> irreducible_factors_over_K(const ZPolynomial& squarefree) {
  ZPolynomial rest = primitive_part(squarefree);
  if (rest.degree() <= 1) return {rest};
  const int stride = rest.degree() + 1;
  std::vector<Polynomial> pieces;
  for (const auto& [f, m] : factor_poly(kronecker(rest, stride)).factors) {
    for (int i = 0; i < m; ++i) pieces.push_back(f);
  }
  if (pieces.size() > 24) throw std::runtime_error("factorization over K: too many Kronecker factors");

  std::vector<ZPolynomial> found;
  std::size_t size = 1;
  while (2 * size <= pieces.size() && rest.degree() > 1) {
    bool hit = false;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    do {
      Polynomial prod(1);
      for (auto i : idx) prod *= pieces[i];
      ZPolynomial cand = kronecker_inverse(prod, stride);
      if (cand.degree() < 1 || cand.degree() >= rest.degree()) continue;
      cand = primitive_part(cand);
      if (!divides_over_K(cand, rest)) continue;
      rest = exact_quotient(rest, cand);
      found.push_back(std::move(cand));
      for (std::size_t j = size; j-- > 0;) pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(idx[j]));
      hit = true;
      break;
    } while (next_subset(idx, pieces.size()));
    if (!hit) ++size;
  }
  if (rest.degree() >= 1) found.push_back(primitive_part(rest));
  std::sort(found.begin(), found.end());
  return found;
}

Polynomial evaluate_homogeneous(const ZPolynomial& p, int n, const Polynomial& x0,
                                const Polynomial& x1) {
  if (p.is_zero()) return {};
  const int m = p.degree();
  std::vector<Polynomial> x1_pows(static_cast<std::size_t>(n + 1));
  x1_pows[0] = Polynomial(1);
  const bool x1_one = x1.is_one();
  for (int i = 1; i <= n; ++i) {
    x1_pows[static_cast<std::size_t>(i)] = x1_one ? x1 : x1_pows[static_cast<std::size_t>(i - 1)] * x1;
  }
  Polynomial acc = p.leading();
  for (int i = m - 1; i >= 0; --i) {
    acc *= x0;
    const auto& c = p.coefficient(static_cast<std::size_t>(i));
    if (!c.is_zero()) acc += c * x1_pows[static_cast<std::size_t>(m - i)];
  }
  if (n > m) acc *= x1_pows[static_cast<std::size_t>(n - m)];
  return acc;
}

FieldElement evaluate(const ZPolynomial& p, const FieldElement& x) {
  if (p.is_zero()) return {};
  // Homogeneous evaluation at [num : den], then divide by den^deg.
  const Polynomial value = evaluate_homogeneous(p, p.degree(), x.num(), x.den());
  return FieldElement(value, x.den().pow(static_cast<unsigned>(p.degree())));
}

}  // namespace ffdyn
