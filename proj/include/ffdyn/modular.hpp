#pragma once

// Dense polynomial arithmetic over F_p for word-sized primes p < 2^31.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ffdyn::modular {

// Coefficients lowest degree first.
using ModPoly = std::vector<std::uint64_t>;

struct Field {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
      if (e & 1U) r = mul(r, a);
      a = mul(a, a);
      e >>= 1U;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }

  static void trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  static int deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

  ModPoly reduce(const std::vector<mpz_class>& a) const {
    ModPoly out(a.size());
    mpz_class m;
    for (std::size_t i = 0; i < a.size(); ++i) {
      mpz_fdiv_r_ui(m.get_mpz_t(), a[i].get_mpz_t(), p);
      out[i] = m.get_ui();
    }
    trim(out);
    return out;
  }

  ModPoly add(const ModPoly& a, const ModPoly& b) const {
    ModPoly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = add(out[i], b[i]);
    trim(out);
    return out;
  }

  ModPoly scale(ModPoly a, std::uint64_t c) const {
    for (auto& x : a) x = mul(x, c);
    trim(a);
    return a;
  }

  ModPoly sub(const ModPoly& a, const ModPoly& b) const {
    ModPoly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = sub(out[i], b[i]);
    trim(out);
    return out;
  }

  ModPoly mul(const ModPoly& a, const ModPoly& b) const {
    if (a.empty() || b.empty()) return {};
    ModPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    trim(out);
    return out;
  }

  ModPoly monic(ModPoly a) const {
    if (a.empty() || a.back() == 1) return a;
    std::uint64_t c = inv(a.back());
    for (auto& x : a) x = mul(x, c);
    return a;
  }

  // a = q*b + r
  void divmod(const ModPoly& a, const ModPoly& b, ModPoly* q, ModPoly* r) const {
    ModPoly rem = a;
    const int db = deg(b);
    const std::uint64_t inv_lead = inv(b.back());
    ModPoly quot(deg(a) >= db ? static_cast<std::size_t>(deg(a) - db + 1) : 0, 0);
    for (int k = deg(a) - db; k >= 0; --k) {
      std::uint64_t c = mul(rem[static_cast<std::size_t>(k + db)], inv_lead);
      if (c == 0) continue;
      quot[static_cast<std::size_t>(k)] = c;
      for (int j = 0; j <= db; ++j) {
        auto idx = static_cast<std::size_t>(k + j);
        rem[idx] = sub(rem[idx], mul(c, b[static_cast<std::size_t>(j)]));
      }
    }
    trim(rem);
    trim(quot);
    if (q) *q = std::move(quot);
    if (r) *r = std::move(rem);
  }

  ModPoly mod(const ModPoly& a, const ModPoly& b) const {
    ModPoly r;
    divmod(a, b, nullptr, &r);
    return r;
  }

  ModPoly quo(const ModPoly& a, const ModPoly& b) const {
    ModPoly q;
    divmod(a, b, &q, nullptr);
    return q;
  }

  ModPoly gcd(ModPoly a, ModPoly b) const {
    while (!b.empty()) {
      ModPoly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(std::move(a));
  }

  // s*a + t*b = 1 for coprime a, b.
  void bezout(const ModPoly& a, const ModPoly& b, ModPoly* s, ModPoly* t) const {
    ModPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
      ModPoly q, r;
      divmod(r0, r1, &q, &r);
      ModPoly s2 = sub(s0, mul(q, s1));
      ModPoly t2 = sub(t0, mul(q, t1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (deg(r0) != 0) throw std::logic_error("bezout: inputs not coprime");
    std::uint64_t c = inv(r0[0]);
    for (auto& x : s0) x = mul(x, c);
    for (auto& x : t0) x = mul(x, c);
    *s = std::move(s0);
    *t = std::move(t0);
  }

  ModPoly powmod(const ModPoly& base, const mpz_class& e, const ModPoly& f) const {
    ModPoly result{1};
    ModPoly b = mod(base, f);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
      result = mod(mul(result, result), f);
      if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(mul(result, b), f);
    }
    return result;
  }

  ModPoly derivative(const ModPoly& a) const {
    if (a.size() <= 1) return {};
    ModPoly d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = mul(a[i], i % p);
    trim(d);
    return d;
  }
};

}  // namespace ffdyn::modular
