#include "ffdyn/factor.hpp"

#include "ffdyn/modular.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace ffdyn {

namespace {

using modular::Field;
using modular::ModPoly;

// Distinct-degree then equal-degree (Cantor-Zassenhaus) factorization of a
// monic squarefree polynomial over F_p, p odd.
std::vector<ModPoly> factor_mod_p(const Field& F, ModPoly f, std::mt19937_64& rng) {
  std::vector<std::pair<ModPoly, int>> by_degree;
  const ModPoly x{0, 1};
  ModPoly h = x;
  const Integer p_big(static_cast<unsigned long>(F.p));
  for (int i = 1; Field::deg(f) >= 2 * i; ++i) {
    h = F.powmod(h, p_big, f);
    ModPoly g = F.gcd(f, F.sub(h, x));
    if (Field::deg(g) > 0) {
      by_degree.emplace_back(g, i);
      f = F.quo(f, g);
      h = F.mod(h, f);
    }
  }
  if (Field::deg(f) > 0) by_degree.emplace_back(f, Field::deg(f));

  std::vector<ModPoly> out;
  for (auto& [g, i] : by_degree) {
    std::vector<ModPoly> pending{g};
    Integer p_i;
    mpz_pow_ui(p_i.get_mpz_t(), p_big.get_mpz_t(), static_cast<unsigned long>(i));
    const Integer exponent = (p_i - 1) / 2;
    while (!pending.empty()) {
      ModPoly cur = std::move(pending.back());
      pending.pop_back();
      if (Field::deg(cur) == i) {
        out.push_back(std::move(cur));
        continue;
      }
      for (;;) {
        ModPoly a(static_cast<std::size_t>(Field::deg(cur)));
        for (auto& c : a) c = rng() % F.p;
        Field::trim(a);
        if (Field::deg(a) < 1) continue;
        ModPoly b = F.powmod(a, exponent, cur);
        b = F.sub(b, ModPoly{1});
        ModPoly d = F.gcd(cur, b);
        if (Field::deg(d) > 0 && Field::deg(d) < Field::deg(cur)) {
          pending.push_back(F.quo(cur, d));
          pending.push_back(std::move(d));
          break;
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Arithmetic modulo M = p^k on integer coefficient vectors.

using IntPoly = std::vector<Integer>;

void trim(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void reduce_mod(IntPoly& a, const Integer& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  trim(a);
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  trim(out);
  return out;
}

IntPoly mul_mod(const IntPoly& a, const IntPoly& b, const Integer& m) {
  IntPoly out = mul(a, b);
  reduce_mod(out, m);
  return out;
}

IntPoly lift_mod_poly(const ModPoly& a) {
  IntPoly out;
  out.reserve(a.size());
  for (auto c : a) out.emplace_back(static_cast<unsigned long>(c));
  return out;
}

// Lifts f == g*h (mod p), g, h monic and coprime mod p, to a factorization
// modulo p^k. f is monic modulo p^k.
std::pair<IntPoly, IntPoly> hensel_lift_pair(const Field& F, const IntPoly& f, const ModPoly& g0,
                                             const ModPoly& h0, unsigned k) {
  ModPoly s, t;
  F.bezout(g0, h0, &s, &t);
  IntPoly g = lift_mod_poly(g0);
  IntPoly h = lift_mod_poly(h0);
  const Integer p(static_cast<unsigned long>(F.p));
  Integer pj = p;
  for (unsigned j = 1; j < k; ++j) {
    IntPoly err = f;
    IntPoly gh = mul(g, h);
    if (gh.size() > err.size()) err.resize(gh.size());
    for (std::size_t i = 0; i < gh.size(); ++i) err[i] -= gh[i];
    for (auto& c : err) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
    trim(err);
    ModPoly e = F.reduce(err);
    if (!e.empty()) {
      ModPoly tau = F.mod(F.mul(t, e), g0);
      ModPoly sigma = F.mod(F.mul(s, e), h0);
      for (std::size_t i = 0; i < tau.size(); ++i) g[i] += pj * static_cast<unsigned long>(tau[i]);
      for (std::size_t i = 0; i < sigma.size(); ++i)
        h[i] += pj * static_cast<unsigned long>(sigma[i]);
    }
    pj *= p;
    reduce_mod(g, pj);
    reduce_mod(h, pj);
  }
  return {g, h};
}

std::vector<IntPoly> hensel_lift(const Field& F, IntPoly f, std::vector<ModPoly> factors,
                                 unsigned k, const Integer& modulus) {
  std::vector<IntPoly> lifted;
  while (factors.size() > 1) {
    ModPoly g0 = factors.front();
    ModPoly h0{1};
    for (std::size_t i = 1; i < factors.size(); ++i) h0 = F.mul(h0, factors[i]);
    auto [g, h] = hensel_lift_pair(F, f, g0, h0, k);
    lifted.push_back(std::move(g));
    f = std::move(h);
    reduce_mod(f, modulus);
    factors.erase(factors.begin());
  }
  lifted.push_back(std::move(f));
  return lifted;
}

IntPoly symmetric(IntPoly a, const Integer& m) {
  const Integer half = m / 2;
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  trim(a);
  return a;
}

IntPoly primitive(IntPoly a) {
  Integer g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (a.back() < 0) g = -g;
  for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return a;
}

// Quotient a / b over Z if b divides a exactly.
bool try_divide(const IntPoly& a, const IntPoly& b, IntPoly* quotient) {
  if (b.size() > a.size()) return false;
  // Cheap filter on the constant terms.
  if (b[0] != 0 && !mpz_divisible_p(a[0].get_mpz_t(), b[0].get_mpz_t())) return false;
  IntPoly rem = a;
  IntPoly q(a.size() - b.size() + 1);
  const std::size_t db = b.size() - 1;
  for (std::size_t k = q.size(); k-- > 0;) {
    Integer& top = rem[k + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return false;
    Integer c;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), b.back().get_mpz_t());
    for (std::size_t j = 0; j <= db; ++j) mpz_submul(rem[k + j].get_mpz_t(), c.get_mpz_t(),
                                                     b[j].get_mpz_t());
    q[k] = std::move(c);
  }
  for (const auto& c : rem)
    if (c != 0) return false;
  trim(q);
  *quotient = std::move(q);
  return true;
}

// Next combination of `size` indices out of n in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
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

// Irreducible factors over Z of a primitive squarefree integer polynomial of
// degree >= 2 with positive leading coefficient.
std::vector<IntPoly> zassenhaus(const IntPoly& f) {
  const auto n = static_cast<unsigned long>(f.size() - 1);
  const Integer& lead = f.back();

  // Pick among a few primes the one giving the fewest modular factors.
  std::mt19937_64 rng(0x5eed5eedULL);
  Integer candidate = 1U << 29U;
  std::vector<ModPoly> best_factors;
  std::uint64_t best_p = 0;
  int tried = 0;
  while (tried < 3) {
    mpz_nextprime(candidate.get_mpz_t(), candidate.get_mpz_t());
    const std::uint64_t p = candidate.get_ui();
    if (mpz_divisible_ui_p(lead.get_mpz_t(), p)) continue;
    Field F{p};
    ModPoly fp = F.reduce(f);
    if (Field::deg(fp) != static_cast<int>(n)) continue;
    if (Field::deg(F.gcd(fp, F.derivative(fp))) != 0) continue;
    ++tried;
    auto facs = factor_mod_p(F, F.monic(fp), rng);
    if (best_p == 0 || facs.size() < best_factors.size()) {
      best_p = p;
      best_factors = std::move(facs);
    }
    if (best_factors.size() == 1) break;
  }
  if (best_factors.size() == 1) return {f};

  const Field F{best_p};
  // Factor coefficient bound: |lead| * 2^n * ||f||_2, doubled for signs.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  Integer bound = 2 * abs(lead) * norm;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n);
  const Integer p(static_cast<unsigned long>(best_p));
  Integer modulus = p;
  unsigned k = 1;
  while (modulus <= bound) {
    modulus *= p;
    ++k;
  }

  // Monic image of f modulo p^k.
  Integer lead_inv;
  mpz_invert(lead_inv.get_mpz_t(), lead.get_mpz_t(), modulus.get_mpz_t());
  IntPoly f_monic = f;
  for (auto& c : f_monic) c *= lead_inv;
  reduce_mod(f_monic, modulus);
  std::vector<IntPoly> lifted = hensel_lift(F, f_monic, best_factors, k, modulus);

  std::vector<IntPoly> found;
  IntPoly rest = f;
  std::vector<std::size_t> remaining(lifted.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  std::size_t size = 1;
  while (2 * size <= remaining.size()) {
    bool hit = false;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    do {
      IntPoly cand{rest.back()};
      for (auto i : idx) cand = mul_mod(cand, lifted[remaining[i]], modulus);
      cand = primitive(symmetric(cand, modulus));
      IntPoly quotient;
      if (cand.size() > 1 && try_divide(rest, cand, &quotient)) {
        found.push_back(cand);
        rest = std::move(quotient);
        for (std::size_t j = size; j-- > 0;) {
          remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(idx[j]));
        }
        hit = true;
        break;
      }
    } while (next_combination(idx, remaining.size()));
    if (!hit) ++size;
  }
  if (rest.size() > 1) found.push_back(primitive(rest));
  return found;
}

std::vector<Polynomial> factor_squarefree(const Polynomial& s) {
  if (s.degree() <= 1) return {s.monic()};
  auto [ints, scale] = s.primitive_integer_part();
  std::vector<Polynomial> out;
  for (const auto& g : zassenhaus(ints)) out.push_back(from_integers(g).monic());
  return out;
}

}  // namespace

std::vector<FactorPower> squarefree_decomposition(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("cannot factor zero");
  std::vector<FactorPower> out;
  if (p.degree() < 1) return out;
  // Yun's algorithm.
  Polynomial f = p.monic();
  Polynomial df = f.derivative();
  Polynomial a = gcd(f, df);
  Polynomial b = exact_quotient(f, a);
  Polynomial c = exact_quotient(df, a);
  Polynomial d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Polynomial g = gcd(b, d);
    if (g.degree() > 0) out.push_back({g, i});
    b = exact_quotient(b, g);
    c = exact_quotient(d, g);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

Factorization factor_poly(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("cannot factor zero");
  Factorization out;
  out.unit = p.leading();
  for (const auto& [s, mult] : squarefree_decomposition(p)) {
    for (auto& q : factor_squarefree(s)) out.factors.push_back({std::move(q), mult});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const FactorPower& x, const FactorPower& y) { return x.factor < y.factor; });
  return out;
}

bool is_irreducible(const Polynomial& p) {
  if (p.degree() < 1) return false;
  const auto f = factor_poly(p);
  return f.factors.size() == 1 && f.factors[0].multiplicity == 1;
}

}  // namespace ffdyn
