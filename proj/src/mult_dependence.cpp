#include "ffdyn/mult_dependence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "ffdyn/errors.hpp"

namespace ffdyn {

namespace {

// The part of p coprime to every finite place of S.
Polynomial strip_S(Polynomial p, const PlaceSet& S) {
  for (const auto& v : S) {
    if (p.degree() <= 0) break;
    if (!v.is_infinite()) p = strip_common_factors(p, v.polynomial());
  }
  return p;
}

bool proportional(const Polynomial& a, const Polynomial& b) {
  if (a.degree() != b.degree()) return false;
  return a * b.leading() == b * a.leading();
}

// Monomial product of stripped coordinate parts, with the unstripped degree.
struct Part {
  Polynomial stripped;
  int degree = 0;
};

Part part_pow(const Polynomial& p, const PlaceSet& S, int e) {
  return {strip_S(p, S).pow(static_cast<unsigned>(e)), p.degree() * e};
}

Part operator*(const Part& a, const Part& b) { return {a.stripped * b.stripped, a.degree + b.degree}; }

void require_affine(const ProjectivePoint& alpha) {
  if (alpha.is_infinity()) throw std::invalid_argument("alpha must be affine");
}

std::optional<bool> wandering_status(const RationalMap& phi, const ProjectivePoint& P,
                                     int max_height) {
  try {
    ClassifyOptions opts;
    opts.max_height = max_height;
    return std::holds_alternative<Wandering>(classify_preperiodic(phi, P, opts));
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

}  // namespace

UnitHits unit_hits(const RationalMap& phi, const ProjectivePoint& alpha, const PlaceSet& S, int N,
                   int max_height) {
  require_affine(alpha);
  if (N < 1) throw std::invalid_argument("N must be positive");
  const OrbitPrefix orbit = orbit_prefix(phi, alpha, N, max_height);
  UnitHits out;
  out.scanned_through = static_cast<int>(orbit.points.size()) - 1;
  out.truncated = out.scanned_through < N;
  for (int n = 1; n <= out.scanned_through; ++n) {
    if (is_S_unit(orbit.points[static_cast<std::size_t>(n)], S)) out.hits.push_back(n);
  }
  return out;
}

std::pair<int, int> saturate_exponents(int r, int s) {
  if (r == 0 || s == 0) throw std::invalid_argument("exponents must be nonzero");
  const int g = std::gcd(r, s);
  r /= g;
  s /= g;
  if (r < 0) {
    r = -r;
    s = -s;
  }
  return {r, s};
}

DependenceResult dependence_search(const RationalMap& phi, const DependenceQuery& q) {
  require_affine(q.alpha);
  if (q.n_max < 1 || q.k_max < 1 || q.r_max < 1 || q.s_max < 1) {
    throw std::invalid_argument("search bounds must be positive");
  }
  const int d = phi.degree();
  DependenceResult out;
  if (d >= 2) {
    out.alpha_wandering = wandering_status(phi, q.alpha, q.max_height);
    try {
      ClassifyOptions opts;
      opts.max_height = q.max_height;
      const auto c = classify_preperiodic(phi, ProjectivePoint::affine(FieldElement()), opts);
      out.zero_periodic = std::holds_alternative<Preperiodic>(c) && std::get<Preperiodic>(c).tail == 0;
    } catch (const DomainError&) {
      out.zero_periodic.reset();
    }
  }
  const OrbitPrefix orbit = orbit_prefix(phi, q.alpha, q.n_max + q.k_max, q.max_height);
  const int last = static_cast<int>(orbit.points.size()) - 1;
  if (last < q.n_max + q.k_max) {
    out.notes.push_back("height budget reached at iterate " + std::to_string(last) +
                        "; larger n + k not searched");
  }
  const bool inf_in_S = q.S.contains_infinity();
  for (int n = 1; n <= q.n_max; ++n) {
    for (int k = 0; k <= q.k_max; ++k) {
      if (n + k > last) continue;
      const ProjectivePoint& x = orbit.points[static_cast<std::size_t>(n + k)];
      const ProjectivePoint& y = orbit.points[static_cast<std::size_t>(k)];
      if (x.is_infinity() || y.is_infinity() || x.x0().is_zero() || y.x0().is_zero()) {
        out.notes.push_back("(n, k) = (" + std::to_string(n) + ", " + std::to_string(k) +
                            ") skipped: iterate at 0 or infinity");
        continue;
      }
      for (int r = 1; r <= q.r_max; ++r) {
        for (int s = -q.s_max; s <= q.s_max; ++s) {
          if (s == 0 || std::gcd(r, s) != 1) continue;
          const int a = std::abs(s);
          // u = x^r / y^s = num / den.
          const Polynomial& yn = s > 0 ? y.x1() : y.x0();
          const Polynomial& yd = s > 0 ? y.x0() : y.x1();
          const Part num = part_pow(x.x0(), q.S, r) * part_pow(yn, q.S, a);
          const Part den = part_pow(x.x1(), q.S, r) * part_pow(yd, q.S, a);
          if (!inf_in_S && num.degree != den.degree) continue;
          if (!proportional(num.stripped, den.stripped)) continue;
          DependenceSolution sol;
          sol.n = n;
          sol.k = k;
          sol.r = r;
          sol.s = s;
          sol.u = FieldElement(x.x0().pow(static_cast<unsigned>(r)) * yn.pow(static_cast<unsigned>(a)),
                               x.x1().pow(static_cast<unsigned>(r)) * yd.pow(static_cast<unsigned>(a)));
          sol.rho = std::log(static_cast<double>(a) / r) / std::log(static_cast<double>(d)) + 1;
          Integer lhs;
          mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(n - 1));
          sol.n_at_least_rho = lhs * r >= a;
          out.solutions.push_back(std::move(sol));
        }
      }
    }
  }
  return out;
}

PlaceSet polynomial_bad_places(const RationalMap& phi) {
  if (!phi.is_polynomial()) throw DomainError("map is not a polynomial in z");
  const Polynomial& g = phi.G().coefficient(0);
  const int d = phi.degree();
  std::vector<FieldElement> c;
  for (int i = 0; i <= d; ++i) c.emplace_back(phi.F().coefficient(static_cast<std::size_t>(i)), g);
  PlaceSet candidates = places_dividing(g) | places_dividing(phi.F().leading());
  candidates.insert(Place::infinity());
  PlaceSet out = bad_reduction_places(phi);
  for (const auto& v : candidates) {
    bool bad = ord(c.back(), v) > 0;
    for (const auto& ci : c) {
      if (!ci.is_zero() && ord(ci, v) < 0) bad = true;
    }
    if (bad) out.insert(v);
  }
  return out;
}

CaseLabel poly_case_classifier(const RationalMap& phi, const ProjectivePoint& alpha,
                               const DependenceSolution& solution, const PlaceSet& S) {
  if (!phi.is_polynomial()) throw DomainError("classifier needs a polynomial map");
  require_affine(alpha);
  const auto [r, s] = saturate_exponents(solution.r, solution.s);
  CaseLabel out;
  out.s_phi = S | polynomial_bad_places(phi);
  out.alpha_integral = is_S_integral(alpha, out.s_phi);
  const int d = phi.degree();
  if (!out.alpha_integral) {
    out.label = "B";
    for (const auto& v : places_dividing(alpha.x1())) {
      if (!out.s_phi.contains(v)) {
        out.witness = v;
        break;
      }
    }
    if (!out.witness) out.witness = Place::infinity();
    const FieldElement a = alpha.to_affine();
    const int base = ord(a, *out.witness);
    bool ok = true;
    Integer dj = 1;
    for (const auto& P : iterate(phi, alpha, solution.n + solution.k)) {
      ok = ok && !P.is_infinity() && Integer(ord(P.to_affine(), *out.witness)) == dj * base;
      dj *= d;
    }
    out.valuation_check = ok;
    Integer dn;
    mpz_ui_pow_ui(dn.get_mpz_t(), static_cast<unsigned long>(d),
                  static_cast<unsigned long>(solution.n));
    out.shape_check = r == 1 && Integer(s) == dn;
    return out;
  }
  if (s < 0) {
    out.label = "A.1";
    const auto orbit = iterate(phi, alpha, solution.n + solution.k);
    out.units_check = is_S_unit(orbit[static_cast<std::size_t>(solution.n + solution.k)], out.s_phi) &&
                      is_S_unit(orbit[static_cast<std::size_t>(solution.k)], out.s_phi);
  } else if (s >= 2) {
    out.label = "A.2";
  } else if (r >= 2) {
    out.label = "A.3";
  } else {
    out.label = "A.4";
  }
  return out;
}

ZeroScan split_multilinear_zero_scan(const SplitMultilinearForm& form, const RationalMap& phi,
                                     const ProjectivePoint& alpha, int N, int max_height,
                                     long max_tuples) {
  require_affine(alpha);
  if (N < 0) throw std::invalid_argument("N must be nonnegative");
  const int k = form.arity;
  if (k < 1) throw std::invalid_argument("form arity must be positive");
  double count = 1;
  for (int i = 0; i < k; ++i) count = count * (N + 1 - i) / (i + 1);
  if (count > static_cast<double>(max_tuples)) {
    throw DomainError("zero scan box too large (" + std::to_string(static_cast<long>(count)) +
                      " tuples)");
  }
  // Clear the denominators of the coefficients.
  Polynomial L(1);
  for (const auto& c : form.coefficients) L = L * exact_quotient(c.den(), gcd(L, c.den()));
  L = L * exact_quotient(form.constant.den(), gcd(L, form.constant.den()));
  const auto scaled = [&](const FieldElement& c) { return c.num() * exact_quotient(L, c.den()); };
  std::vector<Polynomial> a;
  for (const auto& c : form.coefficients) a.push_back(scaled(c));
  const Polynomial a0 = scaled(form.constant);

  const OrbitPrefix orbit = orbit_prefix(phi, alpha, N, max_height);
  ZeroScan out;
  out.scanned_through = static_cast<int>(orbit.points.size()) - 1;
  out.truncated = out.scanned_through < N;
  if (out.scanned_through + 1 < k) return out;

  std::vector<int> tuple(static_cast<std::size_t>(k));
  const auto test = [&]() {
    ++out.tuples_checked;
    for (int n : tuple) {
      if (orbit.points[static_cast<std::size_t>(n)].is_infinity()) {
        ++out.tuples_skipped;
        return;
      }
    }
    const auto num = [&](int j) -> const Polynomial& {
      return orbit.points[static_cast<std::size_t>(tuple[static_cast<std::size_t>(j - 1)])].x0();
    };
    const auto den = [&](int j) -> const Polynomial& {
      return orbit.points[static_cast<std::size_t>(tuple[static_cast<std::size_t>(j - 1)])].x1();
    };
    // Multiply through by prod_j den(j).
    Polynomial total = a0;
    for (int j = 1; j <= k; ++j) total = total * den(j);
    for (std::size_t i = 0; i < form.blocks.size(); ++i) {
      Polynomial term = a[i];
      std::vector<bool> in_block(static_cast<std::size_t>(k) + 1, false);
      for (int j : form.blocks[i]) in_block[static_cast<std::size_t>(j)] = true;
      for (int j = 1; j <= k; ++j) term = term * (in_block[static_cast<std::size_t>(j)] ? num(j) : den(j));
      total += term;
    }
    if (total.is_zero()) out.tuples.push_back(tuple);
  };
  // Strictly decreasing tuples, tested in lexicographic order.
  std::vector<std::vector<int>> all;
  std::function<void(int, int)> gen = [&](int pos, int upper) {
    if (pos == k) {
      all.push_back(tuple);
      return;
    }
    for (int n = k - 1 - pos; n <= upper; ++n) {
      tuple[static_cast<std::size_t>(pos)] = n;
      gen(pos + 1, n - 1);
    }
  };
  gen(0, out.scanned_through);
  std::sort(all.begin(), all.end());
  for (const auto& t : all) {
    tuple = t;
    test();
  }
  return out;
}

}  // namespace ffdyn
