#include "ffdyn/map_algebra.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <string>

#include "ffdyn/errors.hpp"
#include "ffdyn/modular.hpp"

namespace ffdyn {

// ---------------------------------------------------------------------------
// Points

ProjectivePoint::ProjectivePoint(const Polynomial& x0, const Polynomial& x1) {
  if (x0.is_zero() && x1.is_zero()) throw std::invalid_argument("[0:0] is not a point");
  Polynomial g = gcd(x0, x1);
  if (g.degree() > 0) {
    *this = from_coprime(exact_quotient(x0, g), exact_quotient(x1, g));
  } else {
    *this = from_coprime(x0, x1);
  }
}

ProjectivePoint ProjectivePoint::from_coprime(Polynomial x0, Polynomial x1) {
  ProjectivePoint P;
  if (x1.is_zero()) {
    if (x0.is_zero()) throw std::invalid_argument("[0:0] is not a point");
    P.x0_ = Polynomial(1);
    return P;
  }
  if (!x1.is_monic()) {
    const Rational s = 1 / x1.leading();
    x0 *= s;
    x1 *= s;
  }
  P.x0_ = std::move(x0);
  P.x1_ = std::move(x1);
  return P;
}

ProjectivePoint ProjectivePoint::affine(const FieldElement& x) {
  return from_coprime(x.num(), x.den());
}

FieldElement ProjectivePoint::to_affine() const {
  if (is_infinity()) throw std::domain_error("point at infinity has no affine coordinate");
  return FieldElement(x0_, x1_);
}

std::strong_ordering operator<=>(const ProjectivePoint& a, const ProjectivePoint& b) {
  if (auto c = a.x1_ <=> b.x1_; c != 0) return c;
  return a.x0_ <=> b.x0_;
}

// ---------------------------------------------------------------------------
// Resultants

namespace {

// Determinant by fraction-free elimination (exact over Q).
Rational determinant(std::vector<std::vector<Rational>> M) {
  const std::size_t n = M.size();
  Rational prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && M[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(M[k], M[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
      }
    }
    prev = M[k][k];
  }
  return sign * M[n - 1][n - 1];
}

// Res_{d,d} of the degree-d forms with coefficients f, g (lowest first).
Rational sylvester(const std::vector<Rational>& f, const std::vector<Rational>& g, int d) {
  const auto n = static_cast<std::size_t>(2 * d);
  std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n));
  const auto du = static_cast<std::size_t>(d);
  for (std::size_t r = 0; r < du; ++r) {
    for (std::size_t i = 0; i <= du; ++i) {
      M[r][r + i] = f[du - i];
      M[du + r][r + i] = g[du - i];
    }
  }
  return determinant(std::move(M));
}

// Res_{d,d}(F, G) in k[t]: Sylvester determinants at integer values of t,
// then Newton interpolation (the degree is at most 2d * max t-degree).
Polynomial homogeneous_resultant(const ZPolynomial& F, const ZPolynomial& G, int d) {
  if (d == 0) return Polynomial(1);
  const int h = std::max(F.t_degree(), G.t_degree());
  const int npoints = 2 * d * std::max(h, 0) + 1;
  std::vector<Rational> xs, ys;
  for (int i = 0; i < npoints; ++i) {
    const Rational x = (i % 2 == 0) ? Rational(i / 2) : Rational(-(i + 1) / 2);
    std::vector<Rational> f(static_cast<std::size_t>(d) + 1), g(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) {
      f[static_cast<std::size_t>(k)] = F.coefficient(static_cast<std::size_t>(k)).evaluate(x);
      g[static_cast<std::size_t>(k)] = G.coefficient(static_cast<std::size_t>(k)).evaluate(x);
    }
    xs.push_back(x);
    ys.push_back(sylvester(f, g, d));
  }
  // Divided differences, then expansion of the Newton form.
  std::vector<Rational> c = ys;
  for (std::size_t j = 1; j < c.size(); ++j) {
    for (std::size_t i = c.size() - 1; i >= j; --i) c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
  }
  Polynomial out;
  for (std::size_t i = c.size(); i-- > 0;) {
    out = out * Polynomial(std::vector<Rational>{-xs[i], 1}) + Polynomial(c[i]);
  }
  return out;
}

ZPolynomial divide_coefficients(const ZPolynomial& p, const Polynomial& c) {
  std::vector<Polynomial> out;
  for (const auto& a : p.coefficients()) out.push_back(exact_quotient(a, c));
  return ZPolynomial(std::move(out));
}

ZPolynomial scale(const ZPolynomial& p, const Rational& s) {
  std::vector<Polynomial> out;
  for (const auto& a : p.coefficients()) out.push_back(a * s);
  return ZPolynomial(std::move(out));
}

}  // namespace

// ---------------------------------------------------------------------------
// Maps

struct RationalMap::Cache {
  std::once_flag once;
  Polynomial resultant;
};

RationalMap::RationalMap(ZPolynomial F, ZPolynomial G)
    : F_(std::move(F)), G_(std::move(G)), cache_(std::make_shared<Cache>()) {
  d_ = std::max(F_.degree(), G_.degree());
}

const Polynomial& RationalMap::resultant() const {
  std::call_once(cache_->once,
                 [this] { cache_->resultant = homogeneous_resultant(F_, G_, d_); });
  return cache_->resultant;
}

RationalMap RationalMap::identity() { return normalize_coprime(ZPolynomial::z(), Polynomial(1)); }

RationalMap normalize_coprime(ZPolynomial F, ZPolynomial G) {
  if (F.is_zero() && G.is_zero()) {
    throw std::invalid_argument("map numerator and denominator are both zero");
  }
  const Polynomial c = gcd(content(F), content(G));
  if (c.degree() > 0) {
    F = divide_coefficients(F, c);
    G = divide_coefficients(G, c);
  }
  Integer den_lcm = 1;
  Integer num_gcd = 0;
  for (const ZPolynomial* p : {&F, &G}) {
    for (const auto& a : p->coefficients()) {
      for (const auto& q : a.coefficients()) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num_mpz_t());
      }
    }
  }
  // Every coefficient times den_lcm / num_gcd is integral with coprime entries.
  Rational s(den_lcm, num_gcd);
  s.canonicalize();
  const ZPolynomial& lead_poly = F.is_zero() ? G : F;
  if (lead_poly.leading().leading() < 0) s = -s;
  if (s != 1) {
    F = scale(F, s);
    G = scale(G, s);
  }
  return RationalMap(std::move(F), std::move(G));
}

RationalMap normalize_map(const ZPolynomial& F, const ZPolynomial& G) {
  if (F.is_zero() && G.is_zero()) {
    throw std::invalid_argument("map numerator and denominator are both zero");
  }
  if (G.is_zero()) return normalize_coprime(Polynomial(1), ZPolynomial());
  if (F.is_zero()) return normalize_coprime(ZPolynomial(), Polynomial(1));
  const ZPolynomial g = gcd_over_K(F, G);
  if (g.degree() > 0) return normalize_coprime(exact_quotient(F, g), exact_quotient(G, g));
  return normalize_coprime(F, G);
}

namespace {

// The same projective point with coprime integer coefficients.
std::pair<Polynomial, Polynomial> integral_coordinates(const Polynomial& x0, const Polynomial& x1) {
  Integer den = 1, content = 0;
  for (const Polynomial* p : {&x0, &x1}) {
    for (const auto& c : p->coefficients()) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num_mpz_t());
    }
  }
  if (den == 1 && content == 1) return {x0, x1};
  const auto scale = [&](const Polynomial& p) {
    std::vector<Integer> v;
    v.reserve(p.coefficients().size());
    for (const auto& c : p.coefficients()) {
      Integer x = den / c.get_den();
      x *= c.get_num();
      v.push_back(x / content);
    }
    return from_integers(v);
  };
  return {scale(x0), scale(x1)};
}

}  // namespace

ProjectivePoint apply(const RationalMap& phi, const ProjectivePoint& P) {
  const int d = phi.degree();
  const auto [x0, x1] = integral_coordinates(P.x0(), P.x1());
  Polynomial a = evaluate_homogeneous(phi.F(), d, x0, x1);
  Polynomial b = evaluate_homogeneous(phi.G(), d, x0, x1);
  // Any common factor of a and b divides the resultant.
  const Polynomial& R = phi.resultant();
  if (R.degree() > 0) {
    Polynomial g = gcd(R, a.is_zero() ? a : a % R);
    if (g.degree() > 0) g = gcd(g, b.is_zero() ? b : b % g);
    if (g.degree() > 0) {
      a = exact_quotient(a, g);
      b = exact_quotient(b, g);
    }
  }
  return ProjectivePoint::from_coprime(std::move(a), std::move(b));
}

std::vector<ProjectivePoint> iterate(const RationalMap& phi, const ProjectivePoint& P, int n) {
  if (n < 0) throw std::invalid_argument("iteration count must be nonnegative");
  std::vector<ProjectivePoint> out{P};
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) out.push_back(apply(phi, out.back()));
  return out;
}

OrbitPrefix orbit_prefix(const RationalMap& phi, const ProjectivePoint& P, int n,
                         int max_height) {
  if (n < 0) throw std::invalid_argument("iteration count must be nonnegative");
  const int hphi = std::max(phi.F().t_degree(), phi.G().t_degree());
  OrbitPrefix out;
  out.points.push_back(P);
  for (int i = 0; i < n; ++i) {
    const ProjectivePoint& x = out.points.back();
    if (static_cast<long>(phi.degree()) * x.height() + hphi > max_height) {
      out.truncated = true;
      break;
    }
    out.points.push_back(apply(phi, x));
  }
  return out;
}

namespace {

// sum_i f_i P^i Q^(n-i).
ZPolynomial compose_form(const ZPolynomial& f, int n, const std::vector<ZPolynomial>& Ppow,
                         const std::vector<ZPolynomial>& Qpow) {
  ZPolynomial out;
  for (int i = 0; i <= f.degree(); ++i) {
    const Polynomial& c = f.coefficient(static_cast<std::size_t>(i));
    if (c.is_zero()) continue;
    out += c * (Ppow[static_cast<std::size_t>(i)] * Qpow[static_cast<std::size_t>(n - i)]);
  }
  return out;
}

std::vector<ZPolynomial> powers(const ZPolynomial& p, int n) {
  std::vector<ZPolynomial> out{ZPolynomial(Polynomial(1))};
  for (int i = 1; i <= n; ++i) out.push_back(out.back() * p);
  return out;
}

}  // namespace

RationalMap compose(const RationalMap& phi, const RationalMap& psi) {
  const int d = phi.degree();
  const auto Ppow = powers(psi.F(), d);
  const auto Qpow = powers(psi.G(), d);
  // Coprime inputs give coprime homogeneous compositions.
  return normalize_coprime(compose_form(phi.F(), d, Ppow, Qpow),
                           compose_form(phi.G(), d, Ppow, Qpow));
}

RationalMap power(const RationalMap& phi, int n) {
  if (n < 0) throw std::invalid_argument("power must be nonnegative");
  if (n == 0) return RationalMap::identity();
  RationalMap acc = phi;
  for (int i = 1; i < n; ++i) acc = compose(acc, phi);
  return acc;
}

PlaceSet bad_reduction_places(const RationalMap& phi) {
  return places_dividing(phi.resultant());
}

namespace {

// True when every irreducible factor of p is a finite place of S.
bool supported_in(Polynomial p, const PlaceSet& S) {
  for (const auto& v : S) {
    if (p.degree() <= 0) break;
    if (!v.is_infinite()) p = strip_common_factors(p, v.polynomial());
  }
  return p.degree() <= 0;
}

}  // namespace

bool is_S_integral(const ProjectivePoint& P, const PlaceSet& S) {
  if (P.is_infinity()) return false;
  if (!S.contains_infinity() && P.x0().degree() > P.x1().degree()) return false;
  return supported_in(P.x1(), S);
}

bool is_S_unit(const ProjectivePoint& P, const PlaceSet& S) {
  if (P.is_infinity() || P.x0().is_zero()) return false;
  if (!S.contains_infinity() && P.x0().degree() != P.x1().degree()) return false;
  return supported_in(P.x0(), S) && supported_in(P.x1(), S);
}

ZPolynomial fiber_polynomial(const RationalMap& phi, const ProjectivePoint& A) {
  return A.x1() * phi.F() - A.x0() * phi.G();
}

// ---------------------------------------------------------------------------
// Fibers and ramification

int FiberDecomposition::total_multiplicity() const {
  int total = infinity_multiplicity;
  for (const auto& f : factors) total += f.factor.degree() * f.multiplicity;
  return total;
}

int FiberDecomposition::max_multiplicity() const {
  int best = infinity_multiplicity;
  for (const auto& f : factors) best = std::max(best, f.multiplicity);
  return best;
}

bool FiberDecomposition::is_split() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](const ZFactorPower& f) { return f.factor.degree() == 1; });
}

std::vector<std::pair<ProjectivePoint, int>> FiberDecomposition::points() const {
  std::vector<std::pair<ProjectivePoint, int>> out;
  for (const auto& f : factors) {
    if (f.factor.degree() != 1) throw DomainError("fiber point requires extension");
    out.emplace_back(ProjectivePoint(-f.factor.coefficient(0), f.factor.coefficient(1)),
                     f.multiplicity);
  }
  if (infinity_multiplicity > 0) {
    out.emplace_back(ProjectivePoint::infinity(), infinity_multiplicity);
  }
  return out;
}

FiberDecomposition fiber(const RationalMap& phi, const ProjectivePoint& A) {
  const ZPolynomial Phi = fiber_polynomial(phi, A);
  FiberDecomposition out;
  out.infinity_multiplicity = phi.degree() - Phi.degree();
  if (Phi.degree() < 1) return out;
  for (const auto& part : squarefree_decomposition_over_K(Phi)) {
    for (auto& f : irreducible_factors_over_K(part.factor)) {
      out.factors.push_back({std::move(f), part.multiplicity});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const ZFactorPower& a, const ZFactorPower& b) { return a.factor < b.factor; });
  return out;
}

int ramification_index(const RationalMap& phi, const ProjectivePoint& P) {
  ZPolynomial Phi = fiber_polynomial(phi, apply(phi, P));
  if (P.is_infinity()) return phi.degree() - Phi.degree();
  // Order of vanishing at P: the first derivative not vanishing there.
  int e = 0;
  while (Phi.degree() >= 0 && evaluate_homogeneous(Phi, Phi.degree(), P.x0(), P.x1()).is_zero()) {
    Phi = Phi.derivative();
    ++e;
  }
  return e;
}

namespace {

constexpr std::uint64_t kPrime = 2147483647ULL;

bool eval_mod(const Polynomial& c, std::uint64_t t0, const modular::Field& Fp,
              std::uint64_t* out) {
  std::uint64_t acc = 0;
  Integer r;
  for (std::size_t k = c.coefficients().size(); k-- > 0;) {
    const Rational& q = c.coefficients()[k];
    mpz_fdiv_r_ui(r.get_mpz_t(), q.get_den_mpz_t(), Fp.p);
    if (r == 0) return false;
    const std::uint64_t den = r.get_ui();
    mpz_fdiv_r_ui(r.get_mpz_t(), q.get_num_mpz_t(), Fp.p);
    acc = Fp.add(Fp.mul(acc, t0), Fp.mul(r.get_ui(), Fp.inv(den)));
  }
  *out = acc;
  return true;
}

bool reduce_form(const ZPolynomial& p, std::uint64_t t0, const modular::Field& Fp,
                 modular::ModPoly* out) {
  out->assign(p.coefficients().size(), 0);
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
    if (!eval_mod(p.coefficients()[i], t0, Fp, &(*out)[i])) return false;
  }
  modular::Field::trim(*out);
  return true;
}

// sum_i f_i U^i V^(d-i) over F_p.
modular::ModPoly compose_mod(const modular::Field& Fp, const modular::ModPoly& f, int d,
                             const modular::ModPoly& U, const modular::ModPoly& V) {
  std::vector<modular::ModPoly> Up{{1}}, Vp{{1}};
  for (int i = 1; i <= d; ++i) {
    Up.push_back(Fp.mul(Up.back(), U));
    Vp.push_back(Fp.mul(Vp.back(), V));
  }
  modular::ModPoly out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    out = Fp.add(out, Fp.scale(Fp.mul(Up[i], Vp[static_cast<std::size_t>(d) - i]), f[i]));
  }
  return out;
}

// Upper bound for max_fiber_ram from the reduction of the fiber polynomial of
// phi^m modulo (p, t - t0): every multiplicity over K survives reduction (roots
// may only collide or escape to infinity). Returns 0 if no usable t0 was found.
int reduced_ram_upper_bound(const RationalMap& phi, int m, const ProjectivePoint& A) {
  const modular::Field Fp{kPrime};
  const int d = phi.degree();
  long D = 1;
  for (int i = 0; i < m; ++i) D *= d;
  int best = 0;
  for (std::uint64_t t0 = 1; t0 <= 6; ++t0) {
    modular::ModPoly f, g;
    std::uint64_t a0 = 0, a1 = 0;
    if (!reduce_form(phi.F(), t0, Fp, &f) || !reduce_form(phi.G(), t0, Fp, &g)) continue;
    if (!eval_mod(A.x0(), t0, Fp, &a0) || !eval_mod(A.x1(), t0, Fp, &a1)) continue;
    if (a0 == 0 && a1 == 0) continue;
    modular::ModPoly U = f, V = g;
    for (int j = 1; j < m; ++j) {
      modular::ModPoly U2 = compose_mod(Fp, f, d, U, V);
      V = compose_mod(Fp, g, d, U, V);
      U = std::move(U2);
    }
    const modular::ModPoly Phi = Fp.sub(Fp.scale(U, a1), Fp.scale(V, a0));
    if (Phi.empty()) continue;
    int bound = static_cast<int>(D - modular::Field::deg(Phi));
    // The number of gcd(f, f') steps to reach a constant is the maximum
    // multiplicity (deg Phi < p).
    modular::ModPoly cur = Fp.monic(Phi);
    int mult = 0;
    while (modular::Field::deg(cur) > 0) {
      cur = Fp.monic(Fp.gcd(cur, Fp.derivative(cur)));
      ++mult;
    }
    bound = std::max(bound, mult);
    if (best == 0 || bound < best) best = bound;
    if (best == 1) break;
  }
  return best;
}

int exact_fiber_ram(const RationalMap& phi, int m, const ProjectivePoint& A) {
  const RationalMap psi = power(phi, m);
  const ZPolynomial Phi = fiber_polynomial(psi, A);
  int best = psi.degree() - Phi.degree();
  if (Phi.degree() >= 1) {
    for (const auto& part : squarefree_decomposition_over_K(Phi)) {
      best = std::max(best, part.multiplicity);
    }
  }
  return best;
}

}  // namespace

int max_fiber_ram(const RationalMap& phi, int m, const ProjectivePoint& A) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (reduced_ram_upper_bound(phi, m, A) == 1) return 1;
  return exact_fiber_ram(phi, m, A);
}

bool is_exceptional(const RationalMap& phi, const ProjectivePoint& A) {
  const RationalMap psi = power(phi, 2);
  const ZPolynomial Phi = fiber_polynomial(psi, A);
  if (A.is_infinity()) return Phi.degree() == 0;
  const int D = psi.degree();
  if (Phi.degree() != D) return false;
  const ZPolynomial L(std::vector<Polynomial>{-A.x0(), A.x1()});
  return Phi * L.leading().pow(static_cast<unsigned>(D)) ==
         L.pow(static_cast<unsigned>(D)) * Phi.leading();
}

int choose_m(const RationalMap& phi, const ProjectivePoint& A, const Rational& epsilon,
             int cap) {
  if (epsilon <= 0 || epsilon > 1) throw std::invalid_argument("epsilon must lie in (0,1]");
  if (phi.degree() < 2) throw DomainError("choose_m needs a map of degree at least 2");
  if (is_exceptional(phi, A)) throw DomainError("exceptional target");
  Rational dm = 1;
  for (int m = 1; m <= cap; ++m) {
    dm *= phi.degree();
    const Rational threshold = epsilon * dm;
    const int upper = reduced_ram_upper_bound(phi, m, A);
    if (upper > 0 && 5 * upper <= threshold) return m;
    if (5 * Rational(exact_fiber_ram(phi, m, A)) <= threshold) return m;
  }
  throw DomainError("choose_m: search cap " + std::to_string(cap) + " exceeded");
}

// ---------------------------------------------------------------------------
// Structure

namespace {

int distinct_root_count(const ZPolynomial& p) {
  if (p.degree() < 1) return 0;
  int count = 0;
  for (const auto& part : squarefree_decomposition_over_K(p)) count += part.factor.degree();
  return count;
}

// The centre g when p == c (z - g)^k with deg p = k.
std::optional<FieldElement> pure_power_centre(const ZPolynomial& p, int k) {
  if (k < 1 || p.degree() != k) return std::nullopt;
  const Polynomial lead = p.leading() * Rational(k);
  const Polynomial& next = p.coefficient(static_cast<std::size_t>(k - 1));
  const ZPolynomial L(std::vector<Polynomial>{next, lead});
  if (!(p * lead.pow(static_cast<unsigned>(k)) == L.pow(static_cast<unsigned>(k)) * p.leading())) {
    return std::nullopt;
  }
  return FieldElement(-next, lead);
}

}  // namespace

int preimage_count_zero_infty(const RationalMap& phi) {
  return distinct_root_count(phi.F()) + distinct_root_count(phi.G()) +
         (phi.F().degree() != phi.G().degree() ? 1 : 0);
}

SpecialFormResult special_form_classify(const RationalMap& phi) {
  const int d = phi.degree();
  SpecialFormResult out;
  if (phi.G().degree() == 0) {
    if (auto g = pure_power_centre(phi.F(), d)) {
      out.kind = g->is_zero() ? SpecialForm::MonomialForm : SpecialForm::PowerForm;
      out.sign = 1;
      out.g = g;
    }
    return out;
  }
  if (phi.F().degree() == 0) {
    if (auto g = pure_power_centre(phi.G(), d)) {
      out.kind = g->is_zero() ? SpecialForm::MonomialForm : SpecialForm::PowerForm;
      out.sign = -1;
      out.g = g;
    }
    return out;
  }
  auto g = pure_power_centre(phi.F(), d);
  auto h = pure_power_centre(phi.G(), d);
  if (g && h && !(*g == *h)) {
    out.kind = SpecialForm::QuotientForm;
    out.g = g;
    out.h = h;
  }
  return out;
}

bool is_polynomial_iterate(const RationalMap& phi, int j) {
  if (j < 1) throw std::invalid_argument("iterate index must be positive");
  return power(phi, j).G().degree() == 0;
}

IsotrivialityResult isotriviality_heuristic(const RationalMap& phi, int search_degree_bound) {
  IsotrivialityResult out;
  if (phi.F().is_constant_in_t() && phi.G().is_constant_in_t()) {
    out.kind = Isotriviality::ConstantCoefficients;
    return out;
  }
  std::vector<Polynomial> entries{Polynomial()};
  for (int j = 0; j <= search_degree_bound; ++j) {
    const Polynomial m = Polynomial::monomial(1, static_cast<std::size_t>(j));
    entries.push_back(m);
    entries.push_back(-m);
  }
  const ZPolynomial z = ZPolynomial::z();
  for (const auto& a : entries) {
    for (const auto& b : entries) {
      for (const auto& c : entries) {
        for (const auto& e : entries) {
          if ((a * e - b * c).is_zero()) continue;
          const RationalMap M = normalize_coprime(a * z + ZPolynomial(b), c * z + ZPolynomial(e));
          const RationalMap inverse =
              normalize_coprime(e * z - ZPolynomial(b), ZPolynomial(a) - c * z);
          const RationalMap conj = compose(inverse, compose(phi, M));
          if (conj.F().is_constant_in_t() && conj.G().is_constant_in_t()) {
            out.kind = Isotriviality::IsotrivialWitness;
            out.conjugacy = M;
            out.conjugate = conj;
            return out;
          }
        }
      }
    }
  }
  return out;
}

int ramification_divisor_degree(const RationalMap& phi) {
  const int d = phi.degree();
  const ZPolynomial& F = phi.F();
  const ZPolynomial& G = phi.G();
  const ZPolynomial W = F.derivative() * G - F * G.derivative();
  const ZPolynomial Fr = F.reversed(d);
  const ZPolynomial Gr = G.reversed(d);
  const ZPolynomial Wr = Fr.derivative() * Gr - Fr * Gr.derivative();
  int ord0 = 0;
  while (Wr.coefficient(static_cast<std::size_t>(ord0)).is_zero()) ++ord0;
  return W.degree() + ord0;
}

}  // namespace ffdyn
