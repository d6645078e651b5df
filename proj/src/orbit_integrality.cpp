#include "ffdyn/orbit_integrality.hpp"

#include <algorithm>
#include <stdexcept>

#include "ffdyn/errors.hpp"

namespace ffdyn {

namespace {

Integer ipow(int d, int k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
  return r;
}

// Largest k with d^k <= r, for r >= 1.
int floor_log(const Rational& r, int d) {
  int k = 0;
  while (Rational(ipow(d, k + 1)) <= r) ++k;
  return k;
}

// Smallest k with d^k >= r, for r >= 1.
int ceil_log(const Rational& r, int d) {
  int k = 0;
  while (Rational(ipow(d, k)) < r) ++k;
  return k;
}

void check_epsilon(const Rational& epsilon) {
  if (epsilon <= 0 || epsilon > 1) throw std::invalid_argument("epsilon must lie in (0,1]");
}

// Removes from p every irreducible factor belonging to S or dividing r.
Polynomial strip_places(Polynomial p, const PlaceSet& S, const Polynomial& r) {
  for (const auto& v : S) {
    if (!v.is_infinite()) p = strip_common_factors(p, v.polynomial());
  }
  if (!r.is_zero()) p = strip_common_factors(p, r);
  return p;
}

}  // namespace

const char* to_string(Membership m) {
  switch (m) {
    case Membership::In: return "in";
    case Membership::Out: return "out";
    case Membership::Undecided: return "undecided";
  }
  return "?";
}

OrbitScanReport gamma_set(const RationalMap& phi, const PlaceSet& S, const ProjectivePoint& A,
                          const ProjectivePoint& P, const Rational& epsilon, int N, int depth,
                          const GammaSetOptions& options) {
  check_epsilon(epsilon);
  if (N < 1) throw std::invalid_argument("N must be positive");
  if (depth < 1) throw std::invalid_argument("depth must be positive");
  if (phi.degree() < 2) throw DomainError("gamma_set needs degree at least 2");
  if (is_exceptional(phi, A)) throw DomainError("exceptional target");
  if (!options.assume_wandering) {
    ClassifyOptions copts;
    copts.max_height = options.max_height;
    if (std::holds_alternative<Preperiodic>(classify_preperiodic(phi, P, copts))) {
      throw DomainError("point is preperiodic; a wandering point is required");
    }
  }
  const OrbitPrefix orbit = orbit_prefix(phi, P, N + depth, options.max_height);
  const int last = std::min(N, static_cast<int>(orbit.points.size()) - 1);

  OrbitScanReport out;
  out.epsilon = epsilon;
  out.N = N;
  out.depth = depth;
  out.truncated = last < N;
  for (int n = 0; n <= last; ++n) {
    OrbitRecord r;
    r.n = n;
    r.point = orbit.points[static_cast<std::size_t>(n)];
    r.height = r.point.height();
    r.canonical = canonical_height_in_orbit(phi, orbit, n, depth);
    r.lambda = lambda_sum(r.point, A, S);
    if (r.lambda.is_infinite() || Rational(r.lambda.value()) >= epsilon * r.canonical.hi) {
      r.membership = Membership::In;
    } else if (Rational(r.lambda.value()) < epsilon * r.canonical.lo) {
      r.membership = Membership::Out;
    } else {
      r.membership = Membership::Undecided;
    }
    r.s_integer = is_S_integral(r.point, S);
    switch (r.membership) {
      case Membership::In:
        ++out.in_count;
        out.max_hit = n;
        break;
      case Membership::Out: ++out.out_count; break;
      case Membership::Undecided: ++out.undecided_count; break;
    }
    out.records.push_back(std::move(r));
  }
  return out;
}

IntegralCount count_S_integral(const RationalMap& phi, const ProjectivePoint& P, const PlaceSet& S,
                               int N, int max_height) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  IntegralCount out;
  if (phi.degree() >= 2) {
    try {
      ClassifyOptions copts;
      copts.max_height = max_height;
      if (std::holds_alternative<Preperiodic>(classify_preperiodic(phi, P, copts))) {
        out.warnings.emplace_back("point is preperiodic");
      }
    } catch (const DomainError&) {
      out.warnings.emplace_back("wandering status undecided");
    }
  }
  if (is_polynomial_iterate(phi, 2)) {
    out.warnings.emplace_back("phi^2 is a polynomial; finitely many hits are not expected");
  }

  const OrbitPrefix orbit = orbit_prefix(phi, P, N, max_height);
  const int last = static_cast<int>(orbit.points.size()) - 1;
  out.exact_through = last;
  const auto integral = [&](const ProjectivePoint& x) { return is_S_integral(x, S); };
  for (int n = 1; n <= last; ++n) {
    if (integral(orbit.points[static_cast<std::size_t>(n)])) out.hits.push_back(n);
  }
  if (last < N) {
    const ProjectivePoint& x = orbit.points.back();
    const ProjectivePoint inf = ProjectivePoint::infinity();
    bool poles = false;
    if (apply(phi, inf) == inf) {
      // A pole at a place of good reduction outside S is carried to every later
      // iterate because phi fixes infinity.
      poles = x.is_infinity() || strip_places(x.x1(), S, phi.resultant()).degree() > 0;
    }
    bool keeps_integral = false;
    if (!poles && phi.is_polynomial() && integral(x)) {
      const Polynomial& g = phi.G().coefficient(0);
      keeps_integral = is_S_unit(FieldElement(g), S);
      for (const auto& c : phi.F().coefficients()) {
        if (!keeps_integral) break;
        keeps_integral = is_S_integer(FieldElement(c, g), S);
      }
    }
    if (poles) {
      out.certified_from = last + 1;
      out.certificate = "pole-persistence";
    } else if (keeps_integral) {
      out.certified_from = last + 1;
      out.certificate = "integrality-persistence";
      for (int n = last + 1; n <= N; ++n) out.hits.push_back(n);
    } else {
      for (int n = last + 1; n <= N; ++n) out.undecided.push_back(n);
      out.warnings.emplace_back("height budget reached at n = " + std::to_string(last));
    }
  }
  out.count = static_cast<int>(out.hits.size());
  return out;
}

RationalInterval log_d_plus(const Rational& lo, const Rational& hi, int d) {
  if (d < 2) throw std::invalid_argument("log base must be at least 2");
  if (lo < 0 || hi < lo) throw std::invalid_argument("invalid ratio interval");
  return {Rational(lo <= 1 ? 0 : floor_log(lo, d)), Rational(hi <= 1 ? 0 : ceil_log(hi, d))};
}

RationalInterval th29_rhs(const Rational& gamma1, const HeightInterval& hA, int h_phi,
                          const HeightInterval& hP, int d) {
  if (hP.lo <= 0) throw DomainError("increase depth or point is preperiodic");
  const RationalInterval l = log_d_plus((hA.lo + h_phi) / hP.hi, (hA.hi + h_phi) / hP.lo, d);
  return {gamma1 + l.lo, gamma1 + l.hi};
}

RationalInterval cor210_rhs(const Rational& gamma, int h_phi, const HeightInterval& hP, int d) {
  if (hP.lo <= 0) throw DomainError("increase depth or point is preperiodic");
  const RationalInterval l = log_d_plus(Rational(h_phi) / hP.hi, Rational(h_phi) / hP.lo, d);
  return {gamma + l.lo, gamma + l.hi};
}

RationalInterval th29_bound_rhs(const BoundParams& params, const RationalMap& phi,
                                const ProjectivePoint& A, const ProjectivePoint& P, int depth) {
  if (!params.gamma1) throw std::invalid_argument("bound params missing gamma1");
  return th29_rhs(*params.gamma1, canonical_height(phi, A, depth), map_height(phi),
                  canonical_height(phi, P, depth), phi.degree());
}

RationalInterval cor210_bound_rhs(const BoundParams& params, const RationalMap& phi,
                                  const ProjectivePoint& P, int depth) {
  if (!params.gamma) throw std::invalid_argument("bound params missing gamma");
  return cor210_rhs(*params.gamma, map_height(phi), canonical_height(phi, P, depth), phi.degree());
}

GammaEstimate estimate_gamma(const std::vector<GammaInstance>& family, const PlaceSet& S,
                             const Rational& epsilon, int N, int depth) {
  check_epsilon(epsilon);
  GammaEstimate out;
  out.gamma_hat = 0;
  std::vector<std::optional<Rational>> values;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& inst = family[i];
    const int idx = static_cast<int>(i);
    try {
      const OrbitScanReport report = gamma_set(inst.phi, S, inst.A, inst.P, epsilon, N, depth);
      if (report.undecided_count > 0) {
        out.excluded.push_back(idx);
        out.warnings.push_back("instance " + std::to_string(idx) + ": " +
                               std::to_string(report.undecided_count) + " undecided indices");
        values.emplace_back();
        out.per_instance.emplace_back(0);
        continue;
      }
      if (report.truncated) {
        out.warnings.push_back("instance " + std::to_string(idx) + ": scan truncated at n = " +
                               std::to_string(report.records.size() - 1));
      }
      const RationalInterval term = th29_rhs(0, canonical_height(inst.phi, inst.A, depth),
                                             map_height(inst.phi),
                                             canonical_height(inst.phi, inst.P, depth),
                                             inst.phi.degree());
      Rational v = report.max_hit ? Rational(*report.max_hit) - term.lo : Rational(0);
      if (v < 0) v = 0;
      values.emplace_back(v);
      out.per_instance.push_back(v);
      if (v > out.gamma_hat) out.gamma_hat = v;
    } catch (const DomainError& e) {
      out.excluded.push_back(idx);
      out.warnings.push_back("instance " + std::to_string(idx) + ": " + e.what());
      values.emplace_back();
      out.per_instance.emplace_back(0);
    }
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] && *values[i] == out.gamma_hat) out.witnesses.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace ffdyn
