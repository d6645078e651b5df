#include "ffdyn/local_geometry.hpp"

#include <algorithm>
#include <stdexcept>

#include "ffdyn/errors.hpp"
#include "ffdyn/heights.hpp"

namespace ffdyn {

namespace {

// -log|p|_v = ord_v(p) deg(v) for a nonzero polynomial; ord_inf(p) = -deg p.
long neg_log_abs(const Polynomial& p, const Place& v) {
  return static_cast<long>(ord(p, v)) * v.degree();
}

// log max(|a|_v, |b|_v) for coordinates not both zero.
long log_max(const Polynomial& a, const Polynomial& b, const Place& v) {
  if (a.is_zero()) return -neg_log_abs(b, v);
  if (b.is_zero()) return -neg_log_abs(a, v);
  return std::max(-neg_log_abs(a, v), -neg_log_abs(b, v));
}

}  // namespace

long LocalHeightValue::value() const {
  if (!value_) throw std::logic_error("local height is infinite");
  return *value_;
}

LocalHeightValue& LocalHeightValue::operator+=(const LocalHeightValue& rhs) {
  if (!value_ || !rhs.value_) {
    value_.reset();
  } else {
    *value_ += *rhs.value_;
  }
  return *this;
}

std::strong_ordering operator<=>(const LocalHeightValue& a, const LocalHeightValue& b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() <=> b.is_infinite();
  return a.value() <=> b.value();
}

LocalHeightValue lambda_v(const ProjectivePoint& P, const ProjectivePoint& Q, const Place& v) {
  const Polynomial cross = P.x0() * Q.x1() - Q.x0() * P.x1();
  if (cross.is_zero()) return LocalHeightValue::infinite();
  return LocalHeightValue(neg_log_abs(cross, v) + log_max(P.x0(), P.x1(), v) +
                          log_max(Q.x0(), Q.x1(), v));
}

LocalHeightValue lambda_sum(const ProjectivePoint& P, const ProjectivePoint& Q, const PlaceSet& S) {
  if (P == Q) return LocalHeightValue::infinite();
  LocalHeightValue total;
  for (const auto& v : S) total += lambda_v(P, Q, v);
  return total;
}

Lemma22Check lemma22_check(const FieldElement& x, const FieldElement& y, const Place& v) {
  if (x == y) throw std::invalid_argument("lemma22_check needs x != y");
  const auto X = ProjectivePoint::affine(x);
  const auto Y = ProjectivePoint::affine(y);
  const long lxy = lambda_v(X, Y, v).value();
  const long ly = lambda_v(Y, ProjectivePoint::infinity(), v).value();
  Lemma22Check out;
  out.lower = ly;
  out.middle = lxy + log_abs(x - y, v);
  out.upper = 2 * ly;
  out.applicable = lxy > ly;
  out.holds = !out.applicable || (out.lower <= out.middle && out.middle <= out.upper);
  return out;
}

Lemma26Defect lemma26_defect(const RationalMap& phi, int m, const ProjectivePoint& A,
                             const ProjectivePoint& P, const PlaceSet& S) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  const RationalMap psi = power(phi, m);
  const FiberDecomposition fib = fiber(psi, A);
  if (!fib.is_split()) throw DomainError("fiber over A requires extension");
  const auto points = fib.points();
  const ProjectivePoint image = apply(psi, P);
  if (image == A) throw DomainError("P lies in the fiber over A");

  Lemma26Defect out;
  out.psi_degree = psi.degree();
  out.fiber_multiplicity = fib.total_multiplicity();
  for (const auto& v : S) {
    long best = 0;
    for (const auto& [Q, e] : points) best = std::max(best, e * lambda_v(P, Q, v).value());
    out.lhs += best;
    out.rhs_main += lambda_v(image, A, v).value();
  }
  out.defect = out.lhs - out.rhs_main;
  out.normalizer = A.height() + map_height(psi) + 1;
  return out;
}

}  // namespace ffdyn
