#pragma once

// Logarithmic chordal local heights lambda_v on P^1(K), their sums over a set of
// places, and the local comparison checks built on them.

#include <compare>
#include <optional>
#include <vector>

#include "ffdyn/map_algebra.hpp"

namespace ffdyn {

// A nonnegative integer or +infinity (the two points coincide).
class LocalHeightValue {
 public:
  LocalHeightValue() = default;
  explicit LocalHeightValue(long value) : value_(value) {}
  static LocalHeightValue infinite() {
    LocalHeightValue v;
    v.value_.reset();
    return v;
  }

  bool is_infinite() const { return !value_.has_value(); }
  // Throws std::logic_error when infinite.
  long value() const;

  LocalHeightValue& operator+=(const LocalHeightValue& rhs);
  friend LocalHeightValue operator+(LocalHeightValue a, const LocalHeightValue& b) { return a += b; }

  friend bool operator==(const LocalHeightValue&, const LocalHeightValue&) = default;
  // +infinity compares above every integer.
  friend std::strong_ordering operator<=>(const LocalHeightValue& a, const LocalHeightValue& b);

 private:
  std::optional<long> value_ = 0L;
};

// -log|x1 y2 - x2 y1|_v + log max(|x1|_v, |y1|_v) + log max(|x2|_v, |y2|_v).
LocalHeightValue lambda_v(const ProjectivePoint& P, const ProjectivePoint& Q, const Place& v);
LocalHeightValue lambda_sum(const ProjectivePoint& P, const ProjectivePoint& Q, const PlaceSet& S);

struct Lemma22Check {
  bool applicable = false;  // lambda_v(x, y) > lambda_v(y, inf)
  bool holds = true;        // lower <= middle <= upper (vacuous when not applicable)
  long lower = 0;           // lambda_v(y, inf)
  long middle = 0;          // lambda_v(x, y) + log|x - y|_v
  long upper = 0;           // 2 lambda_v(y, inf)
};
// Throws std::invalid_argument when x == y.
Lemma22Check lemma22_check(const FieldElement& x, const FieldElement& y, const Place& v);

struct Lemma26Defect {
  long lhs = 0;        // sum_{v in S} max_{A'} e_{A'} lambda_v(P, A')
  long rhs_main = 0;   // sum_{v in S} lambda_v(psi(P), A)
  long defect = 0;     // lhs - rhs_main
  long normalizer = 0; // h(A) + h(psi) + 1
  int fiber_multiplicity = 0;  // sum of e_{A'} over the fiber
  int psi_degree = 0;
};
// psi = phi^m. DomainError "requires extension" when the fiber of psi over A is
// not K-split, DomainError when P lies in the fiber.
Lemma26Defect lemma26_defect(const RationalMap& phi, int m, const ProjectivePoint& A,
                             const ProjectivePoint& P, const PlaceSet& S);

}  // namespace ffdyn
