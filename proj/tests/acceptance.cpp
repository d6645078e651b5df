// Acceptance runner: one PASS/FAIL line per criterion, exit 0 iff all pass.
//
// usage: acceptance [DATA_DIR]   (default: the tests/data directory of the source tree)

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ffdyn/errors.hpp"
#include "ffdyn/expr_io.hpp"
#include "ffdyn/heights.hpp"
#include "ffdyn/mult_dependence.hpp"
#include "ffdyn/orbit_integrality.hpp"
#include "ffdyn/sampling.hpp"
#include "ffdyn/suites.hpp"

#ifndef FFDYN_TEST_DATA_DIR
#define FFDYN_TEST_DATA_DIR "tests/data"
#endif

namespace {

using namespace ffdyn;

// Pinned sizes and tolerances.
constexpr std::uint64_t kSeed = 0;
constexpr int kProductSamples = 1000;
constexpr double kProductSeconds = 10.0;
constexpr int kHeightSamples = 1000;
constexpr int kCanonicalDepth = 10;
const Rational kCanonicalWidth(5, 512);
constexpr int kFunctionalSamples = 100;
constexpr int kFunctionalDepth = 4;
constexpr int kDisplacementSamples = 1000;
constexpr int kProp23Samples = 100;
constexpr int kLemma22Samples = 1000;
constexpr int kRamificationSamples = 100;
constexpr int kRiemannHurwitzMaps = 20;
constexpr int kIntegralN = 30;
constexpr int kIntegralQuietFrom = 16;
constexpr int kControlN = 10;
constexpr int kBox = 3;
constexpr int kLemma26Samples = 60;
constexpr int kLemma26MinInstances = 50;
constexpr int kRoundtripSamples = 500;
constexpr int kGoldenSamples = 20;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string data_dir = FFDYN_TEST_DATA_DIR;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string dump(const SuiteResult& r) {
  std::string s;
  for (const auto& rec : r.records) s += rec.dump() + "\n";
  return s + r.summary.dump() + "\n";
}

std::string first_failure(const SuiteResult& r) {
  for (const auto& rec : r.records) {
    if (rec.contains("ok") && !rec["ok"].get<bool>()) return " first failure: " + rec.dump();
  }
  return "";
}

Outcome suite_outcome(const std::string& name, int samples) {
  const SuiteResult r = run_suite(name, samples, kSeed);
  Outcome o;
  o.pass = r.failed == 0 && r.passed + r.skipped == samples;
  o.detail = std::to_string(r.passed) + "/" + std::to_string(samples) + " passed, " +
             std::to_string(r.skipped) + " skipped" + first_failure(r);
  if (r.summary.contains("applicable")) {
    o.detail += ", " + std::to_string(r.summary["applicable"].get<int>()) + " applicable";
  }
  return o;
}

Outcome product_formula() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o = suite_outcome("product-formula", kProductSamples);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.pass = o.pass && secs < kProductSeconds;
  std::ostringstream os;
  os.precision(3);
  os << o.detail << " in " << secs << " s";
  o.detail = os.str();
  return o;
}

// h([a:b]) as a sum over places of max(log|a|_v, log|b|_v), for unreduced coordinates.
int point_height_by_places(const FieldElement& a, const FieldElement& b) {
  PlaceSet places;
  for (const FieldElement* x : {&a, &b}) {
    if (!x->is_zero()) places = places | support(*x);
  }
  int h = 0;
  for (const Place& v : places) {
    int best = 0;
    bool first = true;
    for (const FieldElement* x : {&a, &b}) {
      if (x->is_zero()) continue;
      const int l = log_abs(*x, v);
      best = first ? l : std::max(best, l);
      first = false;
    }
    h += best;
  }
  return h;
}

Outcome height_consistency() {
  sampling::Engine rng(kSeed);
  int bad = 0;
  std::string example;
  for (int i = 0; i < kHeightSamples; ++i) {
    const FieldElement x = sampling::nonzero_element(rng, 4, 5);
    if (height_elem(x) != height_elem_by_places(x)) {
      ++bad;
      if (example.empty()) example = " element " + to_string(x);
    }
    const FieldElement c = sampling::nonzero_element(rng, 2, 3);
    const FieldElement a = sampling::element(rng, 3, 4) * c;
    FieldElement b = sampling::element(rng, 3, 4) * c;
    if (a.is_zero() && b.is_zero()) b = c;
    const ProjectivePoint P = b.is_zero() ? ProjectivePoint::infinity() : ProjectivePoint::affine(a / b);
    if (P.height() != point_height_by_places(a, b)) {
      ++bad;
      if (example.empty()) example = " point " + to_string(P);
    }
  }
  return {bad == 0, std::to_string(2 * kHeightSamples - bad) + "/" +
                        std::to_string(2 * kHeightSamples) + " exact matches" + example};
}

Outcome canonical_height_check() {
  Outcome o;
  std::ostringstream os;
  const HeightInterval I = canonical_height(parse_rational_map("z^2+t"), parse_point("0"), kCanonicalDepth);
  const bool base = I.contains(Rational(1, 2)) && I.width() <= kCanonicalWidth;
  os << "z^2+t at 0: [" << to_string(I.lo) << ", " << to_string(I.hi) << "]";

  sampling::Engine rng(kSeed);
  int consistent = 0;
  for (int i = 0; i < kFunctionalSamples; ++i) {
    const int d = 2 + i % 2;
    const RationalMap phi = sampling::map(rng, d, 1);
    const ProjectivePoint P = sampling::point(rng, 1);
    const HeightInterval a = canonical_height(phi, P, kFunctionalDepth);
    const HeightInterval b = canonical_height(phi, apply(phi, P), kFunctionalDepth);
    // hat-h(phi(P)) = d hat-h(P): the enclosures must meet.
    if (b.lo <= a.hi * d && a.lo * d <= b.hi) ++consistent;
  }
  os << "; functional equation " << consistent << "/" << kFunctionalSamples;

  const std::vector<std::pair<std::string, std::string>> preperiodic{
      {"z^2", "0"},     {"z^2", "1"},    {"z^2", "-1"},     {"z^2", "inf"}, {"z^2-1", "0"},
      {"z^2-1", "-1"},  {"z^2-2", "2"},  {"z^2-2", "0"},    {"1/z^2", "-1"}, {"z^2+t", "inf"},
      {"t*z^2", "0"},   {"(z^2-t)/z", "0"}};
  int zero = 0;
  for (const auto& [m, p] : preperiodic) {
    if (canonical_height(parse_rational_map(m), parse_point(p), kCanonicalDepth).contains(0)) ++zero;
  }
  os << "; preperiodic intervals containing 0 " << zero << "/" << preperiodic.size();
  o.pass = base && consistent == kFunctionalSamples && zero == static_cast<int>(preperiodic.size());
  o.detail = os.str();
  return o;
}

Outcome ramification() {
  const SuiteResult r = run_suite("rh", kRamificationSamples, kSeed);
  int fibers = 0, mult = 0, rh = 0;
  for (const auto& rec : r.records) {
    const int d = rec["map"].is_string() ? parse_rational_map(rec["map"].get<std::string>()).degree() : 0;
    if (rec["fiber_total"].get<int>() == d) ++fibers;
    if (rec["e_composite"] == rec["e_product"]) ++mult;
    if (rec["index"].get<int>() < kRiemannHurwitzMaps && rec["ramification_degree"].get<int>() == 2 * d - 2) {
      ++rh;
    }
  }
  std::ostringstream os;
  os << "fiber sums " << fibers << "/" << kRamificationSamples << ", multiplicativity " << mult << "/"
     << kRamificationSamples << ", Riemann-Hurwitz " << rh << "/" << kRiemannHurwitzMaps;
  return {fibers == kRamificationSamples && mult == kRamificationSamples && rh == kRiemannHurwitzMaps,
          os.str()};
}

std::string list(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

Outcome orbit_integrality() {
  const IntegralCount a =
      count_S_integral(parse_rational_map("(z^2-t)/z"), parse_point("t"), parse_places("inf"), kIntegralN);
  bool quiet = true;
  for (int n : a.hits) quiet = quiet && n < kIntegralQuietFrom;
  const bool finite = a.undecided.empty() && !a.certificate.empty();
  const IntegralCount b =
      count_S_integral(parse_rational_map("z^2+t"), parse_point("0"), parse_places("inf"), kControlN);
  const bool control = b.count == kControlN && b.undecided.empty();
  std::ostringstream os;
  os << "(z^2-t)/z from t: hits " << list(a.hits) << " (" << a.certificate << " from n = "
     << (a.certified_from ? std::to_string(*a.certified_from) : "-") << "); z^2+t from 0: hits "
     << list(b.hits);
  return {quiet && finite && control, os.str()};
}

// Recomputes u = phi^(n+k)(alpha)^r / phi^k(alpha)^s from a fresh orbit.
bool reverify(const RationalMap& phi, const ProjectivePoint& alpha, const PlaceSet& S,
              const DependenceSolution& sol) {
  const OrbitPrefix orbit = orbit_prefix(phi, alpha, sol.n + sol.k, kDefaultMaxHeight);
  if (static_cast<int>(orbit.points.size()) <= sol.n + sol.k) return false;
  const FieldElement x = orbit.points[static_cast<std::size_t>(sol.n + sol.k)].to_affine();
  const FieldElement y = orbit.points[static_cast<std::size_t>(sol.k)].to_affine();
  if (x.is_zero() || y.is_zero()) return false;
  const FieldElement u = x.pow(sol.r) / y.pow(sol.s);
  return u == sol.u && is_S_unit(u, S);
}

Outcome mult_dependence() {
  DependenceQuery q;
  q.n_max = q.k_max = q.r_max = q.s_max = kBox;
  const RationalMap f = parse_rational_map("z^2+t");
  q.alpha = parse_point("0");
  q.S = parse_places("inf");
  const DependenceResult a = dependence_search(f, q);

  const RationalMap g = parse_rational_map("t*z^2");
  DependenceQuery c = q;
  c.alpha = parse_point("t");
  c.S = parse_places("t, inf");
  const DependenceResult b = dependence_search(g, c);
  std::set<std::pair<int, int>> covered;
  int verified = 0;
  for (const auto& s : b.solutions) {
    covered.insert({s.n, s.k});
    if (reverify(g, c.alpha, c.S, s)) ++verified;
  }
  for (const auto& s : a.solutions) verified += reverify(f, q.alpha, q.S, s) ? 1 : 0;
  const int total = static_cast<int>(a.solutions.size() + b.solutions.size());
  const int cells = kBox * (kBox + 1);
  std::ostringstream os;
  os << "z^2+t from 0: " << a.solutions.size() << " solutions; t*z^2 from t: " << b.solutions.size()
     << " solutions covering " << covered.size() << "/" << cells << " (n,k); re-verified " << verified
     << "/" << total;
  return {a.solutions.empty() && static_cast<int>(covered.size()) == cells && verified == total,
          os.str()};
}

Outcome lemma26() {
  const SuiteResult r = run_suite("lemma26", kLemma26Samples, kSeed);
  const std::string baseline_text = read_file(data_dir + "/lemma26_baseline.txt");
  Rational baseline;
  std::istringstream in(baseline_text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    baseline = parse_rational(line);
    break;
  }
  const Rational max_ratio = parse_rational(r.summary["max_ratio"].get<std::string>());
  std::ostringstream os;
  os << r.passed << " instances with fiber sum = degree, " << r.failed << " violations, " << r.skipped
     << " skipped; max ratio " << to_string(max_ratio) << " (baseline " << to_string(baseline) << ")";
  return {r.failed == 0 && r.passed >= kLemma26MinInstances && max_ratio <= baseline, os.str()};
}

Outcome parser() {
  Outcome o = suite_outcome("roundtrip", kRoundtripSamples);
  const std::string first = dump(run_suite("roundtrip", kGoldenSamples, kSeed));
  const std::string second = dump(run_suite("roundtrip", kGoldenSamples, kSeed));
  const std::string golden = read_file(data_dir + "/roundtrip_golden.jsonl");
  const bool stable = first == second;
  const bool matches = first == golden;
  o.pass = o.pass && stable && matches;
  o.detail = "round-trip " + o.detail + "; two runs " + (stable ? "identical" : "differ") +
             "; golden file " + (matches ? "identical" : "differs");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) data_dir = argv[1];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"product formula", product_formula},
      {"height consistency", height_consistency},
      {"canonical height", canonical_height_check},
      {"displacement bound", [] { return suite_outcome("displacement", kDisplacementSamples); }},
      {"iterate heights", [] { return suite_outcome("prop23", kProp23Samples); }},
      {"local height chain", [] { return suite_outcome("lemma22", kLemma22Samples); }},
      {"ramification", ramification},
      {"orbit integrality", orbit_integrality},
      {"multiplicative dependence", mult_dependence},
      {"split-fiber defect", lemma26},
      {"parser", parser},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
