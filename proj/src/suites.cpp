#include "ffdyn/suites.hpp"

#include <functional>
#include <map>
#include <stdexcept>

#include "ffdyn/errors.hpp"
#include "ffdyn/expr_io.hpp"
#include "ffdyn/heights.hpp"
#include "ffdyn/local_geometry.hpp"
#include "ffdyn/sampling.hpp"

namespace ffdyn {

namespace {

using sampling::Engine;

Json record(const std::string& suite, int index) {
  Json j;
  j["schema"] = "ffdyn.verify/1";
  j["suite"] = suite;
  j["index"] = index;
  return j;
}

void finish(SuiteResult& out, Json rec, bool ok) {
  rec["ok"] = ok;
  (ok ? out.passed : out.failed) += 1;
  out.records.push_back(std::move(rec));
}

void product_formula(SuiteResult& out, Engine& rng) {
  for (int i = 0; i < out.samples; ++i) {
    const FieldElement x = sampling::nonzero_element(rng, 4, 5);
    Json r = record(out.suite, i);
    const int defect = product_formula_defect(x);
    const int h = height_elem(x), hp = height_elem_by_places(x);
    r["x"] = to_string(x);
    r["defect"] = defect;
    r["height"] = h;
    r["place_height"] = hp;
    finish(out, std::move(r), defect == 0 && h == hp);
  }
}

void displacement(SuiteResult& out, Engine& rng) {
  for (int i = 0; i < out.samples; ++i) {
    const int d = 2 + i % 2;
    const RationalMap phi = sampling::map(rng, d);
    const ProjectivePoint P = sampling::point(rng);
    const long diff = std::labs(static_cast<long>(apply(phi, P).height()) - d * P.height());
    const Rational B = displacement_bound(phi);
    Json r = record(out.suite, i);
    r["map"] = to_string(phi);
    r["point"] = to_string(P);
    r["lhs"] = diff;
    r["bound"] = to_string(B);
    finish(out, std::move(r), Rational(diff) <= B);
  }
}

void prop23(SuiteResult& out, Engine& rng) {
  for (int i = 0; i < out.samples; ++i) {
    const int d = 2 + i % 2;
    const int n = 1 + (i / 2) % 3;
    const RationalMap phi = sampling::map(rng, d, 1 + i % 2);
    const IterateHeightCheck c = iterate_height_check(phi, n);
    Json r = record(out.suite, i);
    r["map"] = to_string(phi);
    r["n"] = n;
    r["lhs"] = c.lhs;
    r["sharp_rhs"] = to_string(c.sharp_rhs);
    r["stated_rhs"] = to_string(c.stated_rhs);
    finish(out, std::move(r), c.holds && Rational(c.lhs) <= c.stated_rhs);
  }
}

void lemma22(SuiteResult& out, Engine& rng) {
  int applicable = 0;
  for (int i = 0; i < out.samples; ++i) {
    const FieldElement y = sampling::element(rng);
    const Place v = sampling::place(rng);
    FieldElement x = sampling::element(rng);
    if (i % 2 == 1) {
      // x close to y at v: y + pi^k w with a uniformizer pi.
      const FieldElement pi = v.is_infinite() ? FieldElement(Polynomial::t()).inverse()
                                              : FieldElement(v.polynomial());
      x = y + pi.pow(static_cast<int>(sampling::uniform(rng, 1, 3))) * sampling::nonzero_element(rng, 1, 2);
    }
    Json r = record(out.suite, i);
    r["x"] = to_string(x);
    r["y"] = to_string(y);
    r["place"] = to_string(v);
    if (x == y) {
      r["skipped"] = "x == y";
      ++out.skipped;
      out.records.push_back(std::move(r));
      continue;
    }
    const Lemma22Check c = lemma22_check(x, y, v);
    applicable += c.applicable ? 1 : 0;
    r["applicable"] = c.applicable;
    r["lower"] = c.lower;
    r["middle"] = c.middle;
    r["upper"] = c.upper;
    finish(out, std::move(r), c.holds);
  }
  out.summary["applicable"] = applicable;
}

// phi = (A G + c prod (z - r_j)) / G has the K-split fiber {r_j} over A.
struct SplitInstance {
  RationalMap phi;
  ProjectivePoint A;
};

SplitInstance split_instance(Engine& rng, int d) {
  for (;;) {
    const Polynomial a = sampling::polynomial(rng, 1, 2);
    Polynomial c = sampling::polynomial(rng, 1, 2);
    if (c.is_zero()) c = Polynomial(1);
    ZPolynomial prod(Polynomial(1));
    Polynomial root = sampling::polynomial(rng, 1, 2);
    for (int j = 0; j < d; ++j) {
      if (j > 0 && rng() % 2 == 0) root = sampling::polynomial(rng, 1, 2);
      prod = prod * ZPolynomial(std::vector<Polynomial>{-root, Polynomial(1)});
    }
    std::vector<Polynomial> g;
    for (int j = 0; j < d; ++j) g.push_back(sampling::polynomial(rng, 1, 2));
    const ZPolynomial G(g);
    if (G.is_zero()) continue;
    const RationalMap phi = normalize_map(a * G + c * prod, G);
    if (phi.degree() != d) continue;
    return {phi, ProjectivePoint::affine(FieldElement(a))};
  }
}

void lemma26(SuiteResult& out, Engine& rng) {
  Rational max_ratio = 0;
  int worst = -1;
  for (int i = 0; i < out.samples; ++i) {
    const int d = 2 + i % 2;
    const SplitInstance inst = split_instance(rng, d);
    PlaceSet S = sampling::place_subset(rng);
    ProjectivePoint P = sampling::point(rng);
    Json r = record(out.suite, i);
    r["map"] = to_string(inst.phi);
    r["target"] = to_string(inst.A);
    r["places"] = to_string(S);
    std::optional<Lemma26Defect> res;
    int m = (i % 4 == 3) ? 2 : 1;
    for (int attempt = 0; attempt < 20 && !res; ++attempt) {
      try {
        res = lemma26_defect(inst.phi, m, inst.A, P, S);
      } catch (const DomainError& e) {
        if (std::string(e.what()).find("requires extension") != std::string::npos) {
          m = 1;
        } else {
          P = sampling::point(rng);
        }
      }
    }
    r["m"] = m;
    r["point"] = to_string(P);
    if (!res) {
      r["skipped"] = "no admissible point";
      ++out.skipped;
      out.records.push_back(std::move(r));
      continue;
    }
    const Rational ratio = Rational(res->defect) / Rational(res->normalizer);
    if (worst < 0 || ratio > max_ratio) {
      max_ratio = ratio;
      worst = i;
    }
    r["lhs"] = res->lhs;
    r["rhs_main"] = res->rhs_main;
    r["defect"] = res->defect;
    r["normalizer"] = res->normalizer;
    r["ratio"] = to_string(ratio);
    r["fiber_multiplicity"] = res->fiber_multiplicity;
    r["degree"] = res->psi_degree;
    finish(out, std::move(r), res->fiber_multiplicity == res->psi_degree);
  }
  out.summary["max_ratio"] = to_string(max_ratio);
  out.summary["max_ratio_index"] = worst;
}

void rh(SuiteResult& out, Engine& rng) {
  for (int i = 0; i < out.samples; ++i) {
    const int d = 2 + i % 2;
    const RationalMap phi = sampling::map(rng, d, 1);
    const RationalMap psi = sampling::map(rng, 2, 1);
    const ProjectivePoint A = sampling::point(rng, 1);
    const ProjectivePoint P = sampling::point(rng, 1);
    const int R = ramification_divisor_degree(phi);
    const int fiber_total = fiber(phi, A).total_multiplicity();
    const int e_comp = ramification_index(compose(phi, psi), P);
    const int e_prod = ramification_index(psi, P) * ramification_index(phi, apply(psi, P));
    Json r = record(out.suite, i);
    r["map"] = to_string(phi);
    r["inner"] = to_string(psi);
    r["target"] = to_string(A);
    r["point"] = to_string(P);
    r["ramification_degree"] = R;
    r["fiber_total"] = fiber_total;
    r["e_composite"] = e_comp;
    r["e_product"] = e_prod;
    finish(out, std::move(r), R == 2 * d - 2 && fiber_total == d && e_comp == e_prod);
  }
}

void roundtrip(SuiteResult& out, Engine& rng) {
  for (int i = 0; i < out.samples; ++i) {
    const RationalMap phi = sampling::map(rng, 1 + i % 3);
    const FieldElement x = sampling::element(rng, 4, 7);
    const ProjectivePoint P = sampling::point(rng);
    const std::string ms = to_string(phi), xs = to_string(x), ps = to_string(P);
    const bool ok = parse_rational_map(ms) == phi && parse_field_elem(xs) == x &&
                    parse_point(ps) == P && to_string(parse_rational_map(ms)) == ms;
    Json r = record(out.suite, i);
    r["map"] = ms;
    r["element"] = xs;
    r["point"] = ps;
    finish(out, std::move(r), ok);
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"product-formula", "displacement", "prop23", "lemma22",
                                              "lemma26",         "rh",           "roundtrip"};
  return names;
}

SuiteResult run_suite(const std::string& name, int samples, std::uint64_t seed) {
  static const std::map<std::string, std::function<void(SuiteResult&, Engine&)>> table{
      {"product-formula", product_formula},
      {"displacement", displacement},
      {"prop23", prop23},
      {"lemma22", lemma22},
      {"lemma26", lemma26},
      {"rh", rh},
      {"roundtrip", roundtrip}};
  const auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown suite '" + name + "'");
  if (samples < 1) throw std::invalid_argument("samples must be positive");
  SuiteResult out;
  out.suite = name;
  out.samples = samples;
  out.seed = seed;
  out.summary = Json::object();
  Engine rng(seed);
  it->second(out, rng);
  Json summary;
  summary["schema"] = "ffdyn.verify.summary/1";
  summary["suite"] = name;
  summary["samples"] = samples;
  summary["seed"] = seed;
  summary["passed"] = out.passed;
  summary["failed"] = out.failed;
  summary["skipped"] = out.skipped;
  for (auto& [k, v] : out.summary.items()) summary[k] = v;
  out.summary = std::move(summary);
  return out;
}

}  // namespace ffdyn
