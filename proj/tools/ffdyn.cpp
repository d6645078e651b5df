// ffdyn: command-line front end for dynamics over K = Q(t).

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ffdyn/errors.hpp"
#include "ffdyn/expr_io.hpp"
#include "ffdyn/heights.hpp"
#include "ffdyn/mult_dependence.hpp"
#include "ffdyn/orbit_integrality.hpp"
#include "ffdyn/suites.hpp"

namespace {

using namespace ffdyn;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

// Thrown for configuration problems found after CLI11 parsing.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string format = "text";
  std::string output;
  std::string config;

  std::string value;  // height
  std::string map;
  std::string point;
  std::string target = "inf";
  std::string places;
  std::string epsilon = "1/2";
  std::string form;
  std::string params;
  std::vector<std::string> instances;
  int max_n = 30;
  int depth = 12;
  int canheight_depth = 6;
  int max_height = kDefaultMaxHeight;
  int cap = 12;
  int n_max = 3, k_max = 3, r_max = 3, s_max = 3;
  bool classify_cases = false;
  bool assume_wandering = false;

  std::string suite;
  int samples = 100;
  std::uint64_t seed = 0;
};

// ---------------------------------------------------------------------------
// Output

std::string csv_cell(const Json& v) {
  std::string s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ';';
      s += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
    }
  } else if (v.is_null()) {
    s = "";
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string text_value(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + text_value(v[i]);
    return s + "]";
  }
  return v.dump();
}

std::string text_line(const Json& j) {
  std::string s;
  for (const auto& [k, v] : j.items()) {
    if (k == "schema") continue;
    if (!s.empty()) s += ' ';
    s += k + "=" + text_value(v);
  }
  return s;
}

class Emitter {
 public:
  explicit Emitter(const RunConfig& cfg) : format_(cfg.format) {
    if (!cfg.output.empty()) {
      file_ = std::make_unique<std::ofstream>(cfg.output, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output file '" + cfg.output + "'");
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

  // records: one per instance; summary last. text_override replaces the
  // summary line in text mode.
  void emit(const std::vector<Json>& records, const Json& summary,
            const std::string& text_override = "") {
    std::ostream& os = out();
    if (format_ == "json") {
      for (const auto& r : records) os << r.dump() << '\n';
      os << summary.dump() << '\n';
    } else if (format_ == "csv") {
      const std::vector<Json> rows = records.empty() ? std::vector<Json>{summary} : records;
      bool first = true;
      for (const auto& r : rows) {
        std::string line;
        if (first) {
          for (const auto& [k, v] : r.items()) line += (line.empty() ? "" : ",") + csv_cell(k);
          os << line << '\n';
          line.clear();
          first = false;
        }
        bool lead = true;
        for (const auto& [k, v] : r.items()) {
          line += (lead ? "" : ",") + csv_cell(v);
          lead = false;
        }
        os << line << '\n';
      }
    } else {
      for (const auto& r : records) os << text_line(r) << '\n';
      os << (text_override.empty() ? text_line(summary) : text_override) << '\n';
    }
    os.flush();
  }

 private:
  std::string format_;
  std::unique_ptr<std::ofstream> file_;
};

Json header(const std::string& schema) {
  Json j;
  j["schema"] = "ffdyn." + schema + "/1";
  return j;
}

Json interval_json(Json j, const HeightInterval& I) {
  j["lo"] = to_string(I.lo);
  j["hi"] = to_string(I.hi);
  j["depth"] = I.depth;
  return j;
}

std::string fixed6(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << x;
  return os.str();
}

Json int_list(const std::vector<int>& v) {
  Json j = Json::array();
  for (int x : v) j.push_back(x);
  return j;
}

Json string_list(const std::vector<std::string>& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(x);
  return j;
}

// ---------------------------------------------------------------------------
// Commands

RationalMap need_map(const RunConfig& c) {
  if (c.map.empty()) throw UsageError("--map is required");
  return parse_rational_map(c.map);
}

ProjectivePoint need_point(const RunConfig& c) {
  if (c.point.empty()) throw UsageError("--point is required");
  return parse_point(c.point);
}

int cmd_height(const RunConfig& c, Emitter& em) {
  Json j = header("height");
  j["input"] = c.value;
  int h = 0;
  if (c.value.find('z') != std::string::npos) {
    j["kind"] = "map";
    h = map_height(parse_rational_map(c.value));
  } else if (c.value == "inf") {
    j["kind"] = "point";
    h = 0;
  } else {
    j["kind"] = "element";
    h = height_elem(parse_field_elem(c.value));
  }
  j["height"] = h;
  em.emit({}, j, std::to_string(h));
  return kExitOk;
}

int cmd_canheight(const RunConfig& c, Emitter& em) {
  const HeightInterval I = canonical_height(need_map(c), need_point(c), c.canheight_depth, c.max_height);
  Json j = interval_json(header("canheight"), I);
  j["center"] = to_string(I.center());
  j["width"] = to_string(I.width());
  em.emit({}, j, "[" + to_string(I.lo) + ", " + to_string(I.hi) + "] depth=" + std::to_string(I.depth));
  return kExitOk;
}

int cmd_classify(const RunConfig& c, Emitter& em) {
  ClassifyOptions opts;
  opts.max_height = c.max_height;
  const auto result = classify_preperiodic(need_map(c), need_point(c), opts);
  Json j = header("classify");
  if (const auto* p = std::get_if<Preperiodic>(&result)) {
    j["kind"] = "preperiodic";
    j["tail"] = p->tail;
    j["cycle"] = p->cycle;
  } else {
    const auto& w = std::get<Wandering>(result);
    j["kind"] = "wandering";
    j["lower_bound"] = to_string(w.lower_bound);
    j["depth"] = w.depth;
    j["certified_at"] = w.certified_at;
  }
  em.emit({}, j);
  return kExitOk;
}

int cmd_orbit_scan(const RunConfig& c, Emitter& em) {
  const RationalMap phi = need_map(c);
  const ProjectivePoint P = need_point(c), A = parse_point(c.target);
  const PlaceSet S = parse_places(c.places);
  const Rational eps = parse_rational(c.epsilon);
  std::optional<BoundParams> params;
  if (!c.params.empty()) params = BoundParams::load(c.params);
  GammaSetOptions opts;
  opts.assume_wandering = c.assume_wandering;
  opts.max_height = c.max_height;
  const OrbitScanReport rep = gamma_set(phi, S, A, P, eps, c.max_n, c.depth, opts);
  std::vector<Json> rows;
  for (const auto& r : rep.records) {
    Json j = header("orbit-scan");
    j["n"] = r.n;
    j["point"] = to_string(r.point);
    j["height"] = r.height;
    j["hhat_lo"] = to_string(r.canonical.lo);
    j["hhat_hi"] = to_string(r.canonical.hi);
    j["hhat_depth"] = r.canonical.depth;
    j["lambda"] = r.lambda.is_infinite() ? Json("inf") : Json(r.lambda.value());
    j["membership"] = to_string(r.membership);
    j["s_integer"] = r.s_integer;
    rows.push_back(std::move(j));
  }
  Json s = header("orbit-scan.summary");
  s["map"] = to_string(phi);
  s["point"] = to_string(P);
  s["target"] = to_string(A);
  s["places"] = to_string(S);
  s["epsilon"] = to_string(eps);
  s["max_n"] = c.max_n;
  s["depth"] = c.depth;
  s["in"] = rep.in_count;
  s["out"] = rep.out_count;
  s["undecided"] = rep.undecided_count;
  s["max_hit"] = rep.max_hit ? Json(*rep.max_hit) : Json(nullptr);
  s["truncated"] = rep.truncated;
  if (params) {
    if (params->gamma1) {
      const auto I = th29_bound_rhs(*params, phi, A, P, c.depth);
      s["index_bound"] = Json::array({to_string(I.lo), to_string(I.hi)});
    }
    if (params->gamma) {
      const auto I = cor210_bound_rhs(*params, phi, P, c.depth);
      s["integral_bound"] = Json::array({to_string(I.lo), to_string(I.hi)});
    }
  }
  em.emit(rows, s);
  return kExitOk;
}

int cmd_integral_count(const RunConfig& c, Emitter& em) {
  const RationalMap phi = need_map(c);
  const ProjectivePoint P = need_point(c);
  const PlaceSet S = parse_places(c.places);
  const IntegralCount r = count_S_integral(phi, P, S, c.max_n, c.max_height);
  Json j = header("integral-count");
  j["hits"] = int_list(r.hits);
  j["count"] = r.count;
  j["exact_through"] = r.exact_through;
  j["certified_from"] = r.certified_from ? Json(*r.certified_from) : Json(nullptr);
  j["certificate"] = r.certificate;
  j["undecided"] = int_list(r.undecided);
  j["warnings"] = string_list(r.warnings);
  em.emit({}, j);
  for (const auto& w : r.warnings) std::cerr << "ffdyn: warning: " << w << '\n';
  return kExitOk;
}

int cmd_units(const RunConfig& c, Emitter& em) {
  const UnitHits r = unit_hits(need_map(c), need_point(c), parse_places(c.places), c.max_n,
                               c.max_height);
  Json j = header("units-in-orbit");
  j["hits"] = int_list(r.hits);
  j["count"] = static_cast<int>(r.hits.size());
  j["scanned_through"] = r.scanned_through;
  j["truncated"] = r.truncated;
  em.emit({}, j);
  return kExitOk;
}

int cmd_multdep(const RunConfig& c, Emitter& em) {
  const RationalMap phi = need_map(c);
  DependenceQuery q;
  q.alpha = need_point(c);
  q.S = parse_places(c.places);
  q.n_max = c.n_max;
  q.k_max = c.k_max;
  q.r_max = c.r_max;
  q.s_max = c.s_max;
  q.max_height = c.max_height;
  const DependenceResult res = dependence_search(phi, q);
  std::vector<Json> rows;
  for (const auto& s : res.solutions) {
    Json j = header("multdep");
    j["n"] = s.n;
    j["k"] = s.k;
    j["r"] = s.r;
    j["s"] = s.s;
    j["u"] = to_string(s.u);
    j["rho"] = fixed6(s.rho);
    j["n_at_least_rho"] = s.n_at_least_rho;
    if (c.classify_cases) {
      const CaseLabel label = poly_case_classifier(phi, q.alpha, s, q.S);
      j["case_label"] = label.label;
      if (label.witness) j["witness"] = to_string(*label.witness);
    }
    rows.push_back(std::move(j));
  }
  Json s = header("multdep.summary");
  s["map"] = to_string(phi);
  s["point"] = to_string(q.alpha);
  s["places"] = to_string(q.S);
  s["n_max"] = q.n_max;
  s["k_max"] = q.k_max;
  s["r_max"] = q.r_max;
  s["s_max"] = q.s_max;
  s["count"] = static_cast<int>(res.solutions.size());
  const auto tri = [](const std::optional<bool>& b) {
    return b ? Json(*b) : Json("undecided");
  };
  s["alpha_wandering"] = tri(res.alpha_wandering);
  s["zero_periodic"] = tri(res.zero_periodic);
  s["notes"] = string_list(res.notes);
  em.emit(rows, s);
  return kExitOk;
}

int cmd_split_form(const RunConfig& c, Emitter& em) {
  if (c.form.empty()) throw UsageError("--form is required");
  const SplitMultilinearForm form = parse_split_form(c.form);
  const ZeroScan r = split_multilinear_zero_scan(form, need_map(c), need_point(c), c.max_n,
                                                 c.max_height);
  std::vector<Json> rows;
  for (const auto& t : r.tuples) {
    Json j = header("split-form-scan");
    j["tuple"] = int_list(t);
    rows.push_back(std::move(j));
  }
  Json s = header("split-form-scan.summary");
  s["form"] = to_string(form);
  s["count"] = static_cast<int>(r.tuples.size());
  s["checked"] = r.tuples_checked;
  s["skipped"] = r.tuples_skipped;
  s["scanned_through"] = r.scanned_through;
  s["truncated"] = r.truncated;
  em.emit(rows, s);
  return kExitOk;
}

int cmd_choose_m(const RunConfig& c, Emitter& em) {
  const RationalMap phi = need_map(c);
  const ProjectivePoint A = parse_point(c.target);
  const int m = choose_m(phi, A, parse_rational(c.epsilon), c.cap);
  Json j = header("choose-m");
  j["m"] = m;
  j["max_fiber_ram"] = max_fiber_ram(phi, m, A);
  Integer dm;
  mpz_ui_pow_ui(dm.get_mpz_t(), static_cast<unsigned long>(phi.degree()), static_cast<unsigned long>(m));
  j["degree"] = dm.get_str();
  em.emit({}, j, std::to_string(m));
  return kExitOk;
}

int cmd_estimate_gamma(const RunConfig& c, Emitter& em) {
  if (c.instances.empty()) throw UsageError("at least one --instance \"map;target;point\" is required");
  std::vector<GammaInstance> family;
  for (const auto& text : c.instances) {
    const auto a = text.find(';');
    const auto b = a == std::string::npos ? a : text.find(';', a + 1);
    if (b == std::string::npos) throw UsageError("instance must be \"map;target;point\": " + text);
    family.push_back({parse_rational_map(text.substr(0, a)), parse_point(text.substr(a + 1, b - a - 1)),
                      parse_point(text.substr(b + 1))});
  }
  const GammaEstimate g =
      estimate_gamma(family, parse_places(c.places), parse_rational(c.epsilon), c.max_n, c.depth);
  std::vector<Json> rows;
  for (std::size_t i = 0; i < family.size(); ++i) {
    Json j = header("estimate-gamma");
    j["instance"] = static_cast<int>(i);
    j["value"] = to_string(g.per_instance[i]);
    j["excluded"] = std::find(g.excluded.begin(), g.excluded.end(), static_cast<int>(i)) != g.excluded.end();
    rows.push_back(std::move(j));
  }
  Json s = header("estimate-gamma.summary");
  s["gamma_hat"] = to_string(g.gamma_hat);
  s["witnesses"] = int_list(g.witnesses);
  s["excluded"] = int_list(g.excluded);
  s["warnings"] = string_list(g.warnings);
  em.emit(rows, s);
  for (const auto& w : g.warnings) std::cerr << "ffdyn: warning: " << w << '\n';
  return kExitOk;
}

int cmd_verify(const RunConfig& c, Emitter& em) {
  if (c.suite.empty()) throw UsageError("--suite is required");
  const SuiteResult r = run_suite(c.suite, c.samples, c.seed);
  em.emit(r.records, r.summary);
  for (const auto& rec : r.records) {
    if (rec.contains("ok") && !rec["ok"].get<bool>()) {
      std::cerr << "counterexample: " << rec.dump() << '\n';
    }
  }
  return r.failed == 0 ? kExitOk : kExitDomain;
}

// ---------------------------------------------------------------------------
// Config file and environment

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    out[trim(line.substr(0, eq))] = value;
  }
  return out;
}

std::string env_name(const std::string& key) {
  std::string s = "FFDYN_";
  for (char ch : key) s += ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

bool given(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// Appends values from FFDYN_* variables and then the config file for options
// of the selected subcommand that the command line leaves unset.
std::vector<std::string> merge_defaults(CLI::App& app, std::vector<std::string> args) {
  CLI::App* sub = nullptr;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    if (!sub && args[i].rfind("-", 0) != 0) {
      for (auto* s : app.get_subcommands([](CLI::App*) { return true; })) {
        if (s->get_name() == args[i]) sub = s;
      }
    }
  }
  if (!sub) return args;
  std::map<std::string, std::string> config;
  if (!config_path.empty()) config = read_config(config_path);
  const auto known = [&](const std::string& key) {
    for (auto* s : app.get_subcommands([](CLI::App*) { return true; })) {
      if (s->get_option_no_throw("--" + key)) return true;
    }
    return app.get_option_no_throw("--" + key) != nullptr;
  };
  for (const auto& [k, v] : config) {
    if (!known(k)) throw UsageError("unknown config key '" + k + "'");
  }
  std::vector<std::string> extra;
  std::vector<CLI::Option*> options = sub->get_options();
  for (CLI::Option* opt : app.get_options()) options.push_back(opt);
  for (const CLI::Option* opt : options) {
    const std::string key = opt->get_single_name();
    if (key.empty() || key == "help" || key == "config" || opt->get_lnames().empty()) continue;
    const std::string flag = "--" + key;
    if (given(args, flag)) continue;
    std::optional<std::string> value;
    if (const char* env = std::getenv(env_name(key).c_str())) {
      value = env;
    } else if (auto it = config.find(key); it != config.end()) {
      value = it->second;
    }
    if (!value) continue;
    if (opt->get_type_size() == 0) {
      if (*value == "true" || *value == "1") extra.push_back(flag);
    } else {
      extra.push_back(flag);
      extra.push_back(*value);
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Arithmetic dynamics over the rational function field Q(t)", "ffdyn"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--output", c.output, "Write the report to this file");
  app.add_option("--config", c.config, "Flat key = value file with option defaults");

  const auto add_map = [&](CLI::App* s) { s->add_option("--map", c.map, "Rational map in z over Q(t)"); };
  const auto add_point = [&](CLI::App* s) { s->add_option("--point", c.point, "Point of P^1(K): element or inf"); };
  const auto add_places = [&](CLI::App* s) {
    s->add_option("--places", c.places, "Comma-separated places, e.g. \"t, t^2 + 1, inf\"");
  };
  const auto add_budget = [&](CLI::App* s) {
    s->add_option("--max-height", c.max_height, "Exact-arithmetic budget on iterate heights")
        ->check(CLI::PositiveNumber);
  };

  auto* height = app.add_subcommand("height", "Height of a field element or a map");
  height->add_option("value", c.value, "Field element or map")->required();

  auto* canheight = app.add_subcommand("canheight", "Certified enclosure of the canonical height");
  add_map(canheight);
  add_point(canheight);
  canheight->add_option("--depth", c.canheight_depth, "Iterates used")->check(CLI::NonNegativeNumber);
  add_budget(canheight);

  auto* classify = app.add_subcommand("classify", "Preperiodic or wandering");
  add_map(classify);
  add_point(classify);
  add_budget(classify);

  auto* scan = app.add_subcommand("orbit-scan", "Quasi-integral orbit elements against a target");
  add_map(scan);
  add_point(scan);
  add_places(scan);
  scan->add_option("--target", c.target, "Target point A (default inf)");
  scan->add_option("--epsilon", c.epsilon, "Rational in (0,1]");
  scan->add_option("--max-n", c.max_n, "Largest orbit index")->check(CLI::PositiveNumber);
  scan->add_option("--depth", c.depth, "Canonical height depth")->check(CLI::PositiveNumber);
  scan->add_option("--params", c.params, "Bound constants file (name = p/q lines)");
  scan->add_flag("--assume-wandering", c.assume_wandering, "Skip the wandering certificate");
  add_budget(scan);

  auto* integral = app.add_subcommand("integral-count", "S-integral points in an orbit");
  add_map(integral);
  add_point(integral);
  add_places(integral);
  integral->add_option("--max-n", c.max_n, "Largest orbit index")->check(CLI::PositiveNumber);
  add_budget(integral);

  auto* units = app.add_subcommand("units-in-orbit", "S-units in an orbit");
  add_map(units);
  add_point(units);
  add_places(units);
  units->add_option("--max-n", c.max_n, "Largest orbit index")->check(CLI::PositiveNumber);
  add_budget(units);

  auto* multdep = app.add_subcommand("multdep", "Multiplicative dependence modulo S-units");
  add_map(multdep);
  add_point(multdep);
  add_places(multdep);
  multdep->add_option("--n-max", c.n_max, "1 <= n <= n-max")->check(CLI::PositiveNumber);
  multdep->add_option("--k-max", c.k_max, "0 <= k <= k-max")->check(CLI::PositiveNumber);
  multdep->add_option("--r-max", c.r_max, "1 <= r <= r-max")->check(CLI::PositiveNumber);
  multdep->add_option("--s-max", c.s_max, "1 <= |s| <= s-max")->check(CLI::PositiveNumber);
  multdep->add_flag("--classify", c.classify_cases, "Label solutions (polynomial maps)");
  add_budget(multdep);

  auto* split = app.add_subcommand("split-form-scan", "Zeros of a split multilinear form on an orbit");
  split->add_option("--form", c.form, "Form in T1..Tk, e.g. \"T1*T2 - t\"");
  add_map(split);
  add_point(split);
  split->add_option("--max-n", c.max_n, "Largest orbit index")->check(CLI::NonNegativeNumber);
  add_budget(split);

  auto* choose = app.add_subcommand("choose-m", "Smallest m with 5 max e <= epsilon d^m");
  add_map(choose);
  choose->add_option("--target", c.target, "Target point A (default inf)");
  choose->add_option("--epsilon", c.epsilon, "Positive rational");
  choose->add_option("--cap", c.cap, "Largest m tried")->check(CLI::PositiveNumber);

  auto* gamma = app.add_subcommand("estimate-gamma", "Empirical index constant over a family");
  gamma->add_option("--instance", c.instances, "\"map;target;point\" (repeatable)");
  add_places(gamma);
  gamma->add_option("--epsilon", c.epsilon, "Rational in (0,1]");
  gamma->add_option("--max-n", c.max_n, "Largest orbit index")->check(CLI::PositiveNumber);
  gamma->add_option("--depth", c.depth, "Canonical height depth")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Run a seeded property suite");
  verify->add_option("--suite", c.suite, "Suite name")->check(CLI::IsMember(suite_names()));
  verify->add_option("--samples", c.samples, "Instances")->check(CLI::PositiveNumber);
  verify->add_option("--seed", c.seed, "Random seed");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = merge_defaults(app, args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ffdyn: error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ffdyn: error: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::map<CLI::App*, int (*)(const RunConfig&, Emitter&)> dispatch{
      {height, cmd_height},         {canheight, cmd_canheight},
      {classify, cmd_classify},     {scan, cmd_orbit_scan},
      {integral, cmd_integral_count}, {units, cmd_units},
      {multdep, cmd_multdep},       {split, cmd_split_form},
      {choose, cmd_choose_m},       {gamma, cmd_estimate_gamma},
      {verify, cmd_verify}};
  try {
    Emitter em(c);
    for (const auto& [sub, fn] : dispatch) {
      if (sub->parsed()) return fn(c, em);
    }
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "ffdyn: error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "ffdyn: error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "ffdyn: error: " << e.what() << '\n';
    return kExitDomain;
  }
}
