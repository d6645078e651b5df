#include "ffdyn/heights.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ffdyn/errors.hpp"
#include "ffdyn/expr_io.hpp"

namespace ffdyn {

namespace {

Rational int_pow(long base, int e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return Rational(r);
}

std::string trim_copy(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long coefficient_bits(const ProjectivePoint& P) {
  long bits = 0;
  for (const Polynomial* p : {&P.x0(), &P.x1()}) {
    for (const auto& c : p->coefficients()) {
      bits += static_cast<long>(mpz_sizeinbase(c.get_num_mpz_t(), 2) +
                                mpz_sizeinbase(c.get_den_mpz_t(), 2));
    }
  }
  return bits;
}

}  // namespace

BoundParams BoundParams::parse(const std::string& text) {
  BoundParams out;
  const std::map<std::string, std::optional<Rational> BoundParams::*> fields{
      {"gamma", &BoundParams::gamma},   {"gamma1", &BoundParams::gamma1},
      {"gamma2", &BoundParams::gamma2}, {"gamma3", &BoundParams::gamma3},
      {"gamma4", &BoundParams::gamma4}, {"kappa1", &BoundParams::kappa1},
      {"kappa2", &BoundParams::kappa2}, {"c1", &BoundParams::c1},
      {"c2", &BoundParams::c2},         {"c3", &BoundParams::c3},
      {"c4", &BoundParams::c4}};
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim_copy(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("bound params line " + std::to_string(lineno) + ": expected name = p/q");
    }
    const std::string key = trim_copy(line.substr(0, eq));
    const auto it = fields.find(key);
    if (it == fields.end()) throw std::invalid_argument("unknown bound parameter '" + key + "'");
    out.*(it->second) = parse_rational(line.substr(eq + 1));
  }
  if (out.kappa1 && *out.kappa1 <= 0) throw std::invalid_argument("kappa1 must be positive");
  if (out.kappa2 && (*out.kappa2 <= 0 || *out.kappa2 >= 1)) {
    throw std::invalid_argument("kappa2 must lie in (0,1)");
  }
  return out;
}

BoundParams BoundParams::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read bound params file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

int map_height(const RationalMap& phi) {
  return std::max(0, std::max(phi.F().t_degree(), phi.G().t_degree()));
}

IterateHeightCheck iterate_height_check(const RationalMap& phi, int n, int max_degree) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  const int d = phi.degree();
  if (d < 2) throw DomainError("iterate heights need degree at least 2");
  if (int_pow(d, n) > max_degree) throw DomainError("iterate budget exceeded");
  IterateHeightCheck out;
  out.n = n;
  out.lhs = map_height(power(phi, n));
  out.sharp_rhs = (int_pow(d, n) - 1) / (d - 1) * map_height(phi);
  out.stated_rhs = out.sharp_rhs + Rational(d * d) * (int_pow(d, n - 1) - 1) / (d - 1) * Rational(21, 10);
  out.holds = out.lhs <= out.sharp_rhs;
  return out;
}

Rational displacement_bound(const RationalMap& phi) {
  const int h = map_height(phi);
  return Rational(h + std::max(phi.resultant().degree(), 0) + 2 * phi.degree() * h);
}

HeightInterval canonical_height_in_orbit(const RationalMap& phi, const OrbitPrefix& orbit, int n,
                                         int depth) {
  const int d = phi.degree();
  if (d < 2) throw DomainError("canonical heights need degree at least 2");
  const int last = static_cast<int>(orbit.points.size()) - 1;
  if (n < 0 || n > last) throw std::out_of_range("orbit index outside the computed prefix");
  const int j = std::min(n + depth, last);
  const int k = j - n;
  const Rational dk = int_pow(d, k);
  const Rational center = Rational(orbit.points[static_cast<std::size_t>(j)].height()) / dk;
  const Rational radius = displacement_bound(phi) / (dk * (d - 1));
  HeightInterval out;
  out.lo = center - radius;
  if (out.lo < 0) out.lo = 0;
  out.hi = center + radius;
  out.depth = k;
  return out;
}

HeightInterval canonical_height(const RationalMap& phi, const ProjectivePoint& P, int N,
                                int max_height) {
  if (N < 0) throw std::invalid_argument("depth must be nonnegative");
  if (phi.degree() < 2) throw DomainError("canonical heights need degree at least 2");
  return canonical_height_in_orbit(phi, orbit_prefix(phi, P, N, max_height), 0, N);
}

Classification classify_preperiodic(const RationalMap& phi, const ProjectivePoint& P,
                                    const ClassifyOptions& options) {
  const int d = phi.degree();
  if (d < 2) throw DomainError("classification needs degree at least 2");
  const Rational B = displacement_bound(phi);
  const int hphi = map_height(phi);
  std::map<ProjectivePoint, int> seen;
  OrbitPrefix orbit;
  orbit.points.push_back(P);
  for (int n = 0; n <= options.max_iterates; ++n) {
    const ProjectivePoint& x = orbit.points.back();
    if (auto [it, fresh] = seen.emplace(x, n); !fresh) {
      return Preperiodic{it->second, n - it->second};
    }
    // The enclosure at depth n excludes 0 iff h(x_n) (d - 1) > B.
    if (Rational(x.height() * (d - 1)) > B) {
      const int target = std::max(n, options.report_depth);
      while (static_cast<int>(orbit.points.size()) - 1 < target) {
        const ProjectivePoint& y = orbit.points.back();
        if (static_cast<long>(d) * y.height() + hphi > options.max_height) break;
        orbit.points.push_back(apply(phi, y));
      }
      const HeightInterval I = canonical_height_in_orbit(phi, orbit, 0, target);
      return Wandering{I.lo, I.depth, n};
    }
    if (coefficient_bits(x) > options.max_coefficient_bits) {
      throw DomainError("orbit coefficients exceed the size cap after " + std::to_string(n) +
                        " iterates (isotrivial map?)");
    }
    if (static_cast<long>(d) * x.height() + hphi > options.max_height) {
      throw DomainError("orbit height budget exhausted without a decision");
    }
    orbit.points.push_back(apply(phi, x));
  }
  throw DomainError("no decision within " + std::to_string(options.max_iterates) + " iterates");
}

LatticeScan hmin_lattice_scan(const RationalMap& phi, int deg_bound, int coeff_height_bound, int N,
                              long max_points) {
  if (deg_bound < 0 || coeff_height_bound < 0) {
    throw std::invalid_argument("lattice bounds must be nonnegative");
  }
  std::set<Rational> grid{Rational(0)};
  for (int q = 1; q <= coeff_height_bound; ++q) {
    for (int p = 1; p <= coeff_height_bound; ++p) {
      Rational r(p, q);
      r.canonicalize();
      grid.insert(r);
      grid.insert(-r);
    }
  }
  const std::vector<Rational> values(grid.begin(), grid.end());
  double count = 1;
  for (int i = 0; i <= deg_bound; ++i) count *= static_cast<double>(values.size());
  if (count * count > static_cast<double>(max_points)) {
    throw DomainError("lattice too large (" + std::to_string(static_cast<long>(count * count)) +
                      " coordinate pairs)");
  }
  std::vector<Polynomial> polys;
  std::vector<std::size_t> idx(static_cast<std::size_t>(deg_bound) + 1, 0);
  for (;;) {
    std::vector<Rational> c;
    for (auto i : idx) c.push_back(values[i]);
    polys.emplace_back(c);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == values.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  std::set<ProjectivePoint> points;
  for (const auto& a : polys) {
    for (const auto& b : polys) {
      if (a.is_zero() && b.is_zero()) continue;
      points.insert(ProjectivePoint(a, b));
    }
  }
  if (points.empty()) throw DomainError("empty lattice");
  LatticeScan out{Rational(0), ProjectivePoint::infinity(), 0, 0, 0};
  bool found = false;
  for (const auto& P : points) {
    ++out.points;
    Classification c;
    try {
      c = classify_preperiodic(phi, P);
    } catch (const DomainError&) {
      ++out.undecided;
      continue;
    }
    if (!std::holds_alternative<Wandering>(c)) continue;
    ++out.wandering;
    const Rational hi = canonical_height(phi, P, N).hi;
    if (!found || hi < out.min_positive_upper) {
      out.min_positive_upper = hi;
      out.witness = P;
      found = true;
    }
  }
  if (!found) throw DomainError("no certified wandering point in the lattice");
  return out;
}

}  // namespace ffdyn
