#include "ffdyn/sampling.hpp"

namespace ffdyn::sampling {

long uniform(Engine& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

Rational small_rational(Engine& rng, long range) {
  Rational q(uniform(rng, -range, range), uniform(rng, 1, range));
  q.canonicalize();
  return q;
}

Polynomial polynomial(Engine& rng, int max_degree, long range) {
  const int deg = static_cast<int>(uniform(rng, 0, max_degree));
  std::vector<Rational> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(uniform(rng, -range, range));
  return Polynomial(c);
}

FieldElement element(Engine& rng, int max_degree, long range) {
  Polynomial den = polynomial(rng, std::max(0, max_degree - 1), range);
  if (den.is_zero()) den = Polynomial(1);
  return FieldElement(polynomial(rng, max_degree, range), den);
}

FieldElement nonzero_element(Engine& rng, int max_degree, long range) {
  for (;;) {
    FieldElement x = element(rng, max_degree, range);
    if (!x.is_zero()) return x;
  }
}

ProjectivePoint point(Engine& rng, int max_degree, long range) {
  if (rng() % 10 == 0) return ProjectivePoint::infinity();
  Polynomial x1 = polynomial(rng, max_degree, range);
  if (x1.is_zero()) x1 = Polynomial(1);
  return ProjectivePoint(polynomial(rng, max_degree, range), x1);
}

RationalMap map(Engine& rng, int d, int max_t_degree) {
  for (;;) {
    std::vector<Polynomial> f, g;
    for (int i = 0; i <= d; ++i) {
      f.push_back(polynomial(rng, max_t_degree, 2));
      g.push_back(polynomial(rng, max_t_degree, 2));
    }
    if (rng() % 3 == 0) g.assign(1, Polynomial(uniform(rng, 1, 3)));
    const ZPolynomial F(f), G(g);
    if (F.is_zero() || G.is_zero()) continue;
    RationalMap phi = normalize_map(F, G);
    if (phi.degree() == d) return phi;
  }
}

const std::vector<Place>& place_pool() {
  static const std::vector<Place> pool = [] {
    std::vector<Place> out;
    for (const Polynomial& p : {Polynomial{0, 1}, Polynomial{1, 1}, Polynomial{-1, 1},
                                Polynomial{2, 1}, Polynomial{1, 0, 1}, Polynomial{1, 1, 1},
                                Polynomial{-2, 0, 1}}) {
      out.push_back(Place::finite(p));
    }
    out.push_back(Place::infinity());
    return out;
  }();
  return pool;
}

Place place(Engine& rng) {
  const auto& pool = place_pool();
  return pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(pool.size()) - 1))];
}

PlaceSet place_subset(Engine& rng) {
  PlaceSet out;
  for (const auto& v : place_pool()) {
    if (rng() % 2 == 0) out.insert(v);
  }
  return out;
}

}  // namespace ffdyn::sampling
