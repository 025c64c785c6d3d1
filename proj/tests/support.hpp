#pragma once

#include <vector>

#include "hypmet/domain.hpp"
#include "hypmet/mobius.hpp"
#include "hypmet/rng.hpp"

namespace hypmet::testing {

// Interior point with distance to the boundary bounded away from zero, so
// closed-form comparisons stay well conditioned.
inline Vec interior_point(const Domain& g, Rng& rng, double margin = 0.02) {
  for (int tries = 0; tries < 10000; ++tries) {
    Vec p(g.dim);
    switch (g.kind) {
      case Domain::Kind::unit_ball:
      case Domain::Kind::punctured_ball: p = rng.in_ball(g.dim); break;
      case Domain::Kind::half_space:
        for (int i = 0; i < g.dim - 1; ++i) p[i] = rng.uniform(-2.0, 2.0);
        p[g.dim - 1] = rng.uniform(0.0, 2.0);
        break;
      case Domain::Kind::punctured_space:
      case Domain::Kind::sector: {
        double r = std::exp(rng.uniform(-1.5, 1.5));
        double limit = g.kind == Domain::Kind::sector ? g.angle : 2.0 * std::numbers::pi;
        double th = rng.uniform(0.0, limit);
        p = {r * std::cos(th), r * std::sin(th)};
        break;
      }
      case Domain::Kind::polygon: {
        Vec lo = g.vertices[0], hi = g.vertices[0];
        for (const Vec& v : g.vertices)
          for (int i = 0; i < 2; ++i) {
            lo[i] = std::fmin(lo[i], v[i]);
            hi[i] = std::fmax(hi[i], v[i]);
          }
        p = {rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y())};
        break;
      }
    }
    if (contains(g, p) && boundary_distance(g, p) > margin * domain_scale(g)) return p;
  }
  throw std::runtime_error("interior_point: rejection sampling failed");
}

inline MobiusGenerator random_generator(Rng& rng, int n) {
  if (rng.unit() < 0.5) {
    Vec c(n);
    for (int i = 0; i < n; ++i) c[i] = rng.uniform(-2.0, 2.0);
    return Inversion(c, rng.uniform(0.5, 2.0));
  }
  Vec a = rng.on_sphere(n) * rng.uniform(0.5, 2.0);
  return Reflection(a, rng.uniform(-1.0, 1.0));
}

inline MobiusMap random_mobius(Rng& rng, int n, int generators) {
  MobiusMap m;
  for (int i = 0; i < generators; ++i) m.then(random_generator(rng, n));
  return m;
}

// Nonconvex L-shaped hexagon used as the stock polygon domain.
inline Domain l_shape() {
  return Domain::polygon({{0.0, 0.0}, {2.0, 0.0}, {2.0, 1.0}, {1.0, 1.0}, {1.0, 2.0}, {0.0, 2.0}});
}

}  // namespace hypmet::testing
