#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "hypmet/extended.hpp"
#include "hypmet/vec.hpp"

namespace hypmet {

// Inversion in the sphere S^{n-1}(center, radius):
//   x -> center + radius^2 (x - center) / |x - center|^2,
// exchanging the center with infinity.
struct Inversion {
  Vec center;
  double radius;
  Inversion(const Vec& c, double r) : center(c), radius(r) {
    if (!(r > 0)) throw std::invalid_argument("inversion radius must be positive");
  }
};

// Reflection in the hyperplane P(normal, offset) = {x : x . normal = offset}:
//   x -> x - 2 (x . normal - offset) normal / |normal|^2.
// The normal is stored unnormalized.
struct Reflection {
  Vec normal;
  double offset;
  Reflection(const Vec& a, double t) : normal(a), offset(t) {
    if (norm2(a) == 0) throw std::invalid_argument("reflection normal must be nonzero");
  }
};

using MobiusGenerator = std::variant<Inversion, Reflection>;

inline ExtendedPoint apply(const Inversion& g, const ExtendedPoint& x) {
  if (x.is_inf) return ExtendedPoint(g.center);
  Vec d = x.p - g.center;
  double d2 = norm2(d);
  if (d2 == 0.0) return ExtendedPoint::infinity();
  return ExtendedPoint(g.center + d * (g.radius * g.radius / d2));
}

inline ExtendedPoint apply(const Reflection& g, const ExtendedPoint& x) {
  if (x.is_inf) return x;
  double s = 2.0 * (dot(x.p, g.normal) - g.offset) / norm2(g.normal);
  return ExtendedPoint(x.p - g.normal * s);
}

// Composition of sphere inversions and hyperplane reflections, applied in
// the order the generators were appended. Every generator is an involution.
struct MobiusMap {
  std::vector<MobiusGenerator> generators;

  MobiusMap() = default;
  MobiusMap(std::initializer_list<MobiusGenerator> gs) : generators(gs) {}

  MobiusMap& then(MobiusGenerator g) {
    generators.push_back(std::move(g));
    return *this;
  }

  ExtendedPoint operator()(ExtendedPoint x) const {
    for (const auto& g : generators)
      x = std::visit([&](const auto& gen) { return apply(gen, x); }, g);
    return x;
  }

  Vec operator()(const Vec& x) const {
    ExtendedPoint r = (*this)(ExtendedPoint(x));
    if (r.is_inf) throw std::domain_error("image is the point at infinity");
    return r.p;
  }
};

}  // namespace hypmet
