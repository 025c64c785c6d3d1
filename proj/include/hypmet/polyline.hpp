#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "hypmet/quadrature.hpp"
#include "hypmet/vec.hpp"

namespace hypmet {

// Finite point sequence representing a path. Consecutive vertices must be
// distinct and the euclidean length finite.
struct Polyline {
  std::vector<Vec> vertices;

  Polyline() = default;
  explicit Polyline(std::vector<Vec> vs) : vertices(std::move(vs)) { validate(); }

  void validate() const {
    if (vertices.size() < 2) throw std::invalid_argument("polyline needs at least 2 vertices");
    for (size_t i = 0; i + 1 < vertices.size(); ++i) {
      vertices[i].same_dim(vertices[i + 1]);
      if (vertices[i] == vertices[i + 1])
        throw std::invalid_argument("polyline has coincident consecutive vertices");
    }
  }

  const Vec& front() const { return vertices.front(); }
  const Vec& back() const { return vertices.back(); }
  size_t size() const { return vertices.size(); }
};

inline double euclidean_length(const Polyline& p) {
  double s = 0.0;
  for (size_t i = 0; i + 1 < p.vertices.size(); ++i) s += dist(p.vertices[i], p.vertices[i + 1]);
  return s;
}

// Composite Gauss-Legendre integral of the density along one segment.
// A non-finite or non-positive density value poisons the result to +inf,
// which relaxation treats as "path left the domain".
template <class Density>
double weighted_segment_length(const Vec& a, const Vec& b, Density&& w, int order) {
  const QuadratureRule& rule = gauss_legendre(order);
  double len = dist(a, b);
  double acc = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    double wi = w(a + (b - a) * rule.nodes[i]);
    if (!(wi > 0.0) || !std::isfinite(wi)) return std::numeric_limits<double>::infinity();
    acc += rule.weights[i] * wi;
  }
  return len * acc;
}

template <class Density>
double weighted_length(const Polyline& p, Density&& w, int order = 8) {
  double s = 0.0;
  for (size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    s += weighted_segment_length(p.vertices[i], p.vertices[i + 1], w, order);
    if (!std::isfinite(s)) return s;
  }
  return s;
}

// Redistributes vertices uniformly by euclidean arc length, keeping the
// endpoints fixed.
inline Polyline resample(const Polyline& p, int count) {
  if (count < 2) throw std::invalid_argument("resample needs count >= 2");
  double total = euclidean_length(p);
  std::vector<Vec> out;
  out.reserve(count);
  out.push_back(p.vertices.front());
  size_t seg = 0;
  double seg_start = 0.0;
  double seg_len = dist(p.vertices[0], p.vertices[1]);
  for (int i = 1; i < count - 1; ++i) {
    double target = total * i / (count - 1);
    while (seg_start + seg_len < target && seg + 2 < p.vertices.size()) {
      seg_start += seg_len;
      ++seg;
      seg_len = dist(p.vertices[seg], p.vertices[seg + 1]);
    }
    double t = seg_len > 0 ? (target - seg_start) / seg_len : 0.0;
    Vec q = p.vertices[seg] + (p.vertices[seg + 1] - p.vertices[seg]) * t;
    if (!(q == out.back())) out.push_back(q);
  }
  if (!(p.vertices.back() == out.back())) out.push_back(p.vertices.back());
  if (out.size() < 2) out = {p.vertices.front(), p.vertices.back()};
  return Polyline(std::move(out));
}

}  // namespace hypmet
