#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "hypmet/domain.hpp"
#include "hypmet/extended.hpp"
#include "hypmet/vec.hpp"

namespace hypmet {

enum class MetricKind {
  hyperbolic,          // rho, unit ball / half-space only
  quasihyperbolic,     // k
  distance_ratio,      // j
  distance_ratio_tilde,  // j~
  apollonian,          // alpha
  seittenranta,        // delta
  chordal,             // q
  euclidean,
  m_ball,              // the non-metric radial comparison function on B^n
};

inline MetricKind parse_metric(const std::string& s) {
  if (s == "rho") return MetricKind::hyperbolic;
  if (s == "k") return MetricKind::quasihyperbolic;
  if (s == "j") return MetricKind::distance_ratio;
  if (s == "jtilde") return MetricKind::distance_ratio_tilde;
  if (s == "alpha") return MetricKind::apollonian;
  if (s == "delta") return MetricKind::seittenranta;
  if (s == "q") return MetricKind::chordal;
  if (s == "euclid") return MetricKind::euclidean;
  if (s == "mball") return MetricKind::m_ball;
  throw std::invalid_argument("unknown metric: " + s);
}

inline bool metric_valid_on(MetricKind kind, const Domain& g) {
  switch (kind) {
    case MetricKind::hyperbolic:
      return g.kind == Domain::Kind::unit_ball || g.kind == Domain::Kind::half_space;
    case MetricKind::m_ball: return g.kind == Domain::Kind::unit_ball;
    default: return true;
  }
}

inline void require_inside(const Domain& g, const Vec& x) {
  if (!contains(g, x)) throw std::domain_error("point outside domain " + g.name());
}

// Hyperbolic distance of the unit ball,
//   rho = 2 asinh( |x-y| / sqrt((1-|x|^2)(1-|y|^2)) ).
inline double rho_ball(const Vec& x, const Vec& y) {
  double x2 = norm2(x), y2 = norm2(y);
  if (x2 >= 1.0 || y2 >= 1.0) throw std::domain_error("point outside the unit ball");
  double s = dist(x, y) / std::sqrt((1.0 - x2) * (1.0 - y2));
  return 2.0 * std::asinh(s);
}

// Hyperbolic distance of the upper half-space,
//   rho = acosh(1 + |x-y|^2 / (2 x_n y_n)),
// which reduces to |log(r/s)| on the vertical axis.
inline double rho_halfspace(const Vec& x, const Vec& y) {
  double xn = x.back(), yn = y.back();
  if (xn <= 0.0 || yn <= 0.0) throw std::domain_error("point outside the half-space");
  double d2 = norm2(x - y);
  return std::acosh(1.0 + d2 / (2.0 * xn * yn));
}

// Quasihyperbolic distance of the punctured space,
//   k(x,y) = sqrt(phi^2 + log^2(|x|/|y|)),  phi = angle(x, 0, y).
inline double quasihyperbolic_punctured(const Vec& x, const Vec& y) {
  double rx = norm(x), ry = norm(y);
  if (rx == 0.0 || ry == 0.0) throw std::domain_error("point at the puncture");
  double phi = angle_between(x, y);
  double lr = std::log(rx / ry);
  return std::sqrt(phi * phi + lr * lr);
}

// Distance ratio metric j = log(1 + |x-y| / min(d(x), d(y))).
inline double distance_ratio_j(const Domain& g, const Vec& x, const Vec& y) {
  require_inside(g, x);
  require_inside(g, y);
  double dmin = std::fmin(boundary_distance(g, x), boundary_distance(g, y));
  return std::log1p(dist(x, y) / dmin);
}

// The two-sided variant j~ = log((1 + |x-y|/d(x)) (1 + |x-y|/d(y))).
inline double distance_ratio_jtilde(const Domain& g, const Vec& x, const Vec& y) {
  require_inside(g, x);
  require_inside(g, y);
  double r = dist(x, y);
  return std::log1p(r / boundary_distance(g, x)) + std::log1p(r / boundary_distance(g, y));
}

// Radial comparison function on the unit ball,
//   m(x,y) = 2 log(1 + |x-y| / (2 min(d(x), d(y)))).
// Not a metric: radial triples violate the triangle inequality.
inline double m_ball(const Vec& x, const Vec& y) {
  double rx = norm(x), ry = norm(y);
  if (rx >= 1.0 || ry >= 1.0) throw std::domain_error("point outside the unit ball");
  double dmin = std::fmin(1.0 - rx, 1.0 - ry);
  return 2.0 * std::log1p(dist(x, y) / (2.0 * dmin));
}

// ---------------------------------------------------------------------------
// Metric transforms: maps t -> h(t) applied to an existing metric.

struct MetricTransform {
  enum class Mode { power, concave, max_power };
  Mode mode;
  double a = 1.0;  // power exponent in (0, 1]
  double b = 1.0;  // upper exponent >= 1 for max_power
  std::function<double(double)> h;  // concave mode: increasing, h(0)=0, h(t)/t decreasing

  static MetricTransform power(double a) {
    if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("power exponent must lie in (0,1]");
    return {Mode::power, a, 1.0, {}};
  }
  static MetricTransform concave(std::function<double(double)> h) {
    return {Mode::concave, 1.0, 1.0, std::move(h)};
  }
  static MetricTransform max_power(double a, double b) {
    if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("lower exponent must lie in (0,1]");
    if (!(b >= 1.0)) throw std::invalid_argument("upper exponent must be >= 1");
    return {Mode::max_power, a, b, {}};
  }

  double apply(double d) const {
    switch (mode) {
      case Mode::power: return std::pow(d, a);
      case Mode::concave: return h(d);
      case Mode::max_power: return std::fmax(std::pow(d, a), std::pow(d, b));
    }
    return d;
  }

  // c such that rho(x,y) <= c (rho(x,z) + rho(z,y)) is guaranteed.
  double quasi_constant() const {
    return mode == Mode::max_power ? std::exp2(b - 1.0) : 1.0;
  }
};

// Margin of the c-quasi-triangle inequality for one value triple:
//   c (d_xz + d_zy) - d_xy, nonnegative when the inequality holds.
inline double quasi_triangle_margin(double d_xy, double d_xz, double d_zy, double c = 1.0) {
  return c * (d_xz + d_zy) - d_xy;
}

}  // namespace hypmet
