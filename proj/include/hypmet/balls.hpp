#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hypmet/geodesics.hpp"
#include "hypmet/metrics.hpp"
#include "hypmet/supsearch.hpp"

namespace hypmet {

struct EuclideanBall {
  Vec center;
  double radius;
};

// Hyperbolic balls of the unit ball and half-space are euclidean balls;
// this returns the euclidean center and radius of {y : rho(x, y) < M}.
inline EuclideanBall hyperbolic_ball_to_euclidean(const Domain& g, const Vec& x, double M) {
  if (!(M > 0.0)) throw std::invalid_argument("ball radius must be positive");
  require_inside(g, x);
  if (g.kind == Domain::Kind::half_space) {
    Vec c = x;
    c[g.dim - 1] = x.back() * std::cosh(M);
    return {c, x.back() * std::sinh(M)};
  }
  if (g.kind == Domain::Kind::unit_ball) {
    double t = std::tanh(0.5 * M);
    double x2 = norm2(x);
    double den = 1.0 - x2 * t * t;
    return {x * ((1.0 - t * t) / den), (1.0 - x2) * t / den};
  }
  throw std::invalid_argument("hyperbolic balls need the unit ball or half-space");
}

// Factors (a, A) with B(x, a d(x)) inside the hyperbolic ball D(x, M)
// inside B(x, A d(x)).
inline std::pair<double, double> inclusion_radii(const Domain& g, const Vec& x, double M) {
  if (!(M > 0.0)) throw std::invalid_argument("ball radius must be positive");
  require_inside(g, x);
  if (g.kind == Domain::Kind::half_space) return {1.0 - std::exp(-M), std::exp(M) - 1.0};
  if (g.kind == Domain::Kind::unit_ball) {
    double t = std::tanh(0.5 * M);
    double r = norm(x);
    return {t * (1.0 + r) / (1.0 + r * t), t * (1.0 + r) / (1.0 - r * t)};
  }
  throw std::invalid_argument("inclusion radii need the unit ball or half-space");
}

// ---------------------------------------------------------------------------
// Unified metric evaluation. Closed forms give zero-width brackets; the
// quasihyperbolic oracle gives a certified bracket; the sup-based metrics
// report their certified lower bound in both slots.

struct EvalOptions {
  KOptions k;
  SupSearchConfig sup;
};

inline DistanceBracket evaluate_metric(const Domain& g, MetricKind kind, const Vec& x,
                                       const Vec& y, const EvalOptions& opt = {}) {
  if (!metric_valid_on(kind, g))
    throw std::invalid_argument("metric is not defined on domain " + g.name());
  auto exact = [](double v) { return DistanceBracket{v, v}; };
  switch (kind) {
    case MetricKind::hyperbolic:
      return exact(g.kind == Domain::Kind::unit_ball ? rho_ball(x, y) : rho_halfspace(x, y));
    case MetricKind::quasihyperbolic: return quasihyperbolic(g, x, y, opt.k);
    case MetricKind::distance_ratio: return exact(distance_ratio_j(g, x, y));
    case MetricKind::distance_ratio_tilde: return exact(distance_ratio_jtilde(g, x, y));
    case MetricKind::apollonian: return exact(apollonian(g, x, y, opt.sup));
    case MetricKind::seittenranta: return exact(seittenranta(g, x, y, opt.sup));
    case MetricKind::chordal: return exact(chordal_distance(ExtendedPoint(x), ExtendedPoint(y)));
    case MetricKind::euclidean: return exact(dist(x, y));
    case MetricKind::m_ball: return exact(m_ball(x, y));
  }
  throw std::logic_error("unreachable metric dispatch");
}

// ---------------------------------------------------------------------------
// Metric ball boundary tracing.

struct BallTrace {
  Vec center;
  MetricKind kind = MetricKind::euclidean;
  double M = 0.0;
  std::vector<Vec> points;      // one per successful ray, ordered by angle
  std::vector<double> residuals;
  std::vector<int> failed_rays;  // ray indices where the metric never reached M
};

// Traces {y : metric(center, y) = M} in a planar domain by bisecting along
// rays from the center. Rays are marched outward from inside the ball, so a
// disconnected ball contributes its component containing the center; rays
// that hit the domain boundary first are marked failed.
inline BallTrace trace_ball_boundary(const Domain& g, MetricKind kind, const Vec& center,
                                     double M, int directions, const EvalOptions& opt = {}) {
  if (g.dim != 2) throw std::invalid_argument("ball tracing is planar only");
  if (!(M > 0.0)) throw std::invalid_argument("ball radius must be positive");
  if (directions < 4) throw std::invalid_argument("need at least 4 trace directions");
  require_inside(g, center);

  BallTrace tr;
  tr.center = center;
  tr.kind = kind;
  tr.M = M;
  bool numeric = kind == MetricKind::quasihyperbolic && !(g.kind == Domain::Kind::punctured_space ||
                                                          g.kind == Domain::Kind::half_space);
  double tol = numeric ? 1e-4 : 1e-9;

  auto metric_at = [&](const Vec& p) {
    return evaluate_metric(g, kind, center, p, opt).value();
  };

  double d0 = boundary_distance(g, center);
  for (int i = 0; i < directions; ++i) {
    double th = 2.0 * std::numbers::pi * i / directions;
    Vec u{std::cos(th), std::sin(th)};
    double t_lo = 1e-7 * d0;
    double t_hi = 0.0;
    bool bracketed = false;
    for (int it = 0; it < 400 && !bracketed; ++it) {
      double tn = t_lo * 1.22;
      Vec p = center + u * tn;
      if (contains(g, p)) {
        double v = metric_at(p);
        if (v >= M) {
          t_hi = tn;
          bracketed = true;
        } else {
          t_lo = tn;
        }
      } else {
        // The ray exits the domain; probe the inside-most point. The metric
        // blows up toward the boundary, so a crossing exists unless the ray
        // left essentially immediately.
        double a = t_lo, b = tn;
        for (int j = 0; j < 80; ++j) {
          double mid = 0.5 * (a + b);
          if (contains(g, center + u * mid)) a = mid;
          else b = mid;
        }
        if (a > t_lo && metric_at(center + u * a) >= M) {
          t_hi = a;
          bracketed = true;
        }
        break;
      }
    }
    if (!bracketed) {
      tr.failed_rays.push_back(i);
      continue;
    }
    for (int j = 0; j < 200; ++j) {
      double mid = 0.5 * (t_lo + t_hi);
      double v = metric_at(center + u * mid);
      if (v < M) t_lo = mid;
      else t_hi = mid;
      if (std::fabs(v - M) <= 0.25 * tol) break;
    }
    Vec p = center + u * (0.5 * (t_lo + t_hi));
    tr.points.push_back(p);
    tr.residuals.push_back(std::fabs(metric_at(p) - M));
  }
  return tr;
}

// ---------------------------------------------------------------------------
// Convexity classification of a closed planar trace.

enum class Convexity { strictly_convex, convex, non_convex };

inline const char* to_string(Convexity c) {
  switch (c) {
    case Convexity::strictly_convex: return "StrictlyConvex";
    case Convexity::convex: return "Convex";
    case Convexity::non_convex: return "NonConvex";
  }
  return "?";
}

struct ConvexityResult {
  Convexity verdict = Convexity::convex;
  std::array<Vec, 3> witness{};  // only meaningful for non_convex
  double min_cross = 0.0;
  double tolerance = 0.0;
};

// Sweeps signed cross products of consecutive edge pairs. Values within
// tolerance of zero count as flat, separating Convex from StrictlyConvex at
// critical radii.
inline ConvexityResult convexity_classify(const BallTrace& tr, double tol_scale = 1e-9) {
  if (tr.points.size() < 64) throw std::invalid_argument("classification needs >= 64 trace points");
  if (!tr.failed_rays.empty())
    throw std::invalid_argument("classification needs a closed trace (some rays failed)");
  const auto& pts = tr.points;
  size_t m = pts.size();
  double scale = 0.0;
  for (const Vec& p : pts) scale = std::fmax(scale, dist(p, tr.center));
  double tol = tol_scale * scale * scale;

  double turn = 0.0;
  for (size_t i = 0; i < m; ++i) {
    Vec e1 = pts[(i + 1) % m] - pts[i];
    Vec e2 = pts[(i + 2) % m] - pts[(i + 1) % m];
    turn += std::atan2(cross2(e1, e2), dot(e1, e2));
  }
  if (std::fabs(turn - 2.0 * std::numbers::pi) > 0.5)
    throw std::invalid_argument("trace is not a simple counter-clockwise loop");

  ConvexityResult res;
  res.tolerance = tol;
  res.min_cross = std::numeric_limits<double>::infinity();
  bool flat = false;
  for (size_t i = 0; i < m; ++i) {
    const Vec& p1 = pts[i];
    const Vec& p2 = pts[(i + 1) % m];
    const Vec& p3 = pts[(i + 2) % m];
    double c = cross2(p2 - p1, p3 - p2);
    if (c < res.min_cross) {
      res.min_cross = c;
      res.witness = {p1, p2, p3};
    }
    if (c <= tol) flat = true;
  }
  if (res.min_cross < -tol) res.verdict = Convexity::non_convex;
  else res.verdict = flat ? Convexity::convex : Convexity::strictly_convex;
  return res;
}

// ---------------------------------------------------------------------------
// Diameters of metric spheres.

// Diameter of the distance-ratio sphere of radius M around a point whose
// ball is the euclidean ball of radius 1 - e^{-M}: log(2 e^M - 1), always
// less than 2M.
inline double j_sphere_diameter(double M) {
  if (!(M > 0.0)) throw std::invalid_argument("radius must be positive");
  return std::log(2.0 * std::exp(M) - 1.0);
}

struct DiameterBracket {
  double lower = 0.0;
  double upper = 0.0;
};

// Numeric diameter of the quasihyperbolic sphere: max pairwise distance
// over traced boundary points. Exact where k has closed form; otherwise
// the per-pair brackets propagate.
inline DiameterBracket k_sphere_diameter_numeric(const Domain& g, const Vec& x, double M,
                                                 int samples, const EvalOptions& opt = {}) {
  BallTrace tr = trace_ball_boundary(g, MetricKind::quasihyperbolic, x, M, samples, opt);
  if (tr.points.size() < 2) throw std::runtime_error("trace failure: too few boundary points");
  DiameterBracket d;
  for (size_t i = 0; i < tr.points.size(); ++i)
    for (size_t j = i + 1; j < tr.points.size(); ++j) {
      DistanceBracket b = evaluate_metric(g, MetricKind::quasihyperbolic, tr.points[i],
                                          tr.points[j], opt);
      d.lower = std::fmax(d.lower, b.lower);
      d.upper = std::fmax(d.upper, b.upper);
    }
  return d;
}

// Counts connected components of {y : metric(x, y) < M} on a grid; the
// distance-ratio balls may be disconnected for large M.
inline int count_ball_components(const Domain& g, MetricKind kind, const Vec& x, double M,
                                 int res, const EvalOptions& opt = {}) {
  if (g.dim != 2) throw std::invalid_argument("component counting is planar only");
  auto [lo, span] = detail::grid_box(g, x, x);
  double h = span / (res - 1);
  std::vector<char> in(size_t(res) * res, 0);
  for (int iy = 0; iy < res; ++iy)
    for (int ix = 0; ix < res; ++ix) {
      Vec p{lo.x() + ix * h, lo.y() + iy * h};
      if (!contains(g, p)) continue;
      if (evaluate_metric(g, kind, x, p, opt).value() < M) in[size_t(iy) * res + ix] = 1;
    }
  int comps = 0;
  std::vector<size_t> stack;
  for (size_t s = 0; s < in.size(); ++s) {
    if (in[s] != 1) continue;
    ++comps;
    stack.push_back(s);
    in[s] = 2;
    while (!stack.empty()) {
      size_t id = stack.back();
      stack.pop_back();
      int ix = int(id % res), iy = int(id / res);
      const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        int jx = ix + dx[k], jy = iy + dy[k];
        if (jx < 0 || jy < 0 || jx >= res || jy >= res) continue;
        size_t jd = size_t(jy) * res + jx;
        if (in[jd] == 1) {
          in[jd] = 2;
          stack.push_back(jd);
        }
      }
    }
  }
  return comps;
}

}  // namespace hypmet
