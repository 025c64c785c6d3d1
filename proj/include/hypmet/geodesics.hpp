#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

#include "hypmet/domain.hpp"
#include "hypmet/metrics.hpp"
#include "hypmet/polyline.hpp"

namespace hypmet {

// Quasihyperbolic density 1/d(x, boundary); evaluates to +inf outside the
// domain so path searches reject escaping segments without throwing.
inline auto quasihyperbolic_density(const Domain& g) {
  return [&g](const Vec& p) -> double {
    if (!contains(g, p)) return std::numeric_limits<double>::infinity();
    return 1.0 / boundary_distance(g, p);
  };
}

inline auto ball_hyperbolic_density() {
  return [](const Vec& p) -> double {
    double r2 = norm2(p);
    if (r2 >= 1.0) return std::numeric_limits<double>::infinity();
    return 2.0 / (1.0 - r2);
  };
}

inline auto halfspace_hyperbolic_density() {
  return [](const Vec& p) -> double {
    double h = p.back();
    if (h <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / h;
  };
}

namespace detail {

// Orthonormal frame of the 2-plane through the origin spanned by two
// directions; lets planar circle geometry run inside R^n.
struct PlaneFrame {
  Vec u1, u2;
  Vec embed(double a, double b) const { return u1 * a + u2 * b; }
  std::pair<double, double> coords(const Vec& p) const { return {dot(p, u1), dot(p, u2)}; }
};

inline Vec any_orthogonal(const Vec& u) {
  int n = u.dim();
  int axis = 0;
  for (int i = 1; i < n; ++i)
    if (std::fabs(u[i]) < std::fabs(u[axis])) axis = i;
  Vec v = Vec::unit(n, axis) - u * u[axis];
  return normalized(v);
}

inline PlaneFrame plane_through(const Vec& x, const Vec& y) {
  Vec u1 = normalized(x);
  Vec w = y - u1 * dot(y, u1);
  double wn = norm(w);
  if (wn <= 1e-14 * norm(y)) return {u1, any_orthogonal(u1)};
  return {u1, w / wn};
}

}  // namespace detail

// Quasihyperbolic geodesic of the punctured space: the logarithmic spiral
//   r(omega) = |x| exp((omega/phi) log(|y|/|x|)),  omega in [0, phi],
// in the 2-plane through 0, x, y, sampled as a polyline. With phi = 0 the
// spiral degenerates to the radial segment. For antipodal points any plane
// containing the line through x, 0, y gives the same length.
inline Polyline spiral_geodesic(const Vec& x, const Vec& y, int samples) {
  double rx = norm(x), ry = norm(y);
  if (rx == 0.0 || ry == 0.0) throw std::domain_error("spiral endpoint at the puncture");
  if (samples < 2) throw std::invalid_argument("spiral needs at least 2 samples");
  if (x == y) throw std::invalid_argument("spiral endpoints coincide");

  double phi = angle_between(x, y);
  detail::PlaneFrame fr = detail::plane_through(x, y);
  double logratio = std::log(ry / rx);

  std::vector<Vec> vs;
  vs.reserve(samples);
  vs.push_back(x);
  for (int i = 1; i < samples - 1; ++i) {
    double t = double(i) / (samples - 1);
    double omega = phi * t;
    double r = rx * std::exp(logratio * t);
    vs.push_back(fr.embed(r * std::cos(omega), r * std::sin(omega)));
  }
  vs.push_back(y);
  return Polyline(std::move(vs));
}

// Hyperbolic geodesic of the unit ball: the circular arc through x and y
// orthogonal to the unit sphere (the diameter chord when 0, x, y are
// collinear), with its two ideal endpoints on the sphere ordered so the
// arc runs ideal_x, x, y, ideal_y.
struct BallGeodesic {
  Polyline path;
  Vec ideal_x, ideal_y;
};

inline BallGeodesic ball_geodesic(const Vec& x, const Vec& y, int samples) {
  double rx = norm(x), ry = norm(y);
  if (rx >= 1.0 || ry >= 1.0) throw std::domain_error("point outside the unit ball");
  if (x == y) throw std::invalid_argument("geodesic endpoints coincide");
  if (samples < 2) throw std::invalid_argument("geodesic needs at least 2 samples");

  bool collinear;
  if (rx == 0.0 || ry == 0.0) {
    collinear = true;
  } else {
    Vec u = x / rx;
    Vec w = y - u * dot(y, u);
    collinear = norm(w) <= 1e-14 * ry;
  }

  if (collinear) {
    Vec u = normalized(y - x);
    std::vector<Vec> vs;
    vs.reserve(samples);
    for (int i = 0; i < samples; ++i) {
      double t = double(i) / (samples - 1);
      vs.push_back(x + (y - x) * t);
    }
    vs.front() = x;
    vs.back() = y;
    return {Polyline(std::move(vs)), -u, u};
  }

  detail::PlaneFrame fr = detail::plane_through(x, y);
  auto [x1, x2] = fr.coords(x);
  auto [y1, y2] = fr.coords(y);

  // Orthogonality to the unit sphere pins the circle center c by
  // 2 p . c = |p|^2 + 1 for p = x, y; then R^2 = |c|^2 - 1.
  double c1 = (rx * rx + 1.0) / (2.0 * rx);  // x = (rx, 0) in the frame
  double c2 = ((y1 * y1 + y2 * y2 + 1.0) / 2.0 - y1 * c1) / y2;
  double cc = c1 * c1 + c2 * c2;
  double radius = std::sqrt(cc - 1.0);

  double ax = std::atan2(x2 - c2, x1 - c1);
  double ay = std::atan2(y2 - c2, y1 - c1);
  double sweep = std::remainder(ay - ax, 2.0 * std::numbers::pi);

  std::vector<Vec> vs;
  vs.reserve(samples);
  vs.push_back(x);
  for (int i = 1; i < samples - 1; ++i) {
    double th = ax + sweep * i / (samples - 1);
    vs.push_back(fr.embed(c1 + radius * std::cos(th), c2 + radius * std::sin(th)));
  }
  vs.push_back(y);

  // Ideal endpoints: intersection of the arc's circle with the unit circle,
  // which lies on the chord {p . c = 1}.
  double f1 = c1 / cc, f2 = c2 / cc;
  double t = std::sqrt(std::fmax(0.0, 1.0 - 1.0 / cc));
  double pn = std::sqrt(cc);
  double d1 = -c2 / pn, d2 = c1 / pn;
  Vec ia = fr.embed(f1 + t * d1, f2 + t * d2);
  Vec ib = fr.embed(f1 - t * d1, f2 - t * d2);

  auto arc_offset = [&](const Vec& p) {
    auto [p1, p2] = fr.coords(p);
    double a = std::atan2(p2 - c2, p1 - c1);
    return std::remainder(a - ax, 2.0 * std::numbers::pi);
  };
  // The in-ball portion of the circle is a minor arc containing x and y;
  // the ideal point "behind" x has offset opposite in sign to the sweep.
  bool ia_behind = arc_offset(ia) * sweep < 0.0;
  Vec ideal_x = ia_behind ? ia : ib;
  Vec ideal_y = ia_behind ? ib : ia;
  return {Polyline(std::move(vs)), ideal_x, ideal_y};
}

// Hyperbolic distance of the ball via the cross ratio of the geodesic's
// ideal endpoints, log |x*, x, y, y*|.
inline double rho_ball_crossratio(const Vec& x, const Vec& y, const BallGeodesic& geo) {
  return std::log(absolute_ratio(ExtendedPoint(geo.ideal_x), ExtendedPoint(x), ExtendedPoint(y),
                                 ExtendedPoint(geo.ideal_y)));
}

// ---------------------------------------------------------------------------
// Log chart of the punctured plane: z -> (log |z|, arg z). The chart turns
// the quasihyperbolic metric into the euclidean one up to branch shifts of
// 2*pi in the second coordinate.

inline double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * std::numbers::pi);
  return w;  // in [-pi, pi]
}

inline Vec log_chart(const Vec& z) {
  if (z.dim() != 2 || norm2(z) == 0.0) throw std::domain_error("log chart needs a nonzero planar point");
  return {std::log(norm(z)), std::atan2(z.y(), z.x())};
}

inline Vec log_chart_inverse(const Vec& uv) {
  double r = std::exp(uv.x());
  return {r * std::cos(uv.y()), r * std::sin(uv.y())};
}

// Branch-minimal euclidean distance in the chart; equals the punctured
// plane's quasihyperbolic distance.
inline double chart_distance(const Vec& a, const Vec& b) {
  return std::hypot(b.x() - a.x(), wrap_angle(b.y() - a.y()));
}

// Chart displacement of the geodesic from z to x, with |angular part| <= pi.
inline Vec chart_leg(const Vec& z, const Vec& x) {
  Vec cz = log_chart(z), cx = log_chart(x);
  return {cx.x() - cz.x(), wrap_angle(cx.y() - cz.y())};
}

// Quasihyperbolic angle at vertex z between the geodesics toward x and y:
// the euclidean angle between the chart legs.
inline double qh_angle(const Vec& z, const Vec& x, const Vec& y) {
  Vec d1 = chart_leg(z, x);
  Vec d2 = chart_leg(z, y);
  if (norm2(d1) == 0.0 || norm2(d2) == 0.0)
    throw std::domain_error("quasihyperbolic angle at coincident chart points");
  return angle_between(d1, d2);
}

// ---------------------------------------------------------------------------
// Numeric geodesic machinery.

struct DistanceBracket {
  double lower = 0.0;
  double upper = 0.0;
  double value() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
};

struct GeodesicResult {
  Polyline path;
  double lower = 0.0;
  double upper = 0.0;
};

// Best closed-form lower bound available for the quasihyperbolic distance.
inline double quasihyperbolic_lower_bound(const Domain& g, const Vec& x, const Vec& y) {
  double lb = distance_ratio_j(g, x, y);
  if (g.kind == Domain::Kind::unit_ball) lb = std::fmax(lb, 0.5 * rho_ball(x, y));
  return lb;
}

namespace detail {

// Local descent on the weighted length: each interior vertex tries axis
// moves of a shrinking step until the sweep improvement stalls.
template <class Density>
double relax_polyline(Polyline& path, Density&& w, double step, int passes, int quad_order,
                      double tol) {
  int n = path.vertices.front().dim();
  auto seg_cost = [&](const Vec& a, const Vec& b) {
    if (a == b) return 0.0;
    return weighted_segment_length(a, b, w, quad_order);
  };
  size_t m = path.vertices.size();
  std::vector<double> cost(m - 1);
  for (size_t i = 0; i + 1 < m; ++i) cost[i] = seg_cost(path.vertices[i], path.vertices[i + 1]);

  double h = step;
  for (int pass = 0; pass < passes && h > 1e-14 * step; ++pass) {
    double gain = 0.0;
    for (size_t i = 1; i + 1 < m; ++i) {
      double base = cost[i - 1] + cost[i];
      Vec best = path.vertices[i];
      double best_cost = base;
      for (int axis = 0; axis < n; ++axis) {
        for (double s : {h, -h}) {
          Vec cand = path.vertices[i];
          cand[axis] += s;
          double c = seg_cost(path.vertices[i - 1], cand) + seg_cost(cand, path.vertices[i + 1]);
          if (c < best_cost) {
            best_cost = c;
            best = cand;
          }
        }
      }
      if (best_cost < base) {
        gain += base - best_cost;
        path.vertices[i] = best;
        cost[i - 1] = seg_cost(path.vertices[i - 1], path.vertices[i]);
        cost[i] = seg_cost(path.vertices[i], path.vertices[i + 1]);
      }
    }
    if (gain < tol) h *= 0.5;
  }
  double total = 0.0;
  for (double c : cost) total += c;
  return total;
}

struct GridBox {
  Vec lo;
  double span;
};

inline GridBox grid_box(const Domain& g, const Vec& x, const Vec& y) {
  switch (g.kind) {
    case Domain::Kind::unit_ball:
    case Domain::Kind::punctured_ball: return {{-1.0, -1.0}, 2.0};
    case Domain::Kind::punctured_space: {
      double r = 1.1 * std::fmax(norm(x), norm(y));
      return {{-r, -r}, 2.0 * r};
    }
    case Domain::Kind::sector: {
      double r = 1.5 * std::fmax(norm(x), norm(y));
      return {{-r, -r}, 2.0 * r};
    }
    case Domain::Kind::half_space: {
      double hx = std::fmax(x.back(), y.back());
      double d = dist(x, y);
      double r = d + 2.0 * hx;
      double cx = 0.5 * (x.x() + y.x());
      return {{cx - r, 0.0}, 2.0 * r};
    }
    case Domain::Kind::polygon: {
      Vec lo = g.vertices[0], hi = g.vertices[0];
      for (const Vec& v : g.vertices)
        for (int i = 0; i < 2; ++i) {
          lo[i] = std::fmin(lo[i], v[i]);
          hi[i] = std::fmax(hi[i], v[i]);
        }
      double span = std::fmax(hi.x() - lo.x(), hi.y() - lo.y());
      return {lo, span};
    }
  }
  return {{-1.0, -1.0}, 2.0};
}

}  // namespace detail

// Shortest-path oracle for the quasihyperbolic distance on planar domains:
// Dijkstra on an 8-connected grid restricted to the domain, followed by
// vertex relaxation of the polyline. Returns the relaxed path, the
// closed-form lower bound, and the path length as the upper bound.
inline GeodesicResult numeric_geodesic(const Domain& g, const Vec& x, const Vec& y, int grid_res,
                                       int refine_passes = 200) {
  if (g.dim != 2) throw std::invalid_argument("grid geodesic oracle is planar only");
  require_inside(g, x);
  require_inside(g, y);
  if (grid_res < 8) throw std::invalid_argument("grid resolution too small");
  if (x == y) throw std::invalid_argument("geodesic endpoints coincide");

  auto w = quasihyperbolic_density(g);
  auto [lo, span] = detail::grid_box(g, x, y);
  int res = grid_res;
  double h = span / (res - 1);

  auto node_point = [&](int ix, int iy) {
    return Vec{lo.x() + ix * h, lo.y() + iy * h};
  };
  std::vector<double> weight(size_t(res) * res, -1.0);  // -1 marks inadmissible
  for (int iy = 0; iy < res; ++iy)
    for (int ix = 0; ix < res; ++ix) {
      Vec p = node_point(ix, iy);
      if (contains(g, p)) weight[size_t(iy) * res + ix] = 1.0 / boundary_distance(g, p);
    }

  auto nearest_node = [&](const Vec& p) -> long {
    int ix = int(std::lround((p.x() - lo.x()) / h));
    int iy = int(std::lround((p.y() - lo.y()) / h));
    long best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int dy = -2; dy <= 2; ++dy)
      for (int dx = -2; dx <= 2; ++dx) {
        int jx = ix + dx, jy = iy + dy;
        if (jx < 0 || jy < 0 || jx >= res || jy >= res) continue;
        size_t id = size_t(jy) * res + jx;
        if (weight[id] < 0) continue;
        double d = dist(p, node_point(jx, jy));
        if (d < best_d) {
          best_d = d;
          best = long(id);
        }
      }
    return best;
  };

  long src = nearest_node(x), dst = nearest_node(y);
  if (src < 0 || dst < 0)
    throw std::runtime_error("grid resolution too coarse: endpoint has no admissible node");

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> distance(weight.size(), inf);
  std::vector<int> prev(weight.size(), -1);
  using QItem = std::pair<double, long>;
  std::priority_queue<QItem, std::vector<QItem>, std::greater<>> queue;
  distance[src] = 0.0;
  queue.push({0.0, src});
  const int nbr_dx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  const int nbr_dy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  while (!queue.empty()) {
    auto [d, id] = queue.top();
    queue.pop();
    if (d > distance[id]) continue;
    if (id == dst) break;
    int ix = int(id % res), iy = int(id / res);
    for (int k = 0; k < 8; ++k) {
      int jx = ix + nbr_dx[k], jy = iy + nbr_dy[k];
      if (jx < 0 || jy < 0 || jx >= res || jy >= res) continue;
      size_t jd = size_t(jy) * res + jx;
      if (weight[jd] < 0) continue;
      Vec a = node_point(ix, iy), b = node_point(jx, jy);
      if (!contains(g, (a + b) / 2.0)) continue;
      double step = dist(a, b) * 0.5 * (weight[id] + weight[jd]);
      if (distance[id] + step < distance[jd]) {
        distance[jd] = distance[id] + step;
        prev[jd] = int(id);
        queue.push({distance[jd], long(jd)});
      }
    }
  }
  if (!std::isfinite(distance[dst]))
    throw std::runtime_error("grid resolution too coarse: endpoints are disconnected");

  std::vector<Vec> chain;
  for (long id = dst; id >= 0; id = prev[id]) {
    chain.push_back(node_point(int(id % res), int(id / res)));
    if (id == src) break;
  }
  std::reverse(chain.begin(), chain.end());
  std::vector<Vec> vs;
  vs.push_back(x);
  for (const Vec& p : chain)
    if (!(p == vs.back())) vs.push_back(p);
  if (!(y == vs.back())) vs.push_back(y);
  if (vs.size() < 2) vs = {x, y};

  Polyline path(std::move(vs));
  int target_verts = std::clamp(int(euclidean_length(path) / h) + 2, 32, 256);
  path = resample(path, target_verts);
  double upper = detail::relax_polyline(path, w, h, refine_passes, 8, 1e-9);
  upper = weighted_length(path, w, 16);
  return {std::move(path), quasihyperbolic_lower_bound(g, x, y), upper};
}

// Options for the bulk quasihyperbolic evaluator.
struct KOptions {
  int vertices = 96;
  int relax_passes = 48;
  double relax_tol = 1e-9;
  int grid_res = 193;  // fallback grid when no analytic seed path exists
};

// Quasihyperbolic distance with a certified bracket. Closed forms where
// they exist; otherwise the best admissible path found (seeded from
// analytic candidates, refined by relaxation) gives the upper bound and
// the distance-ratio bound gives the lower one.
inline DistanceBracket quasihyperbolic(const Domain& g, const Vec& x, const Vec& y,
                                       const KOptions& opt = {}) {
  require_inside(g, x);
  require_inside(g, y);
  if (x == y) return {0.0, 0.0};

  switch (g.kind) {
    case Domain::Kind::punctured_space: {
      double k = quasihyperbolic_punctured(x, y);
      return {k, k};
    }
    case Domain::Kind::half_space: {
      double k = rho_halfspace(x, y);
      return {k, k};
    }
    case Domain::Kind::sector:
      if (std::fabs(g.angle - std::numbers::pi) < 1e-15) {
        double k = rho_halfspace(x, y);
        return {k, k};
      }
      break;
    default: break;
  }

  auto w = quasihyperbolic_density(g);
  double best = std::numeric_limits<double>::infinity();
  Polyline best_path({x, y});

  auto consider = [&](Polyline cand) {
    double len = weighted_length(cand, w, 8);
    if (len < best) {
      best = len;
      best_path = std::move(cand);
    }
  };

  auto straight = [&]() {
    if (x == y) return;
    Polyline seg({x, y});
    consider(resample(seg, opt.vertices));
  };

  switch (g.kind) {
    case Domain::Kind::unit_ball:
      consider(ball_geodesic(x, y, opt.vertices).path);
      straight();
      break;
    case Domain::Kind::punctured_ball:
      if (norm2(x) > 0 && norm2(y) > 0 && angle_between(x, y) > 1e-12)
        consider(resample(spiral_geodesic(x, y, opt.vertices), opt.vertices));
      consider(ball_geodesic(x, y, opt.vertices).path);
      straight();
      break;
    case Domain::Kind::sector:
    case Domain::Kind::polygon: {
      Polyline seg = resample(Polyline({x, y}), opt.vertices);
      if (std::isfinite(weighted_length(seg, w, 8))) {
        consider(std::move(seg));
      } else {
        GeodesicResult gr = numeric_geodesic(g, x, y, opt.grid_res, opt.relax_passes);
        return {quasihyperbolic_lower_bound(g, x, y), gr.upper};
      }
      break;
    }
    default: throw std::logic_error("unreachable quasihyperbolic dispatch");
  }

  double scale = std::fmin(boundary_distance(g, x), boundary_distance(g, y));
  double step = std::fmax(0.05 * scale, 0.01 * dist(x, y));
  detail::relax_polyline(best_path, w, step, opt.relax_passes, 8, opt.relax_tol);
  double tight = weighted_length(best_path, w, 16);
  double lower = quasihyperbolic_lower_bound(g, x, y);
  return {lower, std::fmax(lower, tight)};
}

}  // namespace hypmet
