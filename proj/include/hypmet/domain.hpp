#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypmet/extended.hpp"
#include "hypmet/rng.hpp"
#include "hypmet/vec.hpp"

namespace hypmet {

// Canonical domain descriptor. Every variant is an open connected proper
// subset of R^n; sectors and polygons are planar.
struct Domain {
  enum class Kind { half_space, unit_ball, punctured_space, punctured_ball, sector, polygon };

  Kind kind;
  int dim;
  double angle = 0.0;           // sector opening, in (0, 2*pi)
  std::vector<Vec> vertices;    // polygon, counter-clockwise or clockwise

  static Domain half_space(int n) { return {Kind::half_space, checked(n)}; }
  static Domain unit_ball(int n) { return {Kind::unit_ball, checked(n)}; }
  static Domain punctured_space(int n) { return {Kind::punctured_space, checked(n)}; }
  static Domain punctured_ball(int n) { return {Kind::punctured_ball, checked(n)}; }

  static Domain sector(double phi) {
    if (!(phi > 0.0 && phi < 2.0 * std::numbers::pi))
      throw std::invalid_argument("sector angle must lie in (0, 2*pi)");
    Domain d{Kind::sector, 2};
    d.angle = phi;
    return d;
  }

  static Domain polygon(std::vector<Vec> verts);
  static Domain polygon_from_file(const std::string& path);

  // Short-name grammar used by the CLI and test drivers:
  //   ball2 ball3 half2 half3 punctured2 punctured3 puncturedball2
  //   sector:<angle> polygon:<file>
  static Domain parse(const std::string& name);

  bool unbounded() const {
    return kind == Kind::half_space || kind == Kind::punctured_space || kind == Kind::sector;
  }

  std::string name() const;

 private:
  static int checked(int n) {
    if (n < 1 || n > Vec::kMaxDim - 1) throw std::invalid_argument("unsupported dimension");
    return n;
  }
};

namespace detail {

inline double point_segment_distance(const Vec& p, const Vec& a, const Vec& b) {
  Vec ab = b - a;
  double len2 = norm2(ab);
  if (len2 == 0.0) return dist(p, a);
  double t = std::fmax(0.0, std::fmin(1.0, dot(p - a, ab) / len2));
  return dist(p, a + ab * t);
}

inline Vec project_segment(const Vec& p, const Vec& a, const Vec& b) {
  Vec ab = b - a;
  double len2 = norm2(ab);
  if (len2 == 0.0) return a;
  double t = std::fmax(0.0, std::fmin(1.0, dot(p - a, ab) / len2));
  return a + ab * t;
}

// Distance to the closed ray from the origin in direction u (|u| = 1).
inline double point_ray_distance(const Vec& p, const Vec& u) {
  double t = dot(p, u);
  if (t <= 0.0) return norm(p);
  return dist(p, u * t);
}

inline Vec project_ray(const Vec& p, const Vec& u) {
  double t = std::fmax(0.0, dot(p, u));
  return u * t;
}

// Polar angle of a planar point normalized to [0, 2*pi).
inline double polar_angle(const Vec& p) {
  double th = std::atan2(p.y(), p.x());
  if (th < 0) th += 2.0 * std::numbers::pi;
  return th;
}

inline bool segments_properly_intersect(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
  auto orient = [](const Vec& p, const Vec& q, const Vec& r) {
    double v = cross2(q - p, r - p);
    return (v > 0) - (v < 0);
  };
  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

inline bool polygon_contains(const std::vector<Vec>& vs, const Vec& p) {
  // Even-odd crossing test; points on the boundary are treated as outside
  // by the caller via the distance check.
  bool inside = false;
  size_t m = vs.size();
  for (size_t i = 0, j = m - 1; i < m; j = i++) {
    const Vec& a = vs[i];
    const Vec& b = vs[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      double xint = a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
      if (p.x() < xint) inside = !inside;
    }
  }
  return inside;
}

}  // namespace detail

inline Domain Domain::polygon(std::vector<Vec> verts) {
  if (verts.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  for (const Vec& v : verts)
    if (v.dim() != 2) throw std::invalid_argument("polygon vertices must be planar");
  size_t m = verts.size();
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      if (i == j || (i + 1) % m == j || (j + 1) % m == i) continue;
      if (detail::segments_properly_intersect(verts[i], verts[(i + 1) % m], verts[j],
                                              verts[(j + 1) % m]))
        throw std::invalid_argument("polygon must be simple");
    }
  }
  Domain d{Kind::polygon, 2};
  d.vertices = std::move(verts);
  return d;
}

// Plain-text vertex list, one "x y" pair per line; the ring closes itself.
inline Domain Domain::polygon_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open polygon file: " + path);
  std::vector<Vec> verts;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    double x, y;
    if (ls >> x >> y) verts.push_back({x, y});
  }
  return polygon(std::move(verts));
}

inline Domain Domain::parse(const std::string& name) {
  auto num_suffix = [&](const std::string& prefix) -> int {
    return std::stoi(name.substr(prefix.size()));
  };
  try {
    if (name.rfind("ball", 0) == 0) return unit_ball(num_suffix("ball"));
    if (name.rfind("half", 0) == 0) return half_space(num_suffix("half"));
    if (name.rfind("puncturedball", 0) == 0) return punctured_ball(num_suffix("puncturedball"));
    if (name.rfind("punctured", 0) == 0) return punctured_space(num_suffix("punctured"));
    if (name.rfind("sector:", 0) == 0) return sector(std::stod(name.substr(7)));
    if (name.rfind("polygon:", 0) == 0) return polygon_from_file(name.substr(8));
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
  }
  throw std::invalid_argument("unknown domain: " + name);
}

inline std::string Domain::name() const {
  switch (kind) {
    case Kind::half_space: return "half" + std::to_string(dim);
    case Kind::unit_ball: return "ball" + std::to_string(dim);
    case Kind::punctured_space: return "punctured" + std::to_string(dim);
    case Kind::punctured_ball: return "puncturedball" + std::to_string(dim);
    case Kind::sector: {
      std::ostringstream os;
      os << "sector:" << angle;
      return os.str();
    }
    case Kind::polygon: return "polygon[" + std::to_string(vertices.size()) + "]";
  }
  return "?";
}

// Open-set membership; boundary points are excluded.
inline bool contains(const Domain& g, const Vec& x) {
  if (x.dim() != g.dim) return false;
  switch (g.kind) {
    case Domain::Kind::half_space: return x.back() > 0.0;
    case Domain::Kind::unit_ball: return norm(x) < 1.0;
    case Domain::Kind::punctured_space: return norm2(x) > 0.0;
    case Domain::Kind::punctured_ball: {
      double r = norm(x);
      return r > 0.0 && r < 1.0;
    }
    case Domain::Kind::sector: {
      if (norm2(x) == 0.0) return false;
      double th = detail::polar_angle(x);
      return th > 0.0 && th < g.angle;
    }
    case Domain::Kind::polygon: {
      if (!detail::polygon_contains(g.vertices, x)) return false;
      size_t m = g.vertices.size();
      for (size_t i = 0; i < m; ++i)
        if (detail::point_segment_distance(x, g.vertices[i], g.vertices[(i + 1) % m]) == 0.0)
          return false;
      return true;
    }
  }
  return false;
}

// Euclidean distance from an interior point to the boundary.
inline double boundary_distance(const Domain& g, const Vec& x) {
  if (!contains(g, x)) throw std::domain_error("point is not inside the domain");
  switch (g.kind) {
    case Domain::Kind::half_space: return x.back();
    case Domain::Kind::unit_ball: return 1.0 - norm(x);
    case Domain::Kind::punctured_space: return norm(x);
    case Domain::Kind::punctured_ball: {
      double r = norm(x);
      return std::fmin(r, 1.0 - r);
    }
    case Domain::Kind::sector: {
      Vec u0{1.0, 0.0};
      Vec u1{std::cos(g.angle), std::sin(g.angle)};
      return std::fmin(detail::point_ray_distance(x, u0), detail::point_ray_distance(x, u1));
    }
    case Domain::Kind::polygon: {
      double best = std::numeric_limits<double>::infinity();
      size_t m = g.vertices.size();
      for (size_t i = 0; i < m; ++i)
        best = std::fmin(best,
                         detail::point_segment_distance(x, g.vertices[i], g.vertices[(i + 1) % m]));
      return best;
    }
  }
  return 0.0;
}

// Nearest finite boundary point; used to keep sup-search probes on the
// boundary while they wander.
inline Vec boundary_project(const Domain& g, const Vec& p) {
  switch (g.kind) {
    case Domain::Kind::half_space: {
      Vec q = p;
      q[g.dim - 1] = 0.0;
      return q;
    }
    case Domain::Kind::unit_ball: {
      double r = norm(p);
      if (r == 0.0) return Vec::unit(g.dim, 0);
      return p / r;
    }
    case Domain::Kind::punctured_space: return Vec::zero(g.dim);
    case Domain::Kind::punctured_ball: {
      double r = norm(p);
      if (r < 0.5) return Vec::zero(g.dim);
      if (r == 0.0) return Vec::unit(g.dim, 0);
      return p / r;
    }
    case Domain::Kind::sector: {
      Vec u0{1.0, 0.0};
      Vec u1{std::cos(g.angle), std::sin(g.angle)};
      Vec p0 = detail::project_ray(p, u0);
      Vec p1 = detail::project_ray(p, u1);
      return dist(p, p0) <= dist(p, p1) ? p0 : p1;
    }
    case Domain::Kind::polygon: {
      double best = std::numeric_limits<double>::infinity();
      Vec bp = g.vertices[0];
      size_t m = g.vertices.size();
      for (size_t i = 0; i < m; ++i) {
        Vec q = detail::project_segment(p, g.vertices[i], g.vertices[(i + 1) % m]);
        double d = dist(p, q);
        if (d < best) {
          best = d;
          bp = q;
        }
      }
      return bp;
    }
  }
  return p;
}

// Rough linear size of the region of interest; step sizes scale with it.
inline double domain_scale(const Domain& g) {
  switch (g.kind) {
    case Domain::Kind::unit_ball:
    case Domain::Kind::punctured_ball: return 1.0;
    case Domain::Kind::polygon: {
      Vec lo = g.vertices[0], hi = g.vertices[0];
      for (const Vec& v : g.vertices)
        for (int i = 0; i < 2; ++i) {
          lo[i] = std::fmin(lo[i], v[i]);
          hi[i] = std::fmax(hi[i], v[i]);
        }
      return norm(hi - lo);
    }
    default: return 1.0;
  }
}

struct BoundarySample {
  std::vector<ExtendedPoint> points;
  std::vector<double> weights;  // optional density hints, may stay empty
};

namespace detail {

inline std::vector<Vec> sphere_points(int n, int count, Rng& rng) {
  std::vector<Vec> pts;
  pts.reserve(count);
  if (n == 1) {
    for (int i = 0; i < count; ++i) pts.push_back({i % 2 ? 1.0 : -1.0});
  } else if (n == 2) {
    double phase = rng.unit();
    for (int i = 0; i < count; ++i) {
      double th = 2.0 * std::numbers::pi * (i + phase) / count;
      pts.push_back({std::cos(th), std::sin(th)});
    }
  } else if (n == 3) {
    // Fibonacci lattice with a seeded rotation about the poles.
    double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
    double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < count; ++i) {
      double z = 1.0 - 2.0 * (i + 0.5) / count;
      double r = std::sqrt(std::fmax(0.0, 1.0 - z * z));
      double th = ga * i + phase;
      pts.push_back({r * std::cos(th), r * std::sin(th), z});
    }
  } else {
    for (int i = 0; i < count; ++i) pts.push_back(rng.on_sphere(n));
  }
  return pts;
}

// Radii spread log-uniformly over several decades; scale-free boundaries
// (rays, hyperplanes) need probes at many magnitudes.
inline std::vector<double> log_spaced_radii(int count, Rng& rng) {
  std::vector<double> rs;
  rs.reserve(count);
  double phase = rng.unit();
  for (int i = 0; i < count; ++i) {
    double t = (i + phase) / count;            // (0,1)
    rs.push_back(std::exp(-5.0 + 10.0 * t));   // e^-5 .. e^5
  }
  return rs;
}

}  // namespace detail

// Deterministic boundary sampling. Unbounded variants include the point at
// infinity exactly once; the punctured space's boundary is exactly {0, inf}.
inline BoundarySample boundary_sample(const Domain& g, int count, std::uint64_t seed) {
  if (count < 2) throw std::invalid_argument("boundary_sample needs count >= 2");
  Rng rng(seed);
  BoundarySample out;
  switch (g.kind) {
    case Domain::Kind::punctured_space:
      out.points.push_back(ExtendedPoint(Vec::zero(g.dim)));
      out.points.push_back(ExtendedPoint::infinity());
      break;
    case Domain::Kind::unit_ball:
      for (const Vec& p : detail::sphere_points(g.dim, count, rng))
        out.points.push_back(ExtendedPoint(p));
      break;
    case Domain::Kind::punctured_ball: {
      out.points.push_back(ExtendedPoint(Vec::zero(g.dim)));
      for (const Vec& p : detail::sphere_points(g.dim, count - 1, rng))
        out.points.push_back(ExtendedPoint(p));
      break;
    }
    case Domain::Kind::half_space: {
      out.points.push_back(ExtendedPoint::infinity());
      int m = count - 1;
      auto dirs = detail::sphere_points(g.dim - 1, std::max(1, m), rng);
      auto radii = detail::log_spaced_radii(std::max(1, m), rng);
      out.points.push_back(ExtendedPoint(Vec::zero(g.dim)));
      for (int i = 1; i < m; ++i) {
        Vec q(g.dim);
        const Vec& d = dirs[i % dirs.size()];
        for (int j = 0; j < g.dim - 1; ++j) q[j] = d[j] * radii[i];
        out.points.push_back(ExtendedPoint(q));
      }
      break;
    }
    case Domain::Kind::sector: {
      out.points.push_back(ExtendedPoint::infinity());
      out.points.push_back(ExtendedPoint(Vec::zero(2)));
      Vec u0{1.0, 0.0};
      Vec u1{std::cos(g.angle), std::sin(g.angle)};
      int m = count - 2;
      auto radii = detail::log_spaced_radii(std::max(1, m), rng);
      for (int i = 0; i < m; ++i) {
        const Vec& u = (i % 2 == 0) ? u0 : u1;
        out.points.push_back(ExtendedPoint(u * radii[i]));
      }
      break;
    }
    case Domain::Kind::polygon: {
      size_t m = g.vertices.size();
      for (const Vec& v : g.vertices) out.points.push_back(ExtendedPoint(v));
      double total = 0.0;
      std::vector<double> acc(m + 1, 0.0);
      for (size_t i = 0; i < m; ++i) {
        total += dist(g.vertices[i], g.vertices[(i + 1) % m]);
        acc[i + 1] = total;
      }
      int extra = std::max(0, count - int(m));
      double phase = rng.unit();
      for (int i = 0; i < extra; ++i) {
        double s = total * (i + phase) / extra;
        size_t e = 0;
        while (e + 1 < m && acc[e + 1] <= s) ++e;
        double t = (s - acc[e]) / (acc[e + 1] - acc[e]);
        out.points.push_back(
            ExtendedPoint(g.vertices[e] + (g.vertices[(e + 1) % m] - g.vertices[e]) * t));
      }
      break;
    }
  }
  return out;
}

}  // namespace hypmet
