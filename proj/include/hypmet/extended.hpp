#pragma once

#include <cmath>
#include <stdexcept>

#include "hypmet/vec.hpp"

namespace hypmet {

// Point of the one-point compactification of R^n. The point at infinity is
// an explicit variant; sup searches over unbounded boundaries rely on exact
// arithmetic with it rather than on large-coordinate sentinels.
struct ExtendedPoint {
  Vec p;
  bool is_inf = false;

  ExtendedPoint() = default;
  ExtendedPoint(const Vec& v) : p(v) {
    if (!all_finite(v)) throw std::invalid_argument("finite point has non-finite coordinate");
  }
  static ExtendedPoint infinity() {
    ExtendedPoint e;
    e.is_inf = true;
    return e;
  }
  bool finite() const { return !is_inf; }

  friend bool operator==(const ExtendedPoint& a, const ExtendedPoint& b) {
    if (a.is_inf || b.is_inf) return a.is_inf == b.is_inf;
    return a.p == b.p;
  }
};

// Chordal distance: euclidean distance of stereographic images. Values lie
// in [0, 1]; q(x, inf) = 1/sqrt(1+|x|^2).
inline double chordal_distance(const ExtendedPoint& x, const ExtendedPoint& y) {
  if (x.is_inf && y.is_inf) return 0.0;
  if (x.is_inf) return 1.0 / std::sqrt(1.0 + norm2(y.p));
  if (y.is_inf) return 1.0 / std::sqrt(1.0 + norm2(x.p));
  x.p.same_dim(y.p);
  return dist(x.p, y.p) / (std::sqrt(1.0 + norm2(x.p)) * std::sqrt(1.0 + norm2(y.p)));
}

// Stereographic projection onto the sphere of center e_{n+1}/2 and radius
// 1/2, realized as the inversion in S^n(e_{n+1}, 1). The image of a finite
// x in R^n is (x, |x|^2) / (1 + |x|^2); infinity maps to e_{n+1}.
inline Vec stereographic_project(const ExtendedPoint& x, int ambient_dim) {
  Vec img(ambient_dim + 1);
  if (x.is_inf) {
    img[ambient_dim] = 1.0;
    return img;
  }
  if (x.p.dim() != ambient_dim) throw std::invalid_argument("stereographic dimension mismatch");
  double t = 1.0 + norm2(x.p);
  for (int i = 0; i < ambient_dim; ++i) img[i] = x.p[i] / t;
  img[ambient_dim] = norm2(x.p) / t;
  return img;
}

inline Vec stereographic_project(const ExtendedPoint& x) {
  if (x.is_inf) throw std::invalid_argument("projection of infinity needs an ambient dimension");
  return stereographic_project(x, x.p.dim());
}

// Inverse of the projection; the north pole e_{n+1} maps back to infinity.
inline ExtendedPoint stereographic_unproject(const Vec& img) {
  int n = img.dim() - 1;
  Vec north = Vec::unit(n + 1, n);
  double d2 = norm2(img - north);
  if (d2 < 1e-30) return ExtendedPoint::infinity();
  Vec pre = north + (img - north) / d2;
  return ExtendedPoint(pre.projected());
}

// Absolute (cross) ratio |a,b,c,d| = q(a,c) q(b,d) / (q(a,b) q(c,d)).
// The chordal form is used throughout so any one argument may be infinite.
inline double absolute_ratio(const ExtendedPoint& a, const ExtendedPoint& b,
                             const ExtendedPoint& c, const ExtendedPoint& d) {
  double qab = chordal_distance(a, b);
  double qcd = chordal_distance(c, d);
  if (qab == 0.0 || qcd == 0.0) throw std::invalid_argument("absolute ratio of coincident points");
  return chordal_distance(a, c) * chordal_distance(b, d) / (qab * qcd);
}

}  // namespace hypmet
