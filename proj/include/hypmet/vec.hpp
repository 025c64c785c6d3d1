#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>

namespace hypmet {

// Euclidean vector with a small fixed capacity. Points live in R^n for
// tiny n (one spare slot is kept for sphere lifts), so no heap traffic.
class Vec {
 public:
  static constexpr int kMaxDim = 8;

  Vec() = default;
  explicit Vec(int n) : n_(checked_dim(n)) {
    for (int i = 0; i < n_; ++i) v_[i] = 0.0;
  }
  Vec(std::initializer_list<double> xs) : n_(checked_dim(int(xs.size()))) {
    int i = 0;
    for (double x : xs) v_[i++] = x;
  }

  static Vec zero(int n) { return Vec(n); }
  static Vec unit(int n, int axis) {
    Vec e(n);
    e[axis] = 1.0;
    return e;
  }

  int dim() const { return n_; }
  double& operator[](int i) { return v_[i]; }
  double operator[](int i) const { return v_[i]; }
  double* data() { return v_; }
  const double* data() const { return v_; }

  double x() const { return v_[0]; }
  double y() const { return v_[1]; }
  // Last coordinate, the distinguished one for half-spaces and lifts.
  double back() const { return v_[n_ - 1]; }

  Vec& operator+=(const Vec& o) {
    same_dim(o);
    for (int i = 0; i < n_; ++i) v_[i] += o.v_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    same_dim(o);
    for (int i = 0; i < n_; ++i) v_[i] -= o.v_[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < n_; ++i) v_[i] *= s;
    return *this;
  }
  Vec& operator/=(double s) { return (*this) *= 1.0 / s; }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator/(Vec a, double s) { return a /= s; }
  friend Vec operator-(Vec a) { return a *= -1.0; }

  friend bool operator==(const Vec& a, const Vec& b) {
    if (a.n_ != b.n_) return false;
    for (int i = 0; i < a.n_; ++i)
      if (a.v_[i] != b.v_[i]) return false;
    return true;
  }

  // Same point re-embedded with one extra trailing zero coordinate.
  Vec lifted() const {
    Vec r(n_ + 1);
    for (int i = 0; i < n_; ++i) r[i] = v_[i];
    return r;
  }
  // Drops the last coordinate.
  Vec projected() const {
    Vec r(n_ - 1);
    for (int i = 0; i < n_ - 1; ++i) r[i] = v_[i];
    return r;
  }

  void same_dim(const Vec& o) const {
    if (n_ != o.n_) throw std::invalid_argument("vector dimension mismatch");
  }

  friend std::ostream& operator<<(std::ostream& os, const Vec& a) {
    os << '(';
    for (int i = 0; i < a.n_; ++i) os << (i ? "," : "") << a.v_[i];
    return os << ')';
  }

 private:
  static int checked_dim(int n) {
    if (n < 0 || n > kMaxDim) throw std::invalid_argument("vector dimension out of range");
    return n;
  }
  double v_[kMaxDim] = {};
  int n_ = 0;
};

inline double dot(const Vec& a, const Vec& b) {
  a.same_dim(b);
  double s = 0;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }
inline double dist(const Vec& a, const Vec& b) { return norm(a - b); }

inline Vec normalized(const Vec& a) {
  double m = norm(a);
  if (m == 0) throw std::invalid_argument("cannot normalize zero vector");
  return a / m;
}

inline double cross2(const Vec& a, const Vec& b) { return a.x() * b.y() - a.y() * b.x(); }

// Angle at the origin between two nonzero vectors, in [0, pi].
inline double angle_between(const Vec& a, const Vec& b) {
  double na = norm(a), nb = norm(b);
  if (na == 0 || nb == 0) throw std::invalid_argument("angle of zero vector");
  double c = dot(a, b) / (na * nb);
  c = std::fmax(-1.0, std::fmin(1.0, c));
  return std::acos(c);
}

inline bool all_finite(const Vec& a) {
  for (int i = 0; i < a.dim(); ++i)
    if (!std::isfinite(a[i])) return false;
  return true;
}

}  // namespace hypmet
