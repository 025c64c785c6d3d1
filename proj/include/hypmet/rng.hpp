#pragma once

#include <cstdint>
#include <random>

#include "hypmet/vec.hpp"

namespace hypmet {

// Deterministic random source. Doubles are produced from the raw 64-bit
// stream directly so sequences are reproducible across standard libraries
// (std::uniform_real_distribution is not pinned by the standard).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, 1).
  double unit() { return double(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * unit(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + int(gen_() % std::uint64_t(hi - lo + 1));
  }

  double normal() {
    // Marsaglia polar method; one cached value.
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = uniform(-1.0, 1.0);
      v = uniform(-1.0, 1.0);
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  Vec on_sphere(int n) {
    Vec p(n);
    double m;
    do {
      for (int i = 0; i < n; ++i) p[i] = normal();
      m = norm(p);
    } while (m < 1e-12);
    return p / m;
  }

  Vec in_ball(int n) {
    Vec p(n);
    do {
      for (int i = 0; i < n; ++i) p[i] = uniform(-1.0, 1.0);
    } while (norm2(p) >= 1.0);
    return p;
  }

  // Independent stream derived from this seed and a salt.
  static Rng split(std::uint64_t seed, std::uint64_t salt) {
    return Rng(seed * 0x9e3779b97f4a7c15ULL + salt + 0x2545f4914f6cdd1dULL);
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hypmet
