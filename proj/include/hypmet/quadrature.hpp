#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace hypmet {

// Gauss-Legendre rule mapped to [0, 1]; weights sum to 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes are Legendre roots found by Newton iteration from the Chebyshev
// initial guess; accurate to machine precision for the small orders used.
inline const QuadratureRule& gauss_legendre(int order) {
  if (order < 1 || order > 64) throw std::invalid_argument("quadrature order out of range");
  static std::map<int, QuadratureRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  QuadratureRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  int n = order;
  for (int k = 0; k < (n + 1) / 2; ++k) {
    double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[k] = 0.5 * (1.0 - x);  // roots descend; map to ascending [0,1]
    rule.nodes[n - 1 - k] = 0.5 * (1.0 + x);
    rule.weights[k] = 0.5 * w;
    rule.weights[n - 1 - k] = 0.5 * w;
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

}  // namespace hypmet
