#pragma once

// Gauss-Legendre nodes (Newton on the Legendre recurrence) plus small
// tensor-product helpers. Nodes are cached per order.

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "eqloc/common.hpp"

namespace eqloc {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

inline const QuadratureRule& gauss_legendre(int n) {
  static std::map<int, QuadratureRule> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-ish initial guess, then Newton.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

inline double integrate_1d(const std::function<double(double)>& f, double a,
                           double b, int order) {
  const auto& rule = gauss_legendre(order);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < order; ++i)
    s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * s;
}

// Tensor-product integral over an axis-aligned box in up to a few dims.
inline double integrate_box(const std::function<double(const std::vector<double>&)>& f,
                            const std::vector<double>& lo,
                            const std::vector<double>& hi, int order) {
  const auto& rule = gauss_legendre(order);
  const int dim = int(lo.size());
  std::vector<int> idx(dim, 0);
  std::vector<double> x(dim);
  double total = 0.0;
  while (true) {
    double w = 1.0;
    for (int d = 0; d < dim; ++d) {
      double mid = 0.5 * (lo[d] + hi[d]), half = 0.5 * (hi[d] - lo[d]);
      x[d] = mid + half * rule.nodes[idx[d]];
      w *= half * rule.weights[idx[d]];
    }
    total += w * f(x);
    int d = 0;
    for (; d < dim; ++d) {
      if (++idx[d] < order) break;
      idx[d] = 0;
    }
    if (d == dim) break;
  }
  return total;
}

// Exact-for-polynomials integral of f over the triangle (v0, v1, v2),
// computed on the reference simplex through the affine map; `order`
// Gauss points per axis with the Duffy collapse.
inline double integrate_triangle(
    const std::function<double(double, double)>& f, const double v0[2],
    const double v1[2], const double v2[2], int order) {
  const auto& rule = gauss_legendre(order);
  double ax = v1[0] - v0[0], ay = v1[1] - v0[1];
  double bx = v2[0] - v0[0], by = v2[1] - v0[1];
  double jac = std::abs(ax * by - ay * bx);
  if (jac == 0.0) return 0.0;
  double total = 0.0;
  for (int i = 0; i < order; ++i) {
    double s = 0.5 * (rule.nodes[i] + 1.0);  // in [0,1]
    double ws = 0.5 * rule.weights[i];
    for (int j = 0; j < order; ++j) {
      double t = 0.5 * (rule.nodes[j] + 1.0) * (1.0 - s);  // Duffy collapse
      double wt = 0.5 * rule.weights[j] * (1.0 - s);
      double x = v0[0] + ax * s + bx * t;
      double y = v0[1] + ay * s + by * t;
      total += ws * wt * f(x, y);
    }
  }
  return jac * total;
}

}  // namespace eqloc
