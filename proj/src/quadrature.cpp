#include "coc/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace coc {

namespace {

// Legendre nodes on (-1,1) by Newton iteration from the Chebyshev guess,
// then mapped to [0,1].
GaussRule make_rule(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.nodes[i] = 0.5 * (1.0 - x);  // mirror: descending cos -> ascending t
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_rule(int order) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
  return it->second;
}

double integrate_1d(const std::function<double(double)>& f,
                    const QuadratureConfig& cfg) {
  const GaussRule& rule = gauss_rule(cfg.order);
  double prev = 0.0;
  for (int depth = 0; depth <= cfg.max_depth; ++depth) {
    const std::size_t cells = std::size_t(1) << depth;
    const double h = 1.0 / static_cast<double>(cells);
    double sum = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
      const double left = static_cast<double>(c) * h;
      for (int i = 0; i < cfg.order; ++i)
        sum += rule.weights[i] * f(left + h * rule.nodes[i]);
    }
    sum *= h;
    if (depth > 0 && std::abs(sum - prev) < cfg.tol) return sum;
    prev = sum;
  }
  throw QuadratureNonConvergence("1d quadrature did not settle below tol");
}

double integrate_2d(const std::function<double(double, double)>& f,
                    const QuadratureConfig& cfg) {
  const GaussRule& rule = gauss_rule(cfg.order);
  double prev = 0.0;
  for (int depth = 0; depth <= cfg.max_depth; ++depth) {
    const std::size_t cells = std::size_t(1) << depth;
    const double h = 1.0 / static_cast<double>(cells);
    double sum = 0.0;
    for (std::size_t cu = 0; cu < cells; ++cu) {
      const double u0 = static_cast<double>(cu) * h;
      for (std::size_t cv = 0; cv < cells; ++cv) {
        const double v0 = static_cast<double>(cv) * h;
        for (int i = 0; i < cfg.order; ++i) {
          const double u = u0 + h * rule.nodes[i];
          double row = 0.0;
          for (int j = 0; j < cfg.order; ++j)
            row += rule.weights[j] * f(u, v0 + h * rule.nodes[j]);
          sum += rule.weights[i] * row;
        }
      }
    }
    sum *= h * h;
    if (depth > 0 && std::abs(sum - prev) < cfg.tol) return sum;
    prev = sum;
  }
  throw QuadratureNonConvergence("2d quadrature did not settle below tol");
}

}  // namespace coc
