#include "quelab/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace quelab {

namespace {

GaussLegendre build_rule(int n) {
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

template <class T>
T pairwise_impl(std::span<const T> v) {
  if (v.size() <= 8) {
    T acc{};
    for (const auto& x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_impl(v.subspan(0, half)) + pairwise_impl(v.subspan(half));
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  if (n < 1) throw UsageError("gauss_legendre: order must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendre>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendre>(build_rule(n));
  return *slot;
}

double pairwise_sum(std::span<const double> values) { return pairwise_impl(values); }
cplx pairwise_sum(std::span<const cplx> values) { return pairwise_impl(values); }

}  // namespace quelab
