#pragma once

#include <span>
#include <vector>

#include "quelab/common.hpp"

namespace quelab {

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached, thread-safe; the returned reference stays valid for the program lifetime.
const GaussLegendre& gauss_legendre(int n);

// Pairwise (tree) summation; the result depends only on the element order.
double pairwise_sum(std::span<const double> values);
cplx pairwise_sum(std::span<const cplx> values);

// Integrates f over [a, b] with a single n-point Gauss-Legendre panel.
template <class F>
auto gauss_panel(F&& f, double a, double b, int n = 16) {
  const auto& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  decltype(f(mid)) acc{};
  for (int i = 0; i < n; ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

}  // namespace quelab
