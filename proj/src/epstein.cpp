#include <cmath>
#include <map>

#include "quelab/specfun.hpp"
#include "quelab/zeta.hpp"

namespace quelab {

namespace {

// Counts of the integer values f(m, n) <= limit over (m, n) != 0, for a
// positive definite integral form f = [a, b, c].
std::map<long, long> value_counts(long a, long b, long c, double limit) {
  const double delta = (4.0 * a * c - double(b) * b) / 4.0;
  std::map<long, long> counts;
  // f = a (m + b n / 2a)^2 + delta n^2 / a
  const long nmax = static_cast<long>(std::floor(std::sqrt(limit * a / delta))) + 1;
  for (long n = -nmax; n <= nmax; ++n) {
    const double rest = limit - delta * double(n) * double(n) / a;
    if (rest < 0) continue;
    const double centre = -double(b) * n / (2.0 * a), span = std::sqrt(rest / a);
    for (long m = static_cast<long>(std::floor(centre - span)) - 1;
         m <= static_cast<long>(std::ceil(centre + span)) + 1; ++m) {
      if (m == 0 && n == 0) continue;
      const long v = a * m * m + b * m * n + c * n * n;
      if (v <= limit) ++counts[v];
    }
  }
  return counts;
}

}  // namespace

// pi^{-s} Gamma(s) Z(s, Q)
//   = sum_v (pi Q(v))^{-s} Gamma(s, pi tau Q(v))
//   + Delta^{-1/2} sum_w (pi Q*(w))^{s-1} Gamma(1-s, pi Q*(w) / tau)
//   + tau^{s-1} / (sqrt(Delta) (s-1)) - tau^s / s,
// Q*(m, n) = (c m^2 - b m n + a n^2) / Delta. The split point tau is rotated
// toward the imaginary axis by an angle growing with |Im s|, so the terms
// carry the same exp(-pi |Im s| / 2) scale as Gamma(s) and nothing cancels.
cplx epstein_Z(const BinaryQuadraticForm& Q, cplx s) {
  if (Q.a <= 0 || Q.discriminant() >= 0) throw DomainError("epstein_Z: form must be positive definite");
  if (s == cplx(0.0) || s == cplx(1.0)) throw DomainError("epstein_Z: s must avoid 0 and 1");
  if (!is_finite(s)) throw DomainError("epstein_Z: non-finite argument");
  const double delta = -double(Q.discriminant()) / 4.0;
  const double root = std::sqrt(delta);
  const double t = s.imag();
  const double theta = std::abs(t) > 0.0 ? std::copysign(std::max(0.0, 0.5 * kPi - 3.0 / std::abs(t)), t) : 0.0;
  const double ct = std::cos(theta);
  const cplx ltau(-std::log(root), theta);  // log tau
  const cplx tau = std::exp(ltau);
  const cplx sc = 1.0 - s;
  const double kappa = log_gamma(s).real();

  const double reach = std::max(50.0 / (kPi * ct), 2.0 * std::abs(s) / kPi + 4.0);
  const double reach_dual = std::max(50.0 / (kPi * ct), 2.0 * std::abs(sc) / kPi + 4.0);

  cplx acc = 0.0;
  for (const auto& [v, count] : value_counts(Q.a, Q.b, Q.c, reach * root)) {
    const double q = kPi * double(v);
    acc += double(count) * std::exp(-s * std::log(q)) * upper_gamma_scaled(s, q * tau, kappa);
  }
  cplx dual = 0.0;
  for (const auto& [v, count] : value_counts(Q.c, -Q.b, Q.a, reach_dual * root)) {
    const double q = kPi * double(v) / delta;
    dual += double(count) * std::exp(-sc * std::log(q)) * upper_gamma_scaled(sc, q / tau, kappa);
  }
  acc += dual / root;
  acc += std::exp((s - 1.0) * ltau - kappa) / (root * (s - 1.0));
  acc -= std::exp(s * ltau - kappa) / s;
  return acc * std::exp(s * std::log(kPi) + kappa - log_gamma(s));
}

}  // namespace quelab
