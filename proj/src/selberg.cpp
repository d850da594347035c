#include "quelab/selberg.hpp"

#include <cmath>
#include <vector>

#include "quelab/quadrature.hpp"
#include "quelab/specfun.hpp"

namespace quelab {

namespace {

void check_kernel(const BallKernel& k) {
  if (k.n < 2) throw UsageError("selberg: dimension must be at least 2");
  if (!(k.R > 0.0)) throw DomainError("selberg: radius must be positive");
}

// Integral of (cosh R - cosh u)^{(n-1)/2} g(u) over [0, R]. Panels are locked
// to the period pi/|t| once the integrand oscillates; the last panel uses
// u = R - h w^2 to absorb the endpoint branch point.
template <class G>
cplx kernel_integral(const BallKernel& k, double freq, G&& g) {
  const double R = k.R, power = 0.5 * (k.n - 1);
  auto weight = [&](double u) {
    const double v = 2.0 * std::sinh(0.5 * (R + u)) * std::sinh(0.5 * (R - u));
    return v > 0.0 ? std::pow(v, power) : 0.0;
  };
  long panels = 8;
  if (R * freq > 50.0) panels = static_cast<long>(std::ceil(R * freq / kPi));
  const double h = R / panels;
  constexpr int kOrder = 24;
  const auto& rule = gauss_legendre(kOrder);
  std::vector<cplx> parts;
  parts.reserve(panels);
  for (long p = 0; p + 1 < panels; ++p) {
    const double a = p * h, b = (p + 1) * h;
    parts.push_back(gauss_panel([&](double u) { return weight(u) * g(u); }, a, b, kOrder));
  }
  cplx last = 0.0;
  for (int i = 0; i < kOrder; ++i) {
    const double w = 0.5 * (1.0 + rule.nodes[i]);
    const double u = R - h * w * w;
    last += 0.5 * rule.weights[i] * weight(u) * g(u) * 2.0 * h * w;
  }
  parts.push_back(last);
  return pairwise_sum(parts);
}

}  // namespace

cplx h_char(const BallKernel& kernel, cplx t) {
  check_kernel(kernel);
  const double half = 0.5 * (kernel.n - 1);
  const double freq = std::abs(t.real());
  const cplx num = kernel_integral(kernel, freq, [&](double u) { return std::cos(t * u); });
  const cplx den = kernel_integral(kernel, freq, [&](double u) { return cplx(std::cosh(half * u)); });
  return num / den;
}

cplx h_closed_h3(double R, cplx t) {
  if (!(R > 0.0)) throw DomainError("h_closed_h3: radius must be positive");
  const double vol = ball_volume(3, R);
  const double ch = std::cosh(R), sh = std::sinh(R);
  const cplx I(0.0, 1.0);
  if (std::abs(t) < 1e-3) {
    const cplx t2 = t * t;
    const cplx f_over_t = (R * ch - sh) + t2 * (R * R * sh / 2.0 - R * R * R * ch / 6.0);
    return 4.0 * kPi * f_over_t / ((1.0 + t2) * vol);
  }
  if (std::abs(t - I) < 1e-3) {
    const cplx d = t - I;
    const cplx s = std::sin(I * R), c = std::cos(I * R);
    const double f1 = R - sh * ch;
    const cplx f2 = (-R * R * ch + 2.0 * R * sh) * s + I * R * R * sh * c;
    const cplx f3 = (-R * R * R * ch + 3.0 * R * R * sh) * c - I * R * R * R * sh * s;
    return 4.0 * kPi * (f1 + f2 * d / 2.0 + f3 * d * d / 6.0) / ((2.0 * I + d) * t * vol);
  }
  const cplx F = ch * std::sin(t * R) - t * sh * std::cos(t * R);
  return 4.0 * kPi * F / ((1.0 + t * t) * t * vol);
}

double h_bessel_asym(const BallKernel& kernel, double t) {
  check_kernel(kernel);
  const double x = kernel.R * std::abs(t);
  if (x < 5.0 || kernel.R > 0.2) {
    throw UsageError("h_bessel_asym: requires R t >= 5 and R <= 0.2");
  }
  const double nu = 0.5 * kernel.n;
  return std::exp(log_gamma(nu + 1.0) + nu * std::log(2.0 / x)) * bessel_J(nu, x);
}

MeanValue mean_value_apply(const GeodesicBall& ball, const std::function<cplx(const Point&)>& f,
                           cplx t, int order) {
  ball.validate();
  const cplx integral = ball_quadrature(ball, f, order);
  const cplx h = h_char({ball.n, ball.R}, t);
  return {integral / ball_volume(ball.n, ball.R), h * f(ball.center)};
}

}  // namespace quelab
