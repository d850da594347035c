#include "quelab/geometry.hpp"

#include <cmath>
#include <random>

#include "quelab/quadrature.hpp"
#include "quelab/specfun.hpp"

namespace quelab {

namespace {

// acosh(1 + v) without cancellation for small v.
double acosh1p(double v) { return std::log1p(v + std::sqrt(v * (v + 2.0))); }

// sinh(x) - x, accurate near zero.
double sinh_minus_x(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return x * x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0 * (1.0 + x2 / 72.0)));
  }
  return std::sinh(x) - x;
}

double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

}  // namespace

void GeodesicBall::validate() const {
  if (!(R >= 1e-8)) throw DomainError("ball radius must be at least 1e-8");
  if (n != dimension_of(center)) throw UsageError("ball dimension does not match its center");
  if (n == 2 && !(std::get<PointH2>(center).y > 0.0)) throw DomainError("center height must be positive");
  if (n == 3 && !(std::get<PointH3>(center).r > 0.0)) throw DomainError("center height must be positive");
}

HeegnerPoint make_heegner(long a, long b, long c) {
  const long d = b * b - 4 * a * c;
  if (a <= 0 || d >= 0) throw DomainError("Heegner point needs a positive definite form");
  HeegnerPoint h{a, b, c, d, {}};
  h.z = {-double(b) / (2.0 * a), std::sqrt(double(-d)) / (2.0 * a)};
  return h;
}

double distance(const PointH2& p, const PointH2& q) {
  if (!(p.y > 0.0 && q.y > 0.0)) throw DomainError("distance: height must be positive");
  const double dx = p.x - q.x, dy = p.y - q.y;
  return acosh1p((dx * dx + dy * dy) / (2.0 * p.y * q.y));
}

double distance(const PointH3& p, const PointH3& q) {
  if (!(p.r > 0.0 && q.r > 0.0)) throw DomainError("distance: height must be positive");
  const double dr = p.r - q.r;
  return acosh1p((std::norm(p.z - q.z) + dr * dr) / (2.0 * p.r * q.r));
}

double distance(const Point& p, const Point& q) {
  if (p.index() != q.index()) throw UsageError("distance: dimension mismatch");
  if (const auto* a = std::get_if<PointH2>(&p)) return distance(*a, std::get<PointH2>(q));
  return distance(std::get<PointH3>(p), std::get<PointH3>(q));
}

double ball_volume(int n, double R) {
  if (n < 2) throw UsageError("ball_volume: dimension must be at least 2");
  if (!(R > 0.0)) throw DomainError("ball_volume: radius must be positive");
  if (n == 2) {
    const double s = std::sinh(0.5 * R);
    return 4.0 * kPi * s * s;
  }
  if (n == 3) return kPi * sinh_minus_x(2.0 * R);
  // omega_{n-1} int_0^R sinh^{n-1}(u) du, panelled Gauss-Legendre.
  const double sphere = 2.0 * std::exp(0.5 * n * std::log(kPi) - log_gamma(0.5 * n));
  const int panels = std::max(1, static_cast<int>(std::ceil(R)));
  double acc = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double a = R * k / panels, b = R * (k + 1) / panels;
    acc += gauss_panel([n](double u) { return std::pow(std::sinh(u), n - 1); }, a, b, 32);
  }
  return sphere * acc;
}

PointH3 apply_mobius(const Mobius3& m, const PointH3& p) {
  if (std::abs(m.det() - 1.0) > 1e-12) throw DomainError("apply_mobius: determinant must be 1");
  const cplx czd = m.c * p.z + m.d;
  const double r2 = p.r * p.r;
  const double denom = std::norm(czd) + std::norm(m.c) * r2;
  if (!(denom > 0.0)) throw NumericError("apply_mobius: degenerate denominator");
  const cplx z = ((m.a * p.z + m.b) * std::conj(czd) + m.a * std::conj(m.c) * r2) / denom;
  return {z, p.r / denom};
}

Point polar_point(const GeodesicBall& ball, double rho, double theta, double phi) {
  const double ch = std::cosh(rho), sh = std::sinh(rho);
  if (ball.n == 2) {
    const auto& c = std::get<PointH2>(ball.center);
    const double denom = ch - sh * std::sin(phi);
    const double x = sh * std::cos(phi) / denom, y = 1.0 / denom;
    return PointH2{c.x + c.y * x, c.y * y};
  }
  const auto& c = std::get<PointH3>(ball.center);
  const double denom = ch - sh * std::cos(theta);
  const cplx z = std::polar(sh * std::sin(theta) / denom, phi);
  return PointH3{c.z + c.r * z, c.r / denom};
}

std::vector<Point> sample_ball(const GeodesicBall& ball, std::uint64_t seed, long count) {
  ball.validate();
  if (ball.n != 2 && ball.n != 3) throw UsageError("sample_ball: dimension must be 2 or 3");
  if (count < 0) throw UsageError("sample_ball: negative count");
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  out.reserve(count);
  const double R = ball.R;
  const double total = ball.n == 2 ? std::cosh(R) - 1.0 : sinh_minus_x(2.0 * R);
  for (long i = 0; i < count; ++i) {
    const double u = uniform01(rng);
    double rho;
    if (ball.n == 2) {
      rho = acosh1p(u * total);
    } else {
      // Solve sinh(2 rho) - 2 rho = u * total by safeguarded Newton.
      const double target = u * total;
      double lo = 0.0, hi = R;
      rho = R * std::cbrt(u);
      for (int it = 0; it < 100; ++it) {
        const double g = sinh_minus_x(2.0 * rho) - target;
        if (g > 0.0) hi = rho; else lo = rho;
        const double dg = 2.0 * (std::cosh(2.0 * rho) - 1.0);
        double next = dg > 0.0 ? rho - g / dg : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - rho) <= 1e-15 * R) {
          rho = next;
          break;
        }
        rho = next;
      }
    }
    const double phi = 2.0 * kPi * uniform01(rng);
    double theta = 0.0;
    if (ball.n == 3) theta = std::acos(1.0 - 2.0 * uniform01(rng));
    out.push_back(polar_point(ball, rho, theta, phi));
  }
  return out;
}

BallNodes ball_nodes(const GeodesicBall& ball, int order) {
  ball.validate();
  if (ball.n != 2 && ball.n != 3) throw UsageError("ball_nodes: dimension must be 2 or 3");
  if (order < 1) throw UsageError("ball_nodes: order must be positive");
  const auto& gl = gauss_legendre(order);
  const double half = 0.5 * ball.R;
  BallNodes nodes;
  const double dphi = 2.0 * kPi / order;
  for (int i = 0; i < order; ++i) {
    const double rho = half * (1.0 + gl.nodes[i]);
    const double radial = half * gl.weights[i] * std::pow(std::sinh(rho), ball.n - 1);
    if (ball.n == 2) {
      for (int k = 0; k < order; ++k) {
        const double phi = dphi * (k + 0.5);
        nodes.points.push_back(polar_point(ball, rho, 0.0, phi));
        nodes.weights.push_back(radial * dphi);
      }
      continue;
    }
    for (int j = 0; j < order; ++j) {
      const double theta = std::acos(gl.nodes[j]);
      for (int k = 0; k < order; ++k) {
        const double phi = dphi * (k + 0.5);
        nodes.points.push_back(polar_point(ball, rho, theta, phi));
        nodes.weights.push_back(radial * gl.weights[j] * dphi);
      }
    }
  }
  return nodes;
}

cplx ball_quadrature(const GeodesicBall& ball, const std::function<cplx(const Point&)>& f,
                     int order) {
  const BallNodes nodes = ball_nodes(ball, order);
  std::vector<cplx> terms(nodes.points.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const cplx v = f(nodes.points[i]);
    if (!is_finite(v)) throw NumericError("ball_quadrature: non-finite integrand");
    terms[i] = nodes.weights[i] * v;
  }
  return pairwise_sum(terms);
}

}  // namespace quelab
