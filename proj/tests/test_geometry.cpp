#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>

#include "quelab/geometry.hpp"
#include "quelab/quadrature.hpp"
#include "support.hpp"

using namespace quelab;

namespace {

Mobius3 random_mobius(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    const cplx a(g(rng), g(rng)), b(g(rng), g(rng)), c(g(rng), g(rng));
    if (std::abs(a) < 0.2) continue;
    const cplx d = (1.0 + b * c) / a;
    return {a, b, c, d};
  }
}

PointH3 random_h3(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0), r(0.2, 3.0);
  return {{u(rng), u(rng)}, r(rng)};
}

}  // namespace

TEST_CASE("distance examples") {
  CHECK(distance(PointH3{0.0, 1.0}, PointH3{0.0, 1.0}) == 0.0);
  CHECK(std::abs(distance(PointH3{0.0, 1.0}, PointH3{0.0, 2.0}) - std::log(2.0)) < 1e-15);
  CHECK(std::abs(distance(PointH2{0, 1}, PointH2{1, 1}) - std::acosh(1.5)) < 1e-15);
  CHECK(std::abs(distance(PointH2{0, 1}, PointH2{1, 1}) - 0.9624236501192069) < 1e-15);
  CHECK_THROWS_AS(distance(Point{PointH2{}}, Point{PointH3{}}), UsageError);
}

TEST_CASE("distance is symmetric and satisfies the triangle inequality") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    const PointH3 p = random_h3(rng), q = random_h3(rng), w = random_h3(rng);
    CHECK(distance(p, q) == doctest::Approx(distance(q, p)).epsilon(1e-14));
    CHECK(distance(p, w) <= distance(p, q) + distance(q, w) + 1e-12);
    CHECK(distance(p, q) > 0.0);
  }
}

TEST_CASE("Mobius action examples") {
  const PointH3 j{0.0, 1.0};
  const PointH3 t = apply_mobius({1.0, 1.0, 0.0, 1.0}, j);
  CHECK(std::abs(t.z - cplx(1.0)) < 1e-15);
  CHECK(t.r == doctest::Approx(1.0));
  const PointH3 inv = apply_mobius({0.0, -1.0, 1.0, 0.0}, j);
  CHECK(std::abs(inv.z) < 1e-15);
  CHECK(inv.r == doctest::Approx(1.0));
  const PointH3 half = apply_mobius({0.0, -1.0, 1.0, 0.0}, PointH3{0.0, 2.0});
  CHECK(half.r == doctest::Approx(0.5));
  CHECK_THROWS_AS(apply_mobius({2.0, 0.0, 0.0, 1.0}, j), DomainError);
}

TEST_CASE("isometry invariance of the distance") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Mobius3 m = random_mobius(rng);
    const PointH3 p = random_h3(rng), q = random_h3(rng);
    CHECK(std::abs(distance(apply_mobius(m, p), apply_mobius(m, q)) - distance(p, q)) <= 1e-10);
  }
}

TEST_CASE("Mobius action preserves the volume element") {
  // dV = dx dy dr / r^3: the Jacobian of the action equals (r'/r)^3.
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Mobius3 m = random_mobius(rng);
    const PointH3 p = random_h3(rng);
    const double h = 1e-6;
    auto image = [&](double dx, double dy, double dr) {
      const PointH3 q = apply_mobius(m, {p.z + cplx(dx, dy), p.r + dr});
      return std::array<double, 3>{q.z.real(), q.z.imag(), q.r};
    };
    double J[3][3];
    for (int k = 0; k < 3; ++k) {
      const double e[3] = {k == 0 ? h : 0.0, k == 1 ? h : 0.0, k == 2 ? h : 0.0};
      const auto a = image(e[0], e[1], e[2]), b = image(-e[0], -e[1], -e[2]);
      for (int l = 0; l < 3; ++l) J[l][k] = (a[l] - b[l]) / (2 * h);
    }
    const double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                       J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                       J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    const double ratio = apply_mobius(m, p).r / p.r;
    CHECK(std::abs(det) == doctest::Approx(ratio * ratio * ratio).epsilon(1e-6));
  }
}

TEST_CASE("ball volume") {
  CHECK(ball_volume(3, 0.1) == doctest::Approx(kPi * (std::sinh(0.2) - 0.2)).epsilon(1e-13));
  CHECK(ball_volume(3, 0.1) == doctest::Approx(4.1971e-3).epsilon(1e-4));
  CHECK(ball_volume(2, 1.0) == doctest::Approx(2 * kPi * (std::cosh(1.0) - 1.0)).epsilon(1e-14));
  CHECK(ball_volume(3, 1e-5) / 1e-15 == doctest::Approx(4 * kPi / 3).epsilon(1e-9));
  CHECK_THROWS_AS(ball_volume(3, 0.0), DomainError);
  CHECK_THROWS_AS(ball_volume(2, -1.0), DomainError);
  double prev = 0.0;
  for (double R = 0.01; R < 5.0; R *= 1.3) {
    const double v = ball_volume(3, R);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("ball volume closed form against radial quadrature") {
  for (double R : {0.05, 0.4, 1.0, 2.5}) {
    const double integral = gauss_panel([](double u) { return std::sinh(u) * std::sinh(u); }, 0.0, R, 40);
    CHECK(std::abs(ball_volume(3, R) - 4 * kPi * integral) <= 1e-10 * std::max(1.0, ball_volume(3, R)));
  }
  // n = 5: omega_4 = 8 pi^2 / 3.
  const double i5 = gauss_panel([](double u) { return std::pow(std::sinh(u), 4); }, 0.0, 0.7, 40);
  CHECK(ball_volume(5, 0.7) == doctest::Approx(8 * kPi * kPi / 3 * i5).epsilon(1e-12));
}

TEST_CASE("geodesic ball validation") {
  CHECK_THROWS_AS((GeodesicBall{2, PointH2{0, 1}, 1e-9}.validate()), DomainError);
  CHECK_THROWS_AS((GeodesicBall{3, PointH2{0, 1}, 0.5}.validate()), UsageError);
  CHECK_THROWS_AS((GeodesicBall{2, PointH2{0, -1}, 0.5}.validate()), DomainError);
  CHECK_NOTHROW((GeodesicBall{3, PointH3{0.0, 1.0}, 0.5}.validate()));
}

TEST_CASE("polar points sit at the requested distance") {
  const GeodesicBall b2{2, PointH2{0.3, 1.7}, 1.0};
  const GeodesicBall b3{3, PointH3{{0.2, -0.4}, 0.6}, 1.0};
  for (double rho : {0.1, 0.5, 0.99}) {
    for (double phi : {0.0, 1.0, 4.0}) {
      CHECK(distance(polar_point(b2, rho, 0.0, phi), b2.center) == doctest::Approx(rho).epsilon(1e-12));
      CHECK(distance(polar_point(b3, rho, 0.7, phi), b3.center) == doctest::Approx(rho).epsilon(1e-12));
    }
  }
}

TEST_CASE("sample_ball") {
  const GeodesicBall ball{3, PointH3{{0.1, 0.2}, 1.3}, 1.0};
  CHECK(sample_ball(ball, 1, 0).empty());
  const auto a = sample_ball(ball, 9, 50), b = sample_ball(ball, 9, 50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::get<PointH3>(a[i]).z == std::get<PointH3>(b[i]).z);
    CHECK(std::get<PointH3>(a[i]).r == std::get<PointH3>(b[i]).r);
  }
}

TEST_CASE("sample_ball inner-ball fraction") {
  const GeodesicBall ball{3, PointH3{0.0, 1.0}, 1.0};
  const long n = 100000;
  const auto pts = sample_ball(ball, 2024, n);
  long inside = 0;
  for (const auto& p : pts) inside += distance(p, ball.center) <= 0.5 ? 1 : 0;
  const double p0 = ball_volume(3, 0.5) / ball_volume(3, 1.0);
  const double sd = std::sqrt(p0 * (1 - p0) / n);
  CHECK(std::abs(double(inside) / n - p0) <= 3 * sd);
}

TEST_CASE("sample_ball radial distribution passes Kolmogorov-Smirnov") {
  for (int n : {2, 3}) {
    const GeodesicBall ball = n == 2 ? GeodesicBall{2, PointH2{0.5, 2.0}, 0.8}
                                     : GeodesicBall{3, PointH3{{0.5, 0.1}, 2.0}, 0.8};
    const long count = 100000;
    std::vector<double> rho;
    for (const auto& p : sample_ball(ball, 77 + n, count)) rho.push_back(distance(p, ball.center));
    std::sort(rho.begin(), rho.end());
    const double total = ball_volume(n, ball.R);
    double D = 0.0;
    for (long i = 0; i < count; ++i) {
      const double F = rho[i] > 1e-8 ? ball_volume(n, rho[i]) / total : 0.0;
      D = std::max({D, std::abs(F - double(i) / count), std::abs(F - double(i + 1) / count)});
    }
    // 1% critical value.
    CHECK(D < 1.628 / std::sqrt(double(count)));
  }
}

TEST_CASE("ball quadrature") {
  const GeodesicBall b2{2, PointH2{0.1, 0.9}, 0.7};
  const GeodesicBall b3{3, PointH3{{0.1, 0.2}, 1.0}, 0.7};
  auto one = [](const Point&) { return cplx(1.0); };
  CHECK(std::abs(ball_quadrature(b2, one).real() - ball_volume(2, 0.7)) < 1e-12);
  CHECK(std::abs(ball_quadrature(b3, one).real() - ball_volume(3, 0.7)) < 1e-12);
  // Radial reduction: int_B e^{-rho} = 4 pi int_0^R e^{-u} sinh^2 u du.
  auto radial = [&](const Point& p) { return cplx(std::exp(-distance(p, b3.center))); };
  const double ref = 4 * kPi * gauss_panel([](double u) { return std::exp(-u) * std::sinh(u) * std::sinh(u); }, 0.0, 0.7, 40);
  CHECK(std::abs(ball_quadrature(b3, radial).real() - ref) < 1e-8);
}

TEST_CASE("ball quadrature agrees with Monte Carlo") {
  const GeodesicBall ball{3, PointH3{{0.3, 0.0}, 0.8}, 0.9};
  // Smooth bump in the distance plus an anisotropic term.
  auto f = [&](const Point& p) {
    const auto& q = std::get<PointH3>(p);
    const double rho = distance(p, ball.center);
    return cplx(std::exp(-4 * rho * rho) + 0.3 * q.z.real() / q.r);
  };
  const cplx quad = ball_quadrature(ball, f);
  const long n = 40000;
  std::vector<double> v;
  for (const auto& p : sample_ball(ball, 5, n)) v.push_back(f(p).real());
  double m = 0, m2 = 0;
  for (double x : v) {
    m += x;
    m2 += x * x;
  }
  m /= n;
  const double se = std::sqrt((m2 / n - m * m) / n) * ball_volume(3, ball.R);
  CHECK(std::abs(m * ball_volume(3, ball.R) - quad.real()) <= 3 * se);
}

TEST_CASE("Heegner points") {
  const HeegnerPoint w = make_heegner(1, 1, 1);
  CHECK(w.d == -3);
  CHECK(w.z.x == doctest::Approx(-0.5));
  CHECK(w.z.y == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK_THROWS_AS(make_heegner(1, 2, 1), DomainError);
  CHECK_THROWS(make_heegner(-1, 0, -1));
}
