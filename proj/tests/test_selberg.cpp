#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quelab/geometry.hpp"
#include "quelab/selberg.hpp"
#include "quelab/specfun.hpp"
#include "support.hpp"

using namespace quelab;

// Reference values: tests/oracles/selberg_eisenstein.py (mpmath quadrature).

TEST_CASE("normalization at the constant eigenfunction") {
  for (int n : {2, 3, 4, 5, 9}) {
    for (double R : {0.05, 0.5, 1.0}) {
      CHECK(std::abs(h_char({n, R}, constant_parameter(n)) - 1.0) <= 1e-10);
    }
  }
  CHECK(std::abs(h_closed_h3(0.7, cplx(0, 1)) - 1.0) <= 1e-12);
  CHECK(std::abs(h_closed_h3(0.7, cplx(0, 1 + 1e-5)) - h_char({3, 0.7}, cplx(0, 1 + 1e-5))) <= 1e-8);
}

TEST_CASE("h_char against mpmath") {
  CHECK(std::abs(h_char({2, 0.5}, 3.0) - 0.7374967247900974) < 1e-12);
  CHECK(std::abs(h_char({4, 1.0}, 7.0) + 0.042805399975636917) < 1e-12);
  CHECK(std::abs(h_char({5, 0.3}, 20.0) + 0.016180151678163961) < 1e-12);
  CHECK(std::abs(h_char({3, 2.0}, 1.5) - 0.20845003162957833) < 1e-12);
  CHECK(h_char({3, 0.5}, 10.0).real() == doctest::Approx(-0.05786).epsilon(2e-4));
  CHECK(h_closed_h3(0.5, 10.0).real() == doctest::Approx(-0.05786).epsilon(2e-4));
  CHECK_THROWS_AS(h_char({3, 0.0}, 1.0), DomainError);
}

TEST_CASE("h_char is real, even and bounded by one for real t") {
  for (int n : {2, 3, 6}) {
    for (double t = 0.0; t < 60.0; t += 1.7) {
      const cplx a = h_char({n, 0.3}, t), b = h_char({n, 0.3}, -t);
      CHECK(a.imag() == 0.0);
      CHECK(a.real() == doctest::Approx(b.real()).epsilon(1e-14));
      CHECK(std::abs(a) <= 1.0 + 1e-14);
    }
  }
}

TEST_CASE("closed form matches quadrature") {
  for (double R : {0.1, 0.5, 1.0}) {
    for (double t = 0.1; t <= 200.0; t *= 1.35) {
      CHECK(std::abs(h_char({3, R}, t) - h_closed_h3(R, t)) <= 1e-8);
    }
  }
  // Removable point at t = 0.
  CHECK(std::abs(h_closed_h3(0.5, 1e-6) - h_char({3, 0.5}, 0.0)) <= 1e-10);
}

TEST_CASE("Bessel asymptotic") {
  CHECK_THROWS_AS(h_bessel_asym({3, 0.5}, 100.0), UsageError);
  CHECK_THROWS_AS(h_bessel_asym({3, 0.01}, 100.0), UsageError);
  const double asym = h_bessel_asym({3, 1e-3}, 1e5);
  CHECK(std::abs(h_char({3, 1e-3}, 1e5).real() - asym) <= 0.02 * std::abs(asym));
  // n = 3 reduces to 3 x^{-2} (sin x / x - cos x).
  for (double x : {5.0, 17.3, 80.0}) {
    const double R = 0.1, t = x / R;
    CHECK(h_bessel_asym({3, R}, t) == doctest::Approx(3 / (x * x) * (std::sin(x) / x - std::cos(x))).epsilon(1e-12));
  }
  // n = 5 envelope.
  const double x = 0.01 * 5000.0;
  const double envelope = 1.2 * std::exp(log_gamma(3.5)) * std::pow(2.0, 2.5) * std::pow(x, -2.5) *
                          std::sqrt(2.0 / (kPi * x));
  CHECK(std::abs(h_char({5, 0.01}, 5000.0).real()) <= envelope);
}

TEST_CASE("Bessel asymptotic error shrinks with R") {
  for (int n : {3, 4}) {
    for (double x : {7.0, 23.0}) {
      const double e1 = std::abs(h_char({n, 0.2}, x / 0.2).real() - h_bessel_asym({n, 0.2}, x / 0.2));
      const double e2 = std::abs(h_char({n, 0.05}, x / 0.05).real() - h_bessel_asym({n, 0.05}, x / 0.05));
      CHECK(e2 < e1);
      CHECK(e2 <= 0.05 * 0.05 + std::pow(x, -(n + 3) / 2.0));
    }
  }
}

TEST_CASE("decay envelope is stable as t doubles") {
  for (int n : {2, 3}) {
    const double R = 0.5;
    double first = 0.0;
    for (double X = 10.0; X <= 1000.0 / R; X *= 2.0) {
      double sup = 0.0;
      for (int k = 0; k <= 200; ++k) {
        const double t = X * (1.0 + k / 200.0);
        sup = std::max(sup, std::abs(h_char({n, R}, t)) * std::pow(R * t, (n + 1) / 2.0));
      }
      if (first == 0.0) first = sup;
      CHECK(sup <= 3.0 * first);
      CHECK(sup >= first / 3.0);
    }
  }
}

TEST_CASE("mean value of the constant function") {
  for (int n : {2, 3}) {
    const GeodesicBall ball = n == 2 ? GeodesicBall{2, PointH2{0.2, 1.4}, 0.6}
                                     : GeodesicBall{3, PointH3{{0.2, 0.1}, 1.4}, 0.6};
    const MeanValue mv = mean_value_apply(ball, [](const Point&) { return cplx(1.0); }, constant_parameter(n));
    CHECK(std::abs(mv.avg - 1.0) <= 1e-12);
    CHECK(std::abs(mv.predicted - 1.0) <= 1e-12);
  }
}

TEST_CASE("mean value of y^{1/2 + it}") {
  const double t = 6.0;
  const GeodesicBall ball{2, PointH2{0.0, 1.3}, 0.8};
  auto f = [&](const Point& p) { return std::exp(cplx(0.5, t) * std::log(std::get<PointH2>(p).y)); };
  const MeanValue mv = mean_value_apply(ball, f, t, 48);
  CHECK(std::abs(mv.avg - mv.predicted) <= 1e-10 * std::abs(mv.predicted));
}

TEST_CASE("mean value of r^{1 + it} in three dimensions") {
  const double t = 9.0;
  const GeodesicBall ball{3, PointH3{{0.1, 0.0}, 0.7}, 0.5};
  auto f = [&](const Point& p) { return std::exp(cplx(1.0, t) * std::log(std::get<PointH3>(p).r)); };
  const MeanValue mv = mean_value_apply(ball, f, t, 40);
  CHECK(std::abs(mv.avg - mv.predicted) <= 1e-10 * std::abs(mv.predicted));
}
