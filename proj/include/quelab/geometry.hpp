#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "quelab/common.hpp"

namespace quelab {

struct PointH2 {
  double x = 0.0;
  double y = 1.0;
};

// P = z + r j in the upper half space.
struct PointH3 {
  cplx z = 0.0;
  double r = 1.0;
};

using Point = std::variant<PointH2, PointH3>;

inline int dimension_of(const Point& p) { return std::holds_alternative<PointH2>(p) ? 2 : 3; }

// [[a, b], [c, d]] acting on H^3; ad - bc = 1.
struct Mobius3 {
  cplx a = 1.0, b = 0.0, c = 0.0, d = 1.0;
  cplx det() const { return a * d - b * c; }
};

struct GeodesicBall {
  int n = 2;
  Point center = PointH2{};
  double R = 1.0;

  // Throws DomainError on R < 1e-8 or a non-positive height, UsageError on a
  // dimension/center mismatch.
  void validate() const;
};

struct HeegnerPoint {
  long a = 1, b = 0, c = 1;
  long d = -4;  // b^2 - 4ac
  PointH2 z;
};

HeegnerPoint make_heegner(long a, long b, long c);

double distance(const PointH2& p, const PointH2& q);
double distance(const PointH3& p, const PointH3& q);
double distance(const Point& p, const Point& q);

// Volume of a geodesic ball of radius R in H^n.
double ball_volume(int n, double R);

PointH3 apply_mobius(const Mobius3& m, const PointH3& p);

// Exponential map at the center: the point at geodesic distance rho in the
// direction (theta, phi). For n = 2 only phi is used.
Point polar_point(const GeodesicBall& ball, double rho, double theta, double phi);

std::vector<Point> sample_ball(const GeodesicBall& ball, std::uint64_t seed, long count);

// Tensor quadrature in geodesic polar coordinates; weights include the
// volume element, so sum(weights) = ball_volume.
struct BallNodes {
  std::vector<Point> points;
  std::vector<double> weights;
};

BallNodes ball_nodes(const GeodesicBall& ball, int order = 32);

cplx ball_quadrature(const GeodesicBall& ball, const std::function<cplx(const Point&)>& f,
                     int order = 32);

}  // namespace quelab
