#pragma once

#include <functional>

#include "quelab/common.hpp"
#include "quelab/geometry.hpp"

namespace quelab {

// Normalized characteristic kernel of the geodesic ball of radius R in H^n.
struct BallKernel {
  int n = 3;
  double R = 0.5;
};

// Spectral parameter of the constant eigenfunction, i (n-1)/2.
inline cplx constant_parameter(int n) { return {0.0, 0.5 * (n - 1)}; }

// Selberg transform by quadrature:
//   int_0^R (cosh R - cosh u)^{(n-1)/2} cos(t u) du
//   / int_0^R (cosh R - cosh u)^{(n-1)/2} cosh((n-1) u / 2) du.
cplx h_char(const BallKernel& kernel, cplx t);

// Closed form for n = 3:
//   4 pi (cosh R sin tR - t sinh R cos tR) / ((1 + t^2) t vol(B_R)),
// with series fallbacks near t = 0 and t = i.
cplx h_closed_h3(double R, cplx t);

// Small-radius form Gamma(n/2 + 1) (2/(Rt))^{n/2} J_{n/2}(Rt).
// Requires Rt >= 5 and R <= 0.2.
double h_bessel_asym(const BallKernel& kernel, double t);

struct MeanValue {
  cplx avg;        // ball average of f
  cplx predicted;  // h(t) f(center)
};

MeanValue mean_value_apply(const GeodesicBall& ball, const std::function<cplx(const Point&)>& f,
                           cplx t, int order = 32);

}  // namespace quelab
