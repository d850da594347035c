#pragma once

#include <vector>

#include "quelab/common.hpp"

namespace quelab {

// Principal branch of log Gamma (continuous off the negative real axis).
cplx log_gamma(cplx s);
double log_gamma(double s);

// K_nu(x) = int_0^inf exp(-x cosh u) cosh(nu u) du.
cplx bessel_K(cplx nu, double x, const PrecisionPolicy& policy = {});

// exp(pi |Im nu| / 2) * K_nu(x). Stays O(1) for large imaginary order where
// the unscaled value underflows.
cplx bessel_K_scaled(cplx nu, double x, const PrecisionPolicy& policy = {});

// Piecewise Taylor expansion of bessel_K_scaled(nu, .) on [x_min, x_max],
// for evaluating one order at many arguments.
class KBesselTable {
 public:
  KBesselTable(cplx nu, double x_min, double x_max, const PrecisionPolicy& policy = {});

  cplx nu() const { return nu_; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }

  // Scaled value; arguments outside [x_min, x_max] fall back to direct evaluation.
  cplx scaled(double x) const;

 private:
  struct Piece {
    double a, b;
    std::vector<cplx> coef;  // Taylor coefficients about b
  };
  cplx nu_;
  double x_min_, x_max_;
  PrecisionPolicy policy_;
  std::vector<Piece> pieces_;
};

// J_nu(x) for nu a non-negative multiple of 1/2.
double bessel_J(double nu, double x);

// Upper incomplete gamma Gamma(a, z) multiplied by exp(-log_scale), for
// Re z > 0 or z on the positive real axis.
cplx upper_gamma_scaled(cplx a, cplx z, double log_scale);
inline cplx upper_gamma(cplx a, cplx z) { return upper_gamma_scaled(a, z, 0.0); }

}  // namespace quelab
