#pragma once

#include <memory>
#include <vector>

#include "quelab/common.hpp"
#include "quelab/geometry.hpp"
#include "quelab/lattice.hpp"
#include "quelab/zeta.hpp"

namespace quelab {

// Modular surface. `standard` has constant term y^s + phi(s) y^{1-s}, i.e. a
// sum over coprime (c, d) modulo +-1. `all_pairs` sums over all coprime
// (c, d), which is twice the standard series and satisfies
// zeta(2s) E(z, s) = y^s Z(s, Q) at Heegner points.
enum class H2Normalization { standard, all_pairs };

// Bianchi manifolds: E = (|O^*| / 2) E_inf.
enum class H3Normalization { E, E_inf };

struct FourierValue {
  cplx value;
  double tail_estimate = 0.0;  // magnitude of the first omitted block of terms
  long terms = 0;              // Fourier modes used
};

class EisensteinH2 {
 public:
  struct Options {
    long truncation = 0;  // 0: chosen from the K-Bessel decay per point
    double height_floor = 0.8660254037844386;
    H2Normalization normalization = H2Normalization::standard;
    PrecisionPolicy precision = {};
    int threads = 1;  // used by eval_many
  };

  EisensteinH2() : EisensteinH2(Options{}) {}
  explicit EisensteinH2(Options options);

  const Options& options() const { return options_; }
  double normalization_factor() const;

  // Fourier route, after reduction to the standard fundamental domain.
  cplx eval(const PointH2& z, cplx s) const;
  FourierValue eval_detailed(const PointH2& z, cplx s) const;
  // Shares the per-s set-up (coefficients, K-Bessel table) across points.
  std::vector<cplx> eval_many(const std::vector<PointH2>& points, cplx s) const;

  // Epstein route at a Heegner point: y^s Z(s, Q) / zeta(2s), Q(m, n) = |m z + n|^2,
  // scaled to the chosen normalization.
  cplx heegner(const HeegnerPoint& w, cplx s) const;

  // Reduction to |x| <= 1/2, |z| >= 1 (iteration cap 1000).
  static PointH2 reduce(const PointH2& z);

 private:
  Options options_;
  ZetaBackend backend_;
};

class EisensteinH3 {
 public:
  struct Options {
    ImagQuadField field = make_field(-1);
    long norm_cap = 0;  // 0: chosen from the K-Bessel decay per point set
    double height_floor = 0.5;
    H3Normalization normalization = H3Normalization::E;
    PrecisionPolicy precision = {};
    int threads = 1;  // used by eval_many
  };

  EisensteinH3() : EisensteinH3(Options{}) {}
  explicit EisensteinH3(Options options);

  const Options& options() const { return options_; }
  double normalization_factor() const;

  // E(P, s) (or E_inf) by the Fourier expansion; the critical line is Re s = 1.
  cplx eval(const PointH3& P, cplx s) const;
  FourierValue eval_detailed(const PointH3& P, cplx s) const;
  std::vector<cplx> eval_many(const std::vector<PointH3>& points, cplx s) const;

  // Moves P toward the cusp by PSL_2(O_K) until r >= height_floor or no
  // element raises the height (iteration cap 1000).
  PointH3 reduce(const PointH3& P) const;

 private:
  Options options_;
  ZetaBackend backend_;
};

struct GammaFactorReport {
  double Q = 0.0;            // 4|t_j| - |2t_j + t| - |2t_j - t|
  double P = 0.0;            // P_2 or P_3
  double gamma_exact = 0.0;  // gamma quotient from log_gamma
  double gamma_asym = 0.0;   // exp(pi Q / 2) / P
};

GammaFactorReport gamma_factors(int dim, double t_j, double t);

// Zeta-gamma ratio of the regularized Eisenstein triple product with the
// unknown constant set to 1. dim 3 uses the given field.
cplx reg_triple(int dim, double t, double t_prime, const ImagQuadField& K = make_field(-1));

struct LowerBound {
  cplx average;  // h_R(t) E(w, 1/2 + it) via the Epstein route
  double h = 0.0;
  double bound = 0.0;  // |average|^2 / log(1/4 + t^2)
};

LowerBound lower_bound_avg(const HeegnerPoint& w, double R, double t,
                           const EisensteinH2& evaluator = EisensteinH2{});

// Cutoff x beyond which exp(pi |Im nu| / 2) K_nu(x) is below exp(-drop).
double k_bessel_cutoff(cplx nu, double drop = 40.0);

}  // namespace quelab
