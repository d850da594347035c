#include <cmath>

#include "quelab/eisenstein.hpp"
#include "quelab/selberg.hpp"
#include "quelab/specfun.hpp"

namespace quelab {

namespace {

// log |Gamma(s)|^2
double log_abs_gamma_sq(cplx s) { return 2.0 * log_gamma(s).real(); }

// log of the completed zeta pi^{-s/2} Gamma(s/2) zeta(s), principal branches.
cplx log_completed(cplx s) {
  const cplx z = riemann_zeta(s);
  if (std::abs(z) == 0.0) throw DomainError("reg_triple: zeta vanishes");
  return -0.5 * s * std::log(kPi) + log_gamma(0.5 * s) + std::log(z);
}

}  // namespace

GammaFactorReport gamma_factors(int dim, double t_j, double t) {
  if (dim != 2 && dim != 3) throw UsageError("gamma_factors: dim must be 2 or 3");
  if (!std::isfinite(t_j) || !std::isfinite(t)) throw DomainError("gamma_factors: non-finite input");
  GammaFactorReport rep;
  const double plus = t_j + 0.5 * t, minus = t_j - 0.5 * t;
  rep.Q = 4.0 * std::abs(t_j) - std::abs(2.0 * t_j + t) - std::abs(2.0 * t_j - t);
  double lg;
  if (dim == 2) {
    rep.P = (1.0 + std::abs(t)) * std::sqrt(1.0 + std::abs(2.0 * t_j + t)) *
            std::sqrt(1.0 + std::abs(2.0 * t_j - t));
    lg = 2.0 * log_abs_gamma_sq({0.25, 0.5 * t}) + log_abs_gamma_sq({0.25, plus}) +
         log_abs_gamma_sq({0.25, minus}) - 2.0 * log_abs_gamma_sq({0.5, t_j}) - log_abs_gamma_sq({0.5, t});
  } else {
    rep.P = (1.0 + std::abs(t)) * (1.0 + std::abs(t_j)) * (1.0 + std::abs(t_j));
    lg = 2.0 * log_abs_gamma_sq({0.5, 0.5 * t}) + log_abs_gamma_sq({0.5, plus}) +
         log_abs_gamma_sq({0.5, minus}) - 2.0 * log_abs_gamma_sq({1.0, t_j}) - log_abs_gamma_sq({1.0, t});
  }
  rep.gamma_exact = std::exp(lg);
  rep.gamma_asym = std::exp(0.5 * kPi * rep.Q) / rep.P;
  return rep;
}

cplx reg_triple(int dim, double t, double tp, const ImagQuadField& K) {
  if (dim != 2 && dim != 3) throw UsageError("reg_triple: dim must be 2 or 3");
  if (!std::isfinite(t) || !std::isfinite(tp)) throw DomainError("reg_triple: non-finite input");
  if (t == 0.0) throw DomainError("reg_triple: t = 0 meets the pole at s = 1");
  if (dim == 2) {
    if (tp == 0.0) throw DomainError("reg_triple: t' = 0 meets the pole at s = 1");
    const cplx num = 2.0 * log_completed({0.5, -tp}) + log_completed({0.5, 2.0 * t - tp}) +
                     log_completed({0.5, -(2.0 * t + tp)});
    const cplx l1 = log_completed({1.0, 2.0 * t});
    const cplx den = 2.0 * l1.real() + log_completed({1.0, -2.0 * tp});
    return std::exp(num - den);
  }
  if (tp == 0.0) throw DomainError("reg_triple: t' = 0 meets the pole at s = 1");
  const cplx h(0.5, 0.5 * tp);  // (1 + i t') / 2
  const cplx lg = 2.0 * log_gamma(h) + log_gamma(h - cplx(0.0, t)) + log_gamma(h + cplx(0.0, t)) -
                  log_gamma({1.0, tp}) - log_abs_gamma_sq({1.0, t});
  const cplx zk = dedekind_zeta(K, h) * dedekind_zeta(K, h) * dedekind_zeta(K, h - cplx(0.0, t)) *
                  dedekind_zeta(K, h + cplx(0.0, t));
  const cplx zd = dedekind_zeta(K, {1.0, tp}) * std::norm(dedekind_zeta(K, {1.0, t}));
  if (std::abs(zd) == 0.0) throw DomainError("reg_triple: denominator vanishes");
  return std::exp(lg) * zk / zd;
}

LowerBound lower_bound_avg(const HeegnerPoint& w, double R, double t, const EisensteinH2& evaluator) {
  if (!(R > 0.0)) throw DomainError("lower_bound_avg: R must be positive");
  if (0.25 + t * t <= 1.0) throw DomainError("lower_bound_avg: log(1/4 + t^2) must be positive");
  LowerBound out;
  out.h = h_char(BallKernel{2, R}, t).real();
  out.average = out.h * evaluator.heegner(w, cplx(0.5, t));
  out.bound = std::norm(out.average) / std::log(0.25 + t * t);
  return out;
}

}  // namespace quelab
