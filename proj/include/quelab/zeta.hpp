#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>

#include "quelab/common.hpp"
#include "quelab/lattice.hpp"

namespace quelab {

enum class ZetaMethod { euler_maclaurin, riemann_siegel };

// Euler-Maclaurin zeta. If tail_bound is non-null it receives an estimate of
// the truncation error.
cplx zeta_euler_maclaurin(cplx s, double* tail_bound = nullptr);

// Theta-function approximate functional equation with a rotated split point.
// This is the "riemann_siegel" cross-check backend.
cplx zeta_theta_afe(cplx s);

cplx riemann_zeta(cplx s, ZetaMethod method = ZetaMethod::euler_maclaurin);

// Hurwitz zeta with the 1/(s-1) pole removed; finite at s = 1.
cplx hurwitz_zeta_regular(cplx s, double a);
cplx hurwitz_zeta(cplx s, double a);

// L(s, chi) for chi the Kronecker symbol (d_K / .).
cplx dirichlet_L(cplx s, long d_K);

cplx dedekind_zeta(const ImagQuadField& K, cplx s);

// Epstein zeta sum over (m, n) != 0 of Q(m, n)^{-s}.
cplx epstein_Z(const BinaryQuadraticForm& Q, cplx s);

// (2 pi / (s sqrt|d_K|)) zeta_K(s) / zeta_K(1 + s).
cplx scattering_phi_K(const ImagQuadField& K, cplx s);
// sqrt(pi) Gamma(s - 1/2) zeta(2s - 1) / (Gamma(s) zeta(2s)).
cplx scattering_phi_Q(cplx s);

// Evaluation front end with an optional memo cache. Cached values are keyed by
// the exact bits of s, so results are identical with the cache disabled.
class ZetaBackend {
 public:
  explicit ZetaBackend(ZetaMethod method = ZetaMethod::euler_maclaurin, bool cache = true,
                       PrecisionPolicy precision = {});

  ZetaMethod method() const { return method_; }
  const PrecisionPolicy& precision() const { return precision_; }
  bool caching() const { return cache_enabled_; }

  cplx zeta(cplx s) const;
  cplx L(cplx s, long d_K) const;
  cplx dedekind(const ImagQuadField& K, cplx s) const;

 private:
  struct Key {
    int kind;
    long param;
    std::uint64_t re, im;
    auto operator<=>(const Key&) const = default;
  };
  template <class F>
  cplx memo(int kind, long param, cplx s, F&& compute) const;

  ZetaMethod method_;
  bool cache_enabled_;
  PrecisionPolicy precision_;
  mutable std::shared_ptr<std::shared_mutex> mutex_;
  mutable std::shared_ptr<std::map<Key, cplx>> cache_;
};

// int_0^T |zeta(1/2 + it)|^{2k} dt for k in {2, 6}.
double zeta_moment(int k, double T, const ZetaBackend& backend = ZetaBackend{}, int threads = 1);

struct FourthMomentReport {
  double direct = 0.0;        // int_0^T |zeta_K(1/2 + it)|^4 dt
  double twelfth_zeta = 0.0;  // int_0^T |zeta(1/2 + it)|^12 dt
  double sixth_L = 0.0;       // int_0^T |L(1/2 + it)|^6 dt
  double holder_bound = 0.0;  // twelfth^{1/3} * sixth^{2/3}
};

FourthMomentReport dedekind_fourth_moment(const ImagQuadField& K, double T,
                                          const ZetaBackend& backend = ZetaBackend{},
                                          int threads = 1);

}  // namespace quelab
