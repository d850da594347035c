#include "quelab/zeta.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <mutex>

#include "quelab/specfun.hpp"

namespace quelab {

namespace {

// B_{2k} / (2k)!, k = 1..9.
constexpr std::array<double, 9> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0};

constexpr int kBernoulliTerms = 8;

cplx power_minus(double base, cplx s) { return std::exp(-s * std::log(base)); }

// expm1(z) / z, finite at z = 0.
cplx expm1_over(cplx z) {
  if (std::abs(z) < 1e-4) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
  return (std::exp(z) - 1.0) / z;
}

// Euler-Maclaurin for sum_{n >= 0} (n + a)^{-s}. With regular = true the
// 1/(s-1) pole is removed from the integral term.
cplx hurwitz_em(cplx s, double a, bool regular, double* tail_bound) {
  const double t = std::abs(s.imag());
  const long N = std::max<long>(20, static_cast<long>(std::ceil(2.0 * std::max(t, std::abs(s)))));
  cplx acc = 0.0;
  for (long n = 0; n < N; ++n) acc += power_minus(n + a, s);
  const double x = N + a;
  const double lx = std::log(x);
  if (regular) {
    // (x^{1-s} - 1)/(s - 1) = -log x * expm1((1-s) log x) / ((1-s) log x)
    acc += -lx * expm1_over((1.0 - s) * lx);
  } else {
    if (s == cplx(1.0)) throw DomainError("zeta: pole at s = 1");
    acc += std::exp((1.0 - s) * lx) / (s - 1.0);
  }
  const cplx xs = std::exp(-s * lx);
  acc += 0.5 * xs;
  cplx poch = s;  // s (s+1) ... (s + 2k - 2)
  cplx xpow = xs / x;
  cplx last = 0.0;
  for (int k = 0; k < kBernoulliTerms; ++k) {
    last = kBernoulliOverFactorial[k] * poch * xpow;
    acc += last;
    poch *= (s + double(2 * k + 1)) * (s + double(2 * k + 2));
    xpow /= x * x;
  }
  if (tail_bound) {
    const cplx next = kBernoulliOverFactorial[kBernoulliTerms] * poch * xpow;
    const double sigma = s.real() + 2.0 * kBernoulliTerms + 1.0;
    *tail_bound = std::abs(next) * std::abs(s + 2.0 * kBernoulliTerms + 1.0) / std::max(sigma, 1.0);
  }
  return acc;
}

}  // namespace

cplx zeta_euler_maclaurin(cplx s, double* tail_bound) {
  if (s == cplx(1.0)) throw DomainError("riemann_zeta: pole at s = 1");
  // Sum from n = 1: Hurwitz at a = 1.
  return hurwitz_em(s, 1.0, false, tail_bound);
}

cplx zeta_theta_afe(cplx s) {
  if (s == cplx(1.0)) throw DomainError("riemann_zeta: pole at s = 1");
  if (s == cplx(0.0)) return -0.5;
  const cplx a = 0.5 * s, b = 0.5 * (1.0 - s);
  const double teff = std::abs(a.imag());
  const double theta = teff > 0.0 ? std::copysign(std::max(0.0, 0.5 * kPi - 3.0 / teff), a.imag()) : 0.0;
  const cplx tau = std::polar(1.0, theta);
  const double kappa = log_gamma(a).real();
  const double ct = std::cos(theta);
  const double reach = std::max(60.0 / (kPi * ct), 2.0 * std::max(std::abs(a), std::abs(b)) / kPi + 4.0);
  const long nmax = static_cast<long>(std::ceil(std::sqrt(reach))) + 1;
  cplx acc = 0.0;
  for (long n = 1; n <= nmax; ++n) {
    const double q = kPi * double(n) * double(n);
    const double lq = std::log(q);
    acc += std::exp(-a * lq) * upper_gamma_scaled(a, q * tau, kappa);
    acc += std::exp(-b * lq) * upper_gamma_scaled(b, q / tau, kappa);
  }
  const cplx ltau(0.0, theta);
  acc += std::exp((s - 1.0) * 0.5 * ltau - kappa) / (s - 1.0);
  acc -= std::exp(s * 0.5 * ltau - kappa) / s;
  // zeta = pi^{s/2} / Gamma(s/2) * Lambda
  return acc * std::exp(a * std::log(kPi) + kappa - log_gamma(a));
}

cplx riemann_zeta(cplx s, ZetaMethod method) {
  if (!is_finite(s)) throw DomainError("riemann_zeta: non-finite argument");
  return method == ZetaMethod::euler_maclaurin ? zeta_euler_maclaurin(s) : zeta_theta_afe(s);
}

cplx hurwitz_zeta_regular(cplx s, double a) {
  if (!(a > 0.0)) throw DomainError("hurwitz_zeta: a must be positive");
  return hurwitz_em(s, a, true, nullptr);
}

cplx hurwitz_zeta(cplx s, double a) {
  if (!(a > 0.0)) throw DomainError("hurwitz_zeta: a must be positive");
  return hurwitz_em(s, a, false, nullptr);
}

cplx dirichlet_L(cplx s, long d_K) {
  if (!is_finite(s)) throw DomainError("dirichlet_L: non-finite argument");
  const long q = std::labs(d_K);
  if (q < 3) throw UsageError("dirichlet_L: character must be nontrivial");
  // Sum of chi over a period vanishes, so the regularized Hurwitz values
  // combine to the exact L-value.
  cplx acc = 0.0;
  for (long a = 1; a < q; ++a) {
    const int chi = kronecker_chi(d_K, a);
    if (chi != 0) acc += double(chi) * hurwitz_zeta_regular(s, double(a) / double(q));
  }
  return acc * power_minus(double(q), s);
}

cplx dedekind_zeta(const ImagQuadField& K, cplx s) {
  if (s == cplx(1.0)) throw DomainError("dedekind_zeta: pole at s = 1");
  return riemann_zeta(s) * dirichlet_L(s, K.d_K);
}

cplx scattering_phi_K(const ImagQuadField& K, cplx s) {
  if (s == cplx(0.0)) throw DomainError("scattering_phi_K: pole at s = 0");
  const cplx denom = dedekind_zeta(K, 1.0 + s);
  if (std::abs(denom) == 0.0) throw DomainError("scattering_phi_K: zero of the denominator");
  return 2.0 * kPi / (s * K.sqrt_abs_dK()) * dedekind_zeta(K, s) / denom;
}

cplx scattering_phi_Q(cplx s) {
  if (s == cplx(1.0) || s == cplx(0.5)) throw DomainError("scattering_phi_Q: pole");
  const cplx denom = riemann_zeta(2.0 * s);
  if (std::abs(denom) == 0.0) throw DomainError("scattering_phi_Q: zero of the denominator");
  const cplx gamma_ratio = std::exp(log_gamma(s - 0.5) - log_gamma(s));
  return std::sqrt(kPi) * gamma_ratio * riemann_zeta(2.0 * s - 1.0) / denom;
}

ZetaBackend::ZetaBackend(ZetaMethod method, bool cache, PrecisionPolicy precision)
    : method_(method),
      cache_enabled_(cache),
      precision_(precision),
      mutex_(std::make_shared<std::shared_mutex>()),
      cache_(std::make_shared<std::map<Key, cplx>>()) {}

template <class F>
cplx ZetaBackend::memo(int kind, long param, cplx s, F&& compute) const {
  if (!cache_enabled_) return compute();
  const Key key{kind, param, std::bit_cast<std::uint64_t>(s.real()),
                std::bit_cast<std::uint64_t>(s.imag())};
  {
    std::shared_lock lock(*mutex_);
    auto it = cache_->find(key);
    if (it != cache_->end()) return it->second;
  }
  const cplx value = compute();
  std::unique_lock lock(*mutex_);
  cache_->emplace(key, value);
  return value;
}

cplx ZetaBackend::zeta(cplx s) const {
  return memo(0, 0, s, [&] { return riemann_zeta(s, method_); });
}

cplx ZetaBackend::L(cplx s, long d_K) const {
  return memo(1, d_K, s, [&] { return dirichlet_L(s, d_K); });
}

cplx ZetaBackend::dedekind(const ImagQuadField& K, cplx s) const {
  if (s == cplx(1.0)) throw DomainError("dedekind_zeta: pole at s = 1");
  return zeta(s) * L(s, K.d_K);
}

}  // namespace quelab
