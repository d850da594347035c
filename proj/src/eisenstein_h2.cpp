#include <algorithm>
#include <cmath>

#include "quelab/eisenstein.hpp"
#include "quelab/parallel.hpp"
#include "quelab/specfun.hpp"

namespace quelab {

double k_bessel_cutoff(cplx nu, double drop) {
  const double a = std::abs(nu.imag()), sigma = std::abs(nu.real());
  // Debye exponent of the scaled function beyond the turning point.
  auto eta = [a](double x) {
    if (x <= a) return 0.0;
    const double root = std::sqrt(x * x - a * a);
    return root - a * std::acos(a / x);
  };
  auto excess = [&](double x) { return eta(x) - drop - sigma * std::log1p(x); };
  double lo = a, hi = a + drop + 1.0;
  while (excess(hi) < 0.0) hi = a + 2.0 * (hi - a);
  for (int it = 0; it < 200 && hi - lo > 1e-6 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::max(hi, 1.0);
}

namespace {

struct PreparedH2 {
  cplx s;
  cplx phi;
  cplx coef;                  // 4 pi^s / (Gamma(s) zeta(2s)), times exp(pi |t| / 2)
  std::vector<cplx> a;        // a[n] = n^{s-1/2} sigma_{1-2s}(n), a[0] unused
  double x_cut;
  std::unique_ptr<KBesselTable> table;
};

PreparedH2 prepare_h2(cplx s, double y_min, double y_max, long truncation, const ZetaBackend& backend,
                      const PrecisionPolicy& precision) {
  if (s == cplx(1.0)) throw DomainError("eis_h2: pole at s = 1");
  PreparedH2 p;
  p.s = s;
  p.phi = scattering_phi_Q(s);
  const double at = std::abs(s.imag());
  p.coef = 4.0 * std::exp(s * std::log(kPi) - log_gamma(s) - 0.5 * kPi * at) / backend.zeta(2.0 * s);
  const cplx nu = s - 0.5;
  long nmax;
  if (truncation > 0) {
    nmax = truncation;
    p.x_cut = 2.0 * kPi * nmax * y_min;
  } else {
    p.x_cut = k_bessel_cutoff(nu);
    nmax = static_cast<long>(std::floor(p.x_cut / (2.0 * kPi * y_min))) + 1;
  }
  if (nmax > 10000000) throw UsageError("eis_h2: truncation too large for the height");
  std::vector<cplx> sig(nmax + 1, 0.0);
  const cplx e = 1.0 - 2.0 * s;
  for (long d = 1; d <= nmax; ++d) {
    const cplx dp = std::exp(e * std::log(double(d)));
    for (long m = d; m <= nmax; m += d) sig[m] += dp;
  }
  p.a.assign(nmax + 1, 0.0);
  for (long n = 1; n <= nmax; ++n) p.a[n] = std::exp(nu * std::log(double(n))) * sig[n];
  const double x_lo = 2.0 * kPi * y_min;
  const double x_hi = std::max(x_lo, truncation > 0 ? 2.0 * kPi * nmax * y_max : p.x_cut);
  p.table = std::make_unique<KBesselTable>(nu, x_lo, x_hi, precision);
  return p;
}

cplx sum_h2(const PreparedH2& p, const PointH2& z, long truncation, long* used) {
  const long cap = static_cast<long>(p.a.size()) - 1;
  long n_here = truncation > 0 ? truncation
                               : static_cast<long>(std::floor(p.x_cut / (2.0 * kPi * z.y))) + 1;
  n_here = std::min(n_here, cap);
  cplx acc = 0.0;
  for (long n = n_here; n >= 1; --n) {
    const double x = 2.0 * kPi * n * z.y;
    acc += p.a[n] * p.table->scaled(x) * std::cos(2.0 * kPi * n * z.x);
  }
  if (used) *used = n_here;
  const cplx s = p.s;
  const cplx constant = std::exp(s * std::log(z.y)) + p.phi * std::exp((1.0 - s) * std::log(z.y));
  return constant + p.coef * std::sqrt(z.y) * acc;
}

}  // namespace

EisensteinH2::EisensteinH2(Options options)
    : options_(options), backend_(ZetaMethod::euler_maclaurin, true, options.precision) {
  if (!(options_.height_floor > 0.0)) throw UsageError("EisensteinH2: height_floor must be positive");
  if (options_.truncation < 0) throw UsageError("EisensteinH2: truncation must be non-negative");
}

double EisensteinH2::normalization_factor() const {
  return options_.normalization == H2Normalization::standard ? 1.0 : 2.0;
}

PointH2 EisensteinH2::reduce(const PointH2& z) {
  if (!(z.y > 0.0)) throw DomainError("eis_h2: point must have positive height");
  PointH2 w = z;
  for (int it = 0; it < 1000; ++it) {
    w.x -= std::round(w.x);
    const double n2 = w.x * w.x + w.y * w.y;
    if (n2 >= 1.0 - 1e-15) return w;
    w = {-w.x / n2, w.y / n2};
  }
  throw NumericError("eis_h2: reduction did not terminate");
}

FourierValue EisensteinH2::eval_detailed(const PointH2& z, cplx s) const {
  const PointH2 w = reduce(z);
  if (w.y < options_.height_floor * (1.0 - 1e-12)) {
    throw DomainError("eis_h2: reduced point lies below the height floor");
  }
  const PreparedH2 p = prepare_h2(s, w.y, w.y, options_.truncation, backend_, options_.precision);
  FourierValue out;
  out.value = normalization_factor() * sum_h2(p, w, options_.truncation, &out.terms);
  // First omitted block.
  double tail = 0.0;
  const cplx nu = s - 0.5;
  const cplx e = 1.0 - 2.0 * s;
  for (long n = out.terms + 1; n <= out.terms + 8; ++n) {
    cplx sig = 0.0;
    for (long d = 1; d <= n; ++d) {
      if (n % d == 0) sig += std::exp(e * std::log(double(d)));
    }
    const cplx an = std::exp(nu * std::log(double(n))) * sig;
    tail += std::abs(p.coef * an * bessel_K_scaled(nu, 2.0 * kPi * n * w.y, options_.precision)) *
            std::sqrt(w.y);
  }
  out.tail_estimate = normalization_factor() * tail;
  if (!is_finite(out.value)) throw NumericError("eis_h2: non-finite value");
  return out;
}

cplx EisensteinH2::eval(const PointH2& z, cplx s) const { return eval_detailed(z, s).value; }

std::vector<cplx> EisensteinH2::eval_many(const std::vector<PointH2>& points, cplx s) const {
  std::vector<cplx> out;
  if (points.empty()) return out;
  std::vector<PointH2> reduced;
  reduced.reserve(points.size());
  double y_min = 1e300, y_max = 0.0;
  for (const auto& z : points) {
    reduced.push_back(reduce(z));
    y_min = std::min(y_min, reduced.back().y);
    y_max = std::max(y_max, reduced.back().y);
  }
  if (y_min < options_.height_floor * (1.0 - 1e-12)) {
    throw DomainError("eis_h2: reduced point lies below the height floor");
  }
  const PreparedH2 p = prepare_h2(s, y_min, y_max, options_.truncation, backend_, options_.precision);
  out.resize(points.size());
  parallel_for(points.size(), options_.threads, [&](std::size_t i) {
    const cplx v = normalization_factor() * sum_h2(p, reduced[i], options_.truncation, nullptr);
    if (!is_finite(v)) throw NumericError("eis_h2: non-finite value");
    out[i] = v;
  });
  return out;
}

cplx EisensteinH2::heegner(const HeegnerPoint& w, cplx s) const {
  if (s == cplx(1.0)) throw DomainError("eis_h2: pole at s = 1");
  const BinaryQuadraticForm dual{w.c, -w.b, w.a};
  const cplx Z = std::exp(s * std::log(double(w.a))) * epstein_Z(dual, s);
  // y^s Z(s, Q) / zeta(2s) sums over all coprime pairs: twice the standard series.
  const cplx all_pairs = std::exp(s * std::log(w.z.y)) * Z / backend_.zeta(2.0 * s);
  return 0.5 * normalization_factor() * all_pairs;
}

}  // namespace quelab
