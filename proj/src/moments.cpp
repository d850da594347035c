#include <cmath>
#include <vector>

#include "quelab/parallel.hpp"
#include "quelab/quadrature.hpp"
#include "quelab/zeta.hpp"

namespace quelab {

namespace {

constexpr double kPanelWidth = 0.25;

// Composite Gauss-Legendre over [0, T] on panels of width 0.25. Each panel is
// evaluated with 10 and 8 nodes; a disagreement means the panel is
// under-resolved. The panel totals are combined by pairwise summation so the
// result does not depend on the thread count.
template <class F>
double critical_line_integral(double T, int threads, F&& integrand) {
  if (T < 0.0 || !std::isfinite(T)) throw DomainError("moment: T must be non-negative");
  if (T == 0.0) return 0.0;
  const long panels = static_cast<long>(std::ceil(T / kPanelWidth));
  std::vector<double> fine(panels), coarse(panels);
  parallel_for(panels, threads, [&](std::size_t i) {
    const double a = kPanelWidth * i, b = std::min(T, a + kPanelWidth);
    fine[i] = gauss_panel(integrand, a, b, 10);
    coarse[i] = gauss_panel(integrand, a, b, 8);
  });
  const double total = pairwise_sum(fine);
  const double check = pairwise_sum(coarse);
  if (std::abs(total - check) > 1e-7 * std::abs(total) + 1e-12) {
    throw NumericError("moment: panel quadrature failed its resolution check");
  }
  return total;
}

}  // namespace

double zeta_moment(int k, double T, const ZetaBackend& backend, int threads) {
  if (k != 2 && k != 6) throw UsageError("zeta_moment: k must be 2 or 6");
  if (T < 0.0) throw DomainError("zeta_moment: T must be non-negative");
  return critical_line_integral(T, threads, [&](double t) {
    return std::pow(std::norm(backend.zeta(cplx(0.5, t))), k);
  });
}

FourthMomentReport dedekind_fourth_moment(const ImagQuadField& K, double T,
                                          const ZetaBackend& backend, int threads) {
  if (T < 0.0) throw DomainError("dedekind_fourth_moment: T must be non-negative");
  FourthMomentReport report;
  if (T == 0.0) return report;
  report.direct = critical_line_integral(T, threads, [&](double t) {
    const cplx s(0.5, t);
    const double z = std::norm(backend.zeta(s)), l = std::norm(backend.L(s, K.d_K));
    return z * z * l * l;
  });
  report.twelfth_zeta = zeta_moment(6, T, backend, threads);
  report.sixth_L = critical_line_integral(T, threads, [&](double t) {
    return std::pow(std::norm(backend.L(cplx(0.5, t), K.d_K)), 3);
  });
  report.holder_bound = std::cbrt(report.twelfth_zeta) * std::pow(report.sixth_L, 2.0 / 3.0);
  return report;
}

}  // namespace quelab
