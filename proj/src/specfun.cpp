#include "quelab/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "quelab/quadrature.hpp"

namespace quelab {

namespace {

// Lanczos approximation, g = 7, nine terms.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

cplx lanczos_log_gamma(cplx s) {
  // Valid for Re s >= 1/2.
  const cplx z = s - 1.0;
  cplx series = kLanczos[0];
  for (int k = 1; k < 9; ++k) series += kLanczos[k] / (z + double(k));
  const cplx base = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(base) - base + std::log(series);
}

bool is_nonpositive_integer(cplx s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

}  // namespace

cplx log_gamma(cplx s) {
  if (is_nonpositive_integer(s)) throw DomainError("log_gamma: pole at nonpositive integer");
  if (!is_finite(s)) throw DomainError("log_gamma: non-finite argument");
  if (s.real() >= 0.5) return lanczos_log_gamma(s);
  // Shift right with log Gamma(s) = log Gamma(s+n) - sum log(s+k); each log is
  // principal, which keeps the result on the standard branch.
  const int shift = static_cast<int>(std::ceil(0.5 - s.real()));
  cplx acc = 0.0;
  for (int k = 0; k < shift; ++k) acc += std::log(s + double(k));
  return lanczos_log_gamma(s + double(shift)) - acc;
}

double log_gamma(double s) { return log_gamma(cplx(s, 0.0)).real(); }

// ---------------------------------------------------------------------------
// K-Bessel via a shifted contour:
//   K_nu(x) = 1/2 e^{i nu alpha} int_R exp(-x cosh(u + i alpha) + nu u) du,
// |alpha| < pi/2. alpha is chosen so the phase is stationary near u = 0,
// which removes the exp(pi |t| / 2) cancellation of the real-line integral.

namespace {

struct KIntegrand {
  double x, sigma, t, alpha, ca, sa;
  cplx nu;
  double offset;  // subtracted from the real part of the exponent

  double decay(double u) const { return -x * ca * std::cosh(u) + sigma * u; }
  cplx log_value(double u) const {
    const double re = -x * ca * std::cosh(u) + sigma * u;
    const double im = -x * sa * std::sinh(u) + t * u;
    return {re - offset, im};
  }
  double slope(double u) const {
    const cplx d(-x * std::sinh(u) * ca + sigma, -x * std::cosh(u) * sa + t);
    return std::abs(d);
  }
};

cplx integrate_branch(const KIntegrand& f, double start, double direction, double peak,
                      long& nodes, long max_nodes) {
  constexpr int kOrder = 16;
  constexpr double kDrop = 42.0;
  const auto& rule = gauss_legendre(kOrder);
  cplx total = 0.0;
  double u = start;
  for (;;) {
    double h = std::min(0.5, 2.5 / (f.slope(u) + 1.0));
    h = std::min(h, 2.5 / (f.slope(u + direction * h) + 1.0));
    const double a = u, b = u + direction * h;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx panel = 0.0;
    for (int i = 0; i < kOrder; ++i) {
      panel += rule.weights[i] * std::exp(f.log_value(mid + half * rule.nodes[i]));
    }
    total += panel * half;
    nodes += kOrder;
    if (nodes > max_nodes) throw NumericError("bessel_K: node budget exhausted");
    u = b;
    if (f.decay(u) - peak < -kDrop) break;
  }
  return total * direction;
}

}  // namespace

cplx bessel_K_scaled(cplx nu, double x, const PrecisionPolicy& policy) {
  if (!(x > 0.0)) throw DomainError("bessel_K: argument must be positive");
  const double sigma = nu.real(), t = nu.imag();
  const double at = std::abs(t);
  double alpha = 0.0;
  if (at > 0.0) {
    const double stationary = std::asin(std::min(at / x, 1.0));
    const double cap = 0.5 * kPi - std::min(1.0, 3.0 / at);
    alpha = std::copysign(std::min(stationary, cap), t);
  }
  KIntegrand f{x, sigma, t, alpha, std::cos(alpha), std::sin(alpha), nu, 0.0};
  const double u_peak = std::asinh(sigma / (x * f.ca));
  const double peak = f.decay(u_peak);
  f.offset = peak;
  long nodes = 0;
  cplx sum = integrate_branch(f, u_peak, 1.0, peak, nodes, policy.max_nodes) +
             integrate_branch(f, u_peak, -1.0, peak, nodes, policy.max_nodes);
  // Remaining factor: 1/2 exp(i nu alpha + peak + pi |t| / 2).
  const cplx phase = cplx(0.0, 1.0) * nu * alpha;
  cplx result = 0.5 * sum * std::exp(phase + peak + 0.5 * kPi * at);
  if (sigma == 0.0 || t == 0.0) result.imag(0.0);
  if (!is_finite(result)) throw NumericError("bessel_K: non-finite result");
  return result;
}

cplx bessel_K(cplx nu, double x, const PrecisionPolicy& policy) {
  return bessel_K_scaled(nu, x, policy) * std::exp(-0.5 * kPi * std::abs(nu.imag()));
}

// The table is built by analytic continuation of the modified Bessel equation
//   x^2 y'' + x y' - (x^2 + nu^2) y = 0
// downward from x_max, seeded with quadrature values of K and K'. Going down
// the K solution is dominant or oscillatory, so the continuation is stable.
KBesselTable::KBesselTable(cplx nu, double x_min, double x_max, const PrecisionPolicy& policy)
    : nu_(nu), x_min_(x_min), x_max_(x_max), policy_(policy) {
  if (!(x_min > 0.0) || !(x_max >= x_min)) throw DomainError("KBesselTable: bad range");
  const double at = std::abs(nu.imag()), as = std::abs(nu.real());
  const cplx nu2 = nu * nu;
  cplx y = bessel_K_scaled(nu, x_max, policy);
  cplx dy = -0.5 * (bessel_K_scaled(nu + 1.0, x_max, policy) +
                    bessel_K_scaled(nu - 1.0, x_max, policy));
  double c = x_max;
  for (;;) {
    const double freq = std::max({1.0, std::sqrt(std::abs(at * at - c * c)), as});
    const double width = std::min({2.0, 2.0 * c / freq, 0.3 * c});
    const double lo = std::max(x_min, c - width);
    const double step = c - lo;
    Piece piece{lo, c, {y, dy}};
    auto& a = piece.coef;
    const double scale = std::abs(y) + std::abs(dy) * step;
    int quiet = 0;
    for (int k = 0; k < 400 && quiet < 3; ++k) {
      cplx next = -(2.0 * c * k * (k + 1.0) + c * (k + 1.0)) * a[k + 1] -
                  (double(k) * k - c * c - nu2) * a[k];
      if (k >= 1) next += 2.0 * c * a[k - 1];
      if (k >= 2) next += a[k - 2];
      next /= c * c * (k + 1.0) * (k + 2.0);
      a.push_back(next);
      const double contribution = std::abs(next) * std::pow(step, k + 2);
      quiet = contribution < 1e-18 * scale ? quiet + 1 : 0;
    }
    if (quiet < 3) throw NumericError("KBesselTable: Taylor series did not converge");
    pieces_.push_back(std::move(piece));
    if (lo <= x_min) break;
    // Value and derivative at the lower end seed the next piece.
    const Piece& p = pieces_.back();
    cplx v = 0.0, dv = 0.0;
    const double h = -step;
    for (std::size_t k = p.coef.size(); k-- > 0;) {
      v = v * h + p.coef[k];
      if (k >= 1) dv = dv * h + double(k) * p.coef[k];
    }
    y = v;
    dy = dv;
    c = lo;
  }
  std::reverse(pieces_.begin(), pieces_.end());
}

cplx KBesselTable::scaled(double x) const {
  if (pieces_.empty() || x < x_min_ || x > x_max_) return bessel_K_scaled(nu_, x, policy_);
  auto it = std::lower_bound(pieces_.begin(), pieces_.end(), x,
                             [](const Piece& p, double v) { return p.b < v; });
  if (it == pieces_.end()) --it;
  const Piece& p = *it;
  const double h = x - p.b;
  cplx v = 0.0;
  for (std::size_t k = p.coef.size(); k-- > 0;) v = v * h + p.coef[k];
  if (nu_.real() == 0.0 || nu_.imag() == 0.0) v.imag(0.0);
  return v;
}

// ---------------------------------------------------------------------------

double bessel_J(double nu, double x) {
  if (nu < 0.0 || std::abs(2.0 * nu - std::round(2.0 * nu)) > 1e-12) {
    throw UsageError("bessel_J: order must be a non-negative multiple of 1/2");
  }
  if (x < 0.0) throw DomainError("bessel_J: negative argument");
  const long twice = std::lround(2.0 * nu);
  if (twice % 2 == 0) return std::cyl_bessel_j(nu, x);
  const int l = static_cast<int>((twice - 1) / 2);  // nu = l + 1/2
  if (x == 0.0) return 0.0;
  if (x <= std::max(2.0, l + 1.0)) {
    // Power series; x is small enough here that cancellation is mild.
    double term = std::exp(nu * std::log(0.5 * x) - log_gamma(nu + 1.0));
    double sum = term;
    const double q = 0.25 * x * x;
    for (int k = 1; k < 200; ++k) {
      term *= -q / (k * (k + nu));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  // Spherical Bessel closed forms with upward recurrence (stable for x > l).
  double j0 = std::sin(x) / x;
  double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  double jl = j0;
  if (l >= 1) {
    jl = j1;
    for (int k = 1; k < l; ++k) {
      const double next = (2.0 * k + 1.0) / x * j1 - j0;
      j0 = j1;
      j1 = next;
      jl = next;
    }
  }
  return std::sqrt(2.0 * x / kPi) * jl;
}

// ---------------------------------------------------------------------------

cplx upper_gamma_scaled(cplx a, cplx z, double log_scale) {
  if (z == cplx(0.0)) return std::exp(log_gamma(a) - log_scale);
  if (z.real() < 0.0 && z.imag() == 0.0) throw DomainError("upper_gamma: z on the branch cut");
  const cplx lz = std::log(z);
  const cplx prefactor_log = a * lz - z - log_scale;
  if (std::abs(z) < std::abs(a) + 1.0) {
    if (is_nonpositive_integer(a)) {
      // E_1(z) by its series, then Gamma(a, z) = (Gamma(a + 1, z) - z^a e^{-z}) / a downwards.
      cplx e1 = -kEulerGamma - lz;
      cplx term = 1.0;
      for (int k = 1; k < 100000; ++k) {
        term *= -z / double(k);
        e1 -= term / double(k);
        if (std::abs(term) < 1e-17 * std::abs(e1) && k > std::abs(z)) break;
      }
      cplx g = e1;
      for (int m = 1; m <= static_cast<int>(std::lround(-a.real())); ++m) {
        g = (g - std::exp(-double(m) * lz - z)) / double(-m);
      }
      return g * std::exp(-log_scale);
    }
    cplx term = 1.0 / a;
    cplx sum = term;
    for (int n = 1; n < 100000; ++n) {
      term *= z / (a + double(n));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum) && n > std::abs(z)) break;
    }
    return std::exp(log_gamma(a) - log_scale) - std::exp(prefactor_log) * sum;
  }
  // Modified Lentz evaluation of the Legendre continued fraction.
  constexpr double kTiny = 1e-300;
  cplx b = z + 1.0 - a;
  cplx c = 1.0 / kTiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 100000; ++i) {
    const cplx an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const cplx delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return std::exp(prefactor_log) * h;
  }
  throw NumericError("upper_gamma: continued fraction did not converge");
}

}  // namespace quelab
