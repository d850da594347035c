#include <algorithm>
#include <cmath>
#include <map>

#include "quelab/eisenstein.hpp"
#include "quelab/parallel.hpp"
#include "quelab/specfun.hpp"

namespace quelab {

namespace {

struct Mode {
  AlgebraicInt w;
  int norm_index;  // index into PreparedH3::norms
  cplx coef;       // |w|^nu sigma_{-nu}(w)
};

struct PreparedH3 {
  cplx S, nu, phi, C;
  long cap;
  double x_cut = 0.0;       // 0: every mode is used at every point
  std::vector<long> norms;  // distinct norms, ascending
  std::vector<std::size_t> norm_end;  // modes with norm index <= i: [0, norm_end[i])
  std::vector<Mode> modes;
  long u_max = 0, v_max = 0;
  std::unique_ptr<KBesselTable> table;
};

// Fourier argument 4 pi |w| r / sqrt|d_K|.
double k_argument(const ImagQuadField& K, long n, double r) {
  return 4.0 * kPi * std::sqrt(double(n)) * r / K.sqrt_abs_dK();
}

PreparedH3 prepare_h3(const ImagQuadField& K, cplx S, double r_min, double r_max, long norm_cap,
                      const ZetaBackend& backend, const PrecisionPolicy& precision) {
  if (S == cplx(1.0)) throw DomainError("eis_h3: s = 1 is not admissible");
  if (S == cplx(2.0)) throw DomainError("eis_h3: pole at s = 2");
  PreparedH3 p;
  p.S = S;
  p.nu = S - 1.0;
  p.phi = scattering_phi_K(K, p.nu);
  const double at = std::abs(S.imag());
  const double root = K.sqrt_abs_dK();
  p.C = 2.0 * std::exp(S * std::log(2.0 * kPi) - 0.5 * S * std::log(double(-K.d_K)) - log_gamma(S) -
                       0.5 * kPi * at) /
        backend.dedekind(K, S);
  if (norm_cap > 0) {
    p.cap = norm_cap;
  } else {
    p.x_cut = k_bessel_cutoff(p.nu);
    const double reach = p.x_cut * root / (4.0 * kPi * r_min);
    p.cap = static_cast<long>(std::floor(reach * reach)) + 1;
  }
  if (p.cap > 5000000) throw UsageError("eis_h3: norm cap too large for the height");
  std::map<long, int> index;
  for (const auto& w : enumerate_by_norm(K, p.cap)) {
    const long n = norm(K, w);
    auto [it, fresh] = index.emplace(n, int(p.norms.size()));
    if (fresh) {
      p.norms.push_back(n);
      p.norm_end.push_back(0);
    }
    p.norm_end.back() = p.modes.size() + 1;
    cplx sig = 0.0;
    for (long dn : ideal_divisor_norms(K, w)) sig += std::exp(-p.nu * std::log(double(dn)));
    p.modes.push_back({w, it->second, std::exp(0.5 * p.nu * std::log(double(n))) * sig});
    p.u_max = std::max(p.u_max, std::labs(w.u));
    p.v_max = std::max(p.v_max, std::labs(w.v));
  }
  const double x_lo = k_argument(K, 1, r_min);
  const double x_hi = std::max(x_lo, p.x_cut > 0.0 ? p.x_cut : k_argument(K, p.cap, r_max));
  p.table = std::make_unique<KBesselTable>(p.nu, x_lo, x_hi, precision);
  return p;
}

cplx sum_h3(const ImagQuadField& K, const PreparedH3& p, const PointH3& P, long* used) {
  const double root = K.sqrt_abs_dK();
  // e(<mu_w, z>) with mu_w = 2 conj(w) / (i sqrt|d_K|) is a character in the
  // coordinates (u, v); build it from two bases.
  auto pairing = [&](cplx w) {
    const cplx mu = 2.0 * std::conj(w) / cplx(0.0, root);
    return (mu * std::conj(P.z)).real();
  };
  const cplx e1 = std::polar(1.0, 2.0 * kPi * pairing(1.0));
  const cplx e2 = std::polar(1.0, 2.0 * kPi * pairing(K.omega()));
  std::vector<cplx> pu(2 * p.u_max + 1), pv(2 * p.v_max + 1);
  auto fill = [](std::vector<cplx>& out, long m, cplx e) {
    out[m] = 1.0;
    for (long k = 1; k <= m; ++k) {
      out[m + k] = out[m + k - 1] * e;
      out[m - k] = std::conj(out[m + k]);
    }
  };
  fill(pu, p.u_max, e1);
  fill(pv, p.v_max, e2);

  // Modes past the K-Bessel cutoff at this height are dropped.
  std::size_t shells = p.norms.size();
  if (p.x_cut > 0.0) {
    while (shells > 0 && k_argument(K, p.norms[shells - 1], P.r) > p.x_cut) --shells;
  }
  std::vector<cplx> kval(shells);
  for (std::size_t i = 0; i < shells; ++i) kval[i] = p.table->scaled(k_argument(K, p.norms[i], P.r));
  const std::size_t count = shells == 0 ? 0 : p.norm_end[shells - 1];
  cplx acc = 0.0;
  for (std::size_t i = count; i-- > 0;) {
    const Mode& m = p.modes[i];
    acc += m.coef * kval[m.norm_index] * pu[m.w.u + p.u_max] * pv[m.w.v + p.v_max];
  }
  if (used) *used = static_cast<long>(count);
  const cplx constant = std::exp(p.S * std::log(P.r)) + p.phi * std::exp((2.0 - p.S) * std::log(P.r));
  return constant + p.C * P.r * acc;
}

}  // namespace

EisensteinH3::EisensteinH3(Options options)
    : options_(options), backend_(ZetaMethod::euler_maclaurin, true, options.precision) {
  if (!(options_.height_floor > 0.0)) throw UsageError("EisensteinH3: height_floor must be positive");
  if (options_.norm_cap < 0) throw UsageError("EisensteinH3: norm_cap must be non-negative");
}

double EisensteinH3::normalization_factor() const {
  return options_.normalization == H3Normalization::E ? 0.5 * options_.field.unit_count : 1.0;
}

PointH3 EisensteinH3::reduce(const PointH3& P) const {
  if (!(P.r > 0.0)) throw DomainError("eis_h3: point must have positive height");
  const ImagQuadField& K = options_.field;
  const double rho = 1.0 + 0.5 * K.omega().imag();  // bound on the covering radius plus slack
  const long near_cap = static_cast<long>(std::ceil((1.0 + rho) * (1.0 + rho)));
  std::vector<AlgebraicInt> near = enumerate_by_norm(K, near_cap);
  near.push_back({0, 0});
  PointH3 Q = P;
  for (int it = 0; it < 1000; ++it) {
    Q.z -= to_complex(K, nearest_integer(K, Q.z));
    if (Q.r >= options_.height_floor) return Q;
    // The height becomes r / (|c z + d|^2 + N(c) r^2).
    const long c_cap = std::min<long>(static_cast<long>(std::floor(1.0 / (Q.r * Q.r))), 2000);
    double best = 1.0 - 1e-12;
    AlgebraicInt bc, bd;
    bool found = false;
    for (const auto& c : enumerate_by_norm(K, c_cap)) {
      const cplx cz = to_complex(K, c) * Q.z;
      const AlgebraicInt d0 = nearest_integer(K, -cz);
      for (const auto& dl : near) {
        const AlgebraicInt d{d0.u + dl.u, d0.v + dl.v};
        const double den = std::norm(cz + to_complex(K, d)) + double(norm(K, c)) * Q.r * Q.r;
        if (den < best) {
          best = den;
          bc = c;
          bd = d;
          found = true;
        }
      }
    }
    if (!found) return Q;
    // Complete (c, d) to a matrix of determinant one: a d - b c = 1.
    AlgebraicInt a, b;
    bool completed = false;
    if (bd == AlgebraicInt{0, 0}) {
      const AlgebraicInt cc = conjugate(K, bc);  // c is a unit
      b = {-cc.u, -cc.v};
      a = {0, 0};
      completed = true;
    } else {
      const long b_cap = norm(K, bd) * (2 + (-K.d_K) / 4) + 4;
      std::vector<AlgebraicInt> cands = enumerate_by_norm(K, b_cap);
      cands.insert(cands.begin(), AlgebraicInt{0, 0});
      for (const auto& cand : cands) {
        AlgebraicInt bcp = multiply(K, cand, bc);
        bcp.u += 1;
        if (divides(K, bd, bcp, &a)) {
          b = cand;
          completed = true;
          break;
        }
      }
    }
    if (!completed) throw NumericError("eis_h3: could not complete a coprime pair");
    const Mobius3 m{to_complex(K, a), to_complex(K, b), to_complex(K, bc), to_complex(K, bd)};
    Q = apply_mobius(m, Q);
  }
  throw NumericError("eis_h3: reduction did not terminate");
}

FourierValue EisensteinH3::eval_detailed(const PointH3& P, cplx s) const {
  const PointH3 Q = reduce(P);
  const ImagQuadField& K = options_.field;
  const PreparedH3 p = prepare_h3(K, s, Q.r, Q.r, options_.norm_cap, backend_, options_.precision);
  FourierValue out;
  out.value = normalization_factor() * sum_h3(K, p, Q, &out.terms);
  // Size of the next shell of modes.
  double tail = 0.0;
  const long n_next = out.terms == 0 ? 1 : norm(K, p.modes[out.terms - 1].w) + 1;
  for (const auto& w : enumerate_by_norm(K, 2 * n_next)) {
    const long n = norm(K, w);
    if (n < n_next) continue;
    cplx sig = 0.0;
    for (long dn : ideal_divisor_norms(K, w)) sig += std::exp(-p.nu * std::log(double(dn)));
    const cplx coef = std::exp(0.5 * p.nu * std::log(double(n))) * sig;
    tail += std::abs(p.C * Q.r * coef * bessel_K_scaled(p.nu, k_argument(K, n, Q.r), options_.precision));
  }
  out.tail_estimate = normalization_factor() * tail;
  if (!is_finite(out.value)) throw NumericError("eis_h3: non-finite value");
  return out;
}

cplx EisensteinH3::eval(const PointH3& P, cplx s) const { return eval_detailed(P, s).value; }

std::vector<cplx> EisensteinH3::eval_many(const std::vector<PointH3>& points, cplx s) const {
  std::vector<cplx> out(points.size());
  if (points.empty()) return out;
  std::vector<PointH3> reduced(points.size());
  parallel_for(points.size(), options_.threads, [&](std::size_t i) { reduced[i] = reduce(points[i]); });
  double r_min = 1e300, r_max = 0.0;
  for (const auto& Q : reduced) {
    r_min = std::min(r_min, Q.r);
    r_max = std::max(r_max, Q.r);
  }
  const ImagQuadField& K = options_.field;
  const PreparedH3 p = prepare_h3(K, s, r_min, r_max, options_.norm_cap, backend_, options_.precision);
  parallel_for(points.size(), options_.threads, [&](std::size_t i) {
    const cplx v = normalization_factor() * sum_h3(K, p, reduced[i], nullptr);
    if (!is_finite(v)) throw NumericError("eis_h3: non-finite value");
    out[i] = v;
  });
  return out;
}

}  // namespace quelab
