#include "quelab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace quelab {

const std::vector<int>& class_number_one_D() {
  static const std::vector<int> list = {-1, -2, -3, -7, -11, -19, -43, -67, -163};
  return list;
}

ImagQuadField make_field(int D) {
  const auto& list = class_number_one_D();
  if (std::find(list.begin(), list.end(), D) == list.end()) {
    throw UsageError("make_field: D must be one of -1, -2, -3, -7, -11, -19, -43, -67, -163");
  }
  ImagQuadField K;
  K.D = D;
  K.one_mod_four = ((D % 4) + 4) % 4 == 1;
  K.d_K = K.one_mod_four ? D : 4 * D;
  K.unit_count = D == -1 ? 4 : (D == -3 ? 6 : 2);
  return K;
}

cplx ImagQuadField::omega() const {
  const double root = std::sqrt(double(-D));
  return one_mod_four ? cplx(0.5, 0.5 * root) : cplx(0.0, root);
}

double ImagQuadField::sqrt_abs_dK() const { return std::sqrt(double(-d_K)); }

long norm(const ImagQuadField& K, const AlgebraicInt& a) {
  if (K.one_mod_four) return a.u * a.u + a.u * a.v + (1 - K.D) / 4 * a.v * a.v;
  return a.u * a.u - K.D * a.v * a.v;
}

cplx to_complex(const ImagQuadField& K, const AlgebraicInt& a) {
  return double(a.u) + double(a.v) * K.omega();
}

AlgebraicInt multiply(const ImagQuadField& K, const AlgebraicInt& a, const AlgebraicInt& b) {
  // omega^2 = D, or omega^2 = omega + (D - 1)/4.
  const long vv = a.v * b.v;
  if (K.one_mod_four) {
    return {a.u * b.u + vv * ((K.D - 1) / 4), a.u * b.v + a.v * b.u + vv};
  }
  return {a.u * b.u + vv * K.D, a.u * b.v + a.v * b.u};
}

AlgebraicInt conjugate(const ImagQuadField& K, const AlgebraicInt& a) {
  if (K.one_mod_four) return {a.u + a.v, -a.v};
  return {a.u, -a.v};
}

bool divides(const ImagQuadField& K, const AlgebraicInt& b, const AlgebraicInt& a,
             AlgebraicInt* quotient) {
  const long nb = norm(K, b);
  if (nb == 0) return false;
  const AlgebraicInt p = multiply(K, a, conjugate(K, b));
  if (p.u % nb != 0 || p.v % nb != 0) return false;
  if (quotient) *quotient = {p.u / nb, p.v / nb};
  return true;
}

std::vector<AlgebraicInt> units(const ImagQuadField& K) {
  if (K.D == -1) return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  if (K.D == -3) return {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
  return {{1, 0}, {-1, 0}};
}

AlgebraicInt from_complex_exact(const ImagQuadField& K, cplx z) {
  const cplx w = K.omega();
  const double v = z.imag() / w.imag();
  const double u = z.real() - v * w.real();
  return {std::lround(u), std::lround(v)};
}

AlgebraicInt nearest_integer(const ImagQuadField& K, cplx z) {
  const AlgebraicInt guess = from_complex_exact(K, z);
  AlgebraicInt best = guess;
  double best_dist = std::norm(z - to_complex(K, guess));
  for (long du = -1; du <= 1; ++du) {
    for (long dv = -1; dv <= 1; ++dv) {
      const AlgebraicInt c{guess.u + du, guess.v + dv};
      const double dist = std::norm(z - to_complex(K, c));
      if (dist < best_dist - 1e-15) {
        best = c;
        best_dist = dist;
      }
    }
  }
  return best;
}

std::vector<AlgebraicInt> enumerate_by_norm(const ImagQuadField& K, long Nmax) {
  if (Nmax < 1) throw UsageError("enumerate_by_norm: Nmax must be at least 1");
  if (Nmax > 10000000) throw UsageError("enumerate_by_norm: Nmax above 1e7 is not supported");
  const double absD = -double(K.D);
  std::vector<AlgebraicInt> out;
  if (K.one_mod_four) {
    // N = (u + v/2)^2 + |D| v^2 / 4
    const long vmax = static_cast<long>(std::floor(2.0 * std::sqrt(Nmax / absD))) + 1;
    for (long v = -vmax; v <= vmax; ++v) {
      const double rest = Nmax - absD * v * v / 4.0;
      if (rest < 0) continue;
      const double centre = -0.5 * v, span = std::sqrt(rest);
      for (long u = static_cast<long>(std::floor(centre - span)) - 1;
           u <= static_cast<long>(std::ceil(centre + span)) + 1; ++u) {
        const AlgebraicInt a{u, v};
        const long n = norm(K, a);
        if (n >= 1 && n <= Nmax) out.push_back(a);
      }
    }
  } else {
    const long vmax = static_cast<long>(std::floor(std::sqrt(Nmax / absD))) + 1;
    for (long v = -vmax; v <= vmax; ++v) {
      const double rest = Nmax - absD * v * v;
      if (rest < 0) continue;
      const long umax = static_cast<long>(std::floor(std::sqrt(rest))) + 1;
      for (long u = -umax; u <= umax; ++u) {
        const AlgebraicInt a{u, v};
        const long n = norm(K, a);
        if (n >= 1 && n <= Nmax) out.push_back(a);
      }
    }
  }
  auto angle = [&](const AlgebraicInt& a) {
    double t = std::arg(to_complex(K, a));
    return t < 0 ? t + 2.0 * kPi : t;
  };
  std::vector<std::pair<std::pair<long, double>, AlgebraicInt>> keyed;
  keyed.reserve(out.size());
  for (const auto& a : out) keyed.push_back({{norm(K, a), angle(a)}, a});
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = keyed[i].second;
  return out;
}

std::vector<std::pair<long, int>> factor_integer(long n) {
  if (n < 1) throw DomainError("factor_integer: n must be positive");
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

namespace {

AlgebraicInt element_of_norm(const ImagQuadField& K, long p) {
  const double absD = -double(K.D);
  const long vmax = static_cast<long>(std::ceil(2.0 * std::sqrt(p / absD))) + 1;
  for (long v = 0; v <= vmax; ++v) {
    const double centre = K.one_mod_four ? -0.5 * v : 0.0;
    const double rest = K.one_mod_four ? p - absD * v * v / 4.0 : p - absD * v * v;
    if (rest < 0) break;
    const long base = std::lround(centre + std::sqrt(rest));
    for (long u = base - 1; u <= base + 1; ++u) {
      if (norm(K, {u, v}) == p) return {u, v};
    }
  }
  throw NumericError("element_of_norm: split prime without a generator");
}

}  // namespace

std::vector<long> ideal_divisor_norms(const ImagQuadField& K, const AlgebraicInt& w) {
  const long n = norm(K, w);
  if (n == 0) throw DomainError("divisor_sigma: w must be nonzero");
  std::vector<long> norms = {1};
  for (const auto& [p, e] : factor_integer(n)) {
    std::vector<long> local;
    const int chi = kronecker_chi(K.d_K, p);
    if (chi == 1) {
      const AlgebraicInt pi = element_of_norm(K, p);
      int a = 0;
      AlgebraicInt rest = w, q;
      while (a < e && divides(K, pi, rest, &q)) {
        rest = q;
        ++a;
      }
      const int b = e - a;
      for (int i = 0; i <= a; ++i) {
        for (int j = 0; j <= b; ++j) {
          long v = 1;
          for (int k = 0; k < i + j; ++k) v *= p;
          local.push_back(v);
        }
      }
    } else if (chi == -1) {
      long v = 1;
      for (int i = 0; i <= e / 2; ++i, v *= p * p) local.push_back(v);
    } else {
      long v = 1;
      for (int i = 0; i <= e; ++i, v *= p) local.push_back(v);
    }
    std::vector<long> next;
    next.reserve(norms.size() * local.size());
    for (long x : norms) {
      for (long y : local) next.push_back(x * y);
    }
    norms = std::move(next);
  }
  std::sort(norms.begin(), norms.end());
  return norms;
}

cplx divisor_sigma(const ImagQuadField& K, cplx s, const AlgebraicInt& w) {
  cplx acc = 0.0;
  for (long m : ideal_divisor_norms(K, w)) acc += m == 1 ? cplx(1.0) : std::exp(s * std::log(double(m)));
  return acc;
}

long repr_count(const BinaryQuadraticForm& Q, long m) {
  const long disc = Q.discriminant();
  if (Q.a <= 0 || disc >= 0) throw DomainError("repr_count: form must be positive definite");
  if (m < 1) throw DomainError("repr_count: m must be positive");
  // 4a Q(x, y) = (2ax + by)^2 - disc y^2
  const long ymax = static_cast<long>(std::floor(std::sqrt(4.0 * Q.a * m / double(-disc)))) + 1;
  long count = 0;
  for (long y = -ymax; y <= ymax; ++y) {
    const long rhs = 4 * Q.a * m + disc * y * y;
    if (rhs < 0) continue;
    const long r = std::lround(std::sqrt(double(rhs)));
    for (long root = r - 1; root <= r + 1; ++root) {
      if (root < 0 || root * root != rhs) continue;
      for (long sgn : {1L, -1L}) {
        if (root == 0 && sgn < 0) continue;
        const long num = sgn * root - Q.b * y;
        if (num % (2 * Q.a) == 0 && Q(num / (2 * Q.a), y) == m) ++count;
      }
    }
  }
  return count;
}

int kronecker_chi(long d_K, long m) {
  if (m < 1) throw DomainError("kronecker_chi: m must be positive");
  int result = 1;
  while (m % 2 == 0) {
    m /= 2;
    if (d_K % 2 == 0) return 0;
    const long r = ((d_K % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (d_K / m) for odd m.
  long a = ((d_K % m) + m) % m, n = m;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const long r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

}  // namespace quelab
