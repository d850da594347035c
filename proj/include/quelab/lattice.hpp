#pragma once

#include <vector>

#include "quelab/common.hpp"

namespace quelab {

// One of the nine imaginary quadratic fields of class number one.
struct ImagQuadField {
  int D = -1;           // squarefree
  int d_K = -4;         // discriminant
  int unit_count = 4;   // |O_K^*|
  bool one_mod_four = false;  // integral basis {1, (1 + sqrt D)/2} instead of {1, sqrt D}

  cplx omega() const;   // second basis element as a complex number
  double sqrt_abs_dK() const;
};

ImagQuadField make_field(int D);
const std::vector<int>& class_number_one_D();

// u + v * omega_D.
struct AlgebraicInt {
  long u = 0;
  long v = 0;
  friend bool operator==(const AlgebraicInt&, const AlgebraicInt&) = default;
};

long norm(const ImagQuadField& K, const AlgebraicInt& a);
cplx to_complex(const ImagQuadField& K, const AlgebraicInt& a);
AlgebraicInt multiply(const ImagQuadField& K, const AlgebraicInt& a, const AlgebraicInt& b);
AlgebraicInt conjugate(const ImagQuadField& K, const AlgebraicInt& a);
// True when b divides a; the quotient is written to *quotient if non-null.
bool divides(const ImagQuadField& K, const AlgebraicInt& b, const AlgebraicInt& a,
             AlgebraicInt* quotient = nullptr);
std::vector<AlgebraicInt> units(const ImagQuadField& K);
// Nearest lattice point to a complex number (exact search among neighbours).
AlgebraicInt nearest_integer(const ImagQuadField& K, cplx z);
AlgebraicInt from_complex_exact(const ImagQuadField& K, cplx z);

// All nonzero elements with norm <= Nmax, sorted by (norm, argument in [0, 2 pi)).
std::vector<AlgebraicInt> enumerate_by_norm(const ImagQuadField& K, long Nmax);

// sigma_s(w) = (1/|O*|) sum_{d | w} |d|^{2s} = sum over ideal divisors of N(d)^s.
cplx divisor_sigma(const ImagQuadField& K, cplx s, const AlgebraicInt& w);

// Norms of all ideal divisors of w, with multiplicity one per ideal.
std::vector<long> ideal_divisor_norms(const ImagQuadField& K, const AlgebraicInt& w);

struct BinaryQuadraticForm {
  long a = 1, b = 0, c = 1;
  long discriminant() const { return b * b - 4 * a * c; }
  long operator()(long x, long y) const { return a * x * x + b * x * y + c * y * y; }
};

long repr_count(const BinaryQuadraticForm& Q, long m);

// Kronecker symbol (d_K / m) for m >= 1.
int kronecker_chi(long d_K, long m);

// Prime factorization by trial division, as (prime, exponent) pairs.
std::vector<std::pair<long, int>> factor_integer(long n);

}  // namespace quelab
