#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace quelab {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;

// Invalid argument outside the mathematical domain (poles, R <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller misuse: bad configuration, regime violation, dimension mismatch.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine failed to reach its tolerance or produced a non-finite value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PrecisionPolicy {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  long max_nodes = 1L << 22;
};

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace quelab
