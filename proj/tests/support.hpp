#pragma once

#include <cmath>
#include <complex>

#include "quelab/common.hpp"

namespace testing {

inline double rel_err(quelab::cplx got, quelab::cplx want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline double abs_err(quelab::cplx got, quelab::cplx want) { return std::abs(got - want); }

}  // namespace testing
