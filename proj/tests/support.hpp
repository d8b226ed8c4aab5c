#pragma once

#include <cmath>
#include <random>

#include "qcoh/repro.hpp"
#include "qcoh/state.hpp"

namespace qcoh::testing {

inline std::mt19937_64 rng_for(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double entry_distance(const QubitState& a, const QubitState& b) {
  return std::max(std::abs(a.rho00() - b.rho00()), std::abs(a.rho01() - b.rho01()));
}

using repro::random_direct_sum;
using repro::random_pure;
using repro::random_state;

}  // namespace qcoh::testing
