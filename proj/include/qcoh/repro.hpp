#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "qcoh/roof.hpp"
#include "qcoh/state.hpp"

namespace qcoh::repro {

using CheckValue = std::variant<double, bool>;

/// One reproduced number: pass iff |expected - computed| <= tolerance, or
/// equality for booleans.
struct ReproCheck {
  std::string name;
  int criterion;
  CheckValue expected;
  CheckValue computed;
  double tolerance;
  bool pass;
  std::string note;
};

ReproCheck numeric_check(std::string name, int criterion, double expected, double computed,
                         double tolerance, std::string note = {});
ReproCheck boolean_check(std::string name, int criterion, bool expected, bool computed,
                         std::string note = {});

struct ReproOptions {
  std::uint64_t seed = 20231;
  int random_states = 200;
  int direct_sum_pairs = 1000;
  int invariance_samples = 500;
  /// Oracle settings; the seed field is overridden per state.
  RoofConfig roof{};
};

/// Runs every reproduction check, grouped by criterion number 1..9.
std::vector<ReproCheck> run_reproduction(const ReproOptions& options);

/// Number of criteria covered by run_reproduction.
inline constexpr int kCriteria = 9;
std::string criterion_title(int criterion);

/// Fixed-width table, one row per check.
void print_table(std::ostream& out, const std::vector<ReproCheck>& checks);

// Seeded samplers shared with the tests.

/// rho00 uniform in [0, 1], |rho01| uniform in [0, sqrt(rho00 rho11)] scaled
/// by `shrink` (< 1 gives strictly mixed states), phase uniform.
QubitState random_state(std::mt19937_64& rng, double shrink = 1.0);
/// Haar-random pure state.
PureQubit random_pure(std::mt19937_64& rng);
DirectSumState random_direct_sum(std::mt19937_64& rng);

}  // namespace qcoh::repro
