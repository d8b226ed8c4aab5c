#pragma once

#include <optional>
#include <vector>

#include "qcoh/state.hpp"

namespace qcoh {

/// Absolute slack for all monotone comparisons.
inline constexpr double kFeasibilityTol = 1e-12;

struct FeasibilityVerdict {
  bool feasible;
  /// A violating mu when infeasible (direct sums only).
  std::optional<double> witness_mu;
  /// Source and target monotone values at the reported point: the violated
  /// one when infeasible, the tightest one otherwise.
  double lhs;
  double rhs;
};

struct ChitambarMonotones {
  double zeta;  // |rho01|
  double xi;    // |rho01| / sqrt(rho00 rho11), 0 for diagonal states
};

ChitambarMonotones chitambar_monotones(const QubitState& state);

/// Qubit-to-qubit convertibility under incoherent operations: zeta and xi
/// must both not increase.
bool qubit_transform_feasible(const QubitState& source, const QubitState& target);

/// Same decision, with the tighter (or failing) monotone reported.
FeasibilityVerdict qubit_transform_verdict(const QubitState& source, const QubitState& target);

/// p C_mu(phi1) + (1 - p) C_mu(phi2). Throws MuRange if mu is outside [0, 1].
double c_mu_direct_sum(double mu, const DirectSumState& state);

/// {0} U {nonzero lower populations of both states} U {1}, sorted, unique.
std::vector<double> critical_mus(const DirectSumState& source, const DirectSumState& target);

/// Decides C_mu(source) >= C_mu(target) for all mu in [0, 1].
///
/// Between consecutive critical points every block value is either 1 or
/// a / mu, so both sides have the form A + B / mu and their difference is
/// monotone there; checking the critical points decides the whole interval.
/// An infeasible verdict carries the critical mu of largest violation.
FeasibilityVerdict theorem3_feasible(const DirectSumState& source, const DirectSumState& target);

bool pure_to_pure_feasible(const PureQubit& source, const PureQubit& target);

/// Largest probability of reaching the block with lower population theta
/// (otherwise landing on tau) from a pure state with lower population
/// a_source. Throws BadOrdering if tau > theta.
double max_conversion_probability(double a_source, double theta, double tau);

}  // namespace qcoh
