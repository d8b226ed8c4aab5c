#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qcoh/measures.hpp"
#include "qcoh/state.hpp"

namespace qcoh {

/// Search settings for the brute-force convex-roof oracle.
struct RoofConfig {
  /// Ensemble sizes searched; each must be 2, 3 or 4. A rank-2 qubit state
  /// reaches its roof with at most four members.
  std::vector<int> ensemble_sizes{2, 3, 4};
  int restarts = 64;
  /// Simplex iterations per local search.
  int max_iters = 2000;
  double tol = 1e-9;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on an out-of-range field.
  void validate() const;
};

struct GapReport {
  double closed_form;
  double difference;  // |value - closed_form|
};

struct RoofResult {
  double value;
  Ensemble witness;
  /// Present when the measure has a closed form (convex continuous profile, or rank).
  std::optional<GapReport> gap;
};

/// One row of an n x 2 isometry.
using IsometryRow = std::array<cplx, 2>;

/// Ensemble generated from the eigendecomposition rho = sum_j l_j |e_j><e_j|
/// by |phi_i~> = sum_j U_ij sqrt(l_j) |e_j>, with p_i = <phi_i~|phi_i~>.
/// Zero-weight members are dropped. Throws NotIsometry unless 2 <= n <= 4
/// and the columns of U are orthonormal within 1e-10.
Ensemble hjw_ensemble(const QubitState& state, std::span<const IsometryRow> isometry);

/// sum_i p_i * eval_pure(spec, phi_i).
double ensemble_average(const MeasureSpec& spec, const Ensemble& ensemble);

/// Best ensemble average found over all configured sizes and restarts.
/// Always an achieved value, hence an upper bound on the true roof.
/// Deterministic in config.seed.
///
/// The coherence-indicator measures (rank, cmu:0) are searched over the
/// pure-coherent-part plus incoherent-residual family instead, since generic
/// isometries essentially never produce exactly incoherent members.
RoofResult roof_minimize(const MeasureSpec& spec, const QubitState& state,
                         const RoofConfig& config);

/// Two-member ensemble whose members both have |c0 c1*| = |rho01|.
struct Theorem1Witness {
  double q;        // q(1 - q) = |rho01|^2, q <= 1/2
  double p_prime;  // weight of phi1
  PureQubit phi1;  // (sqrt q, sqrt(1-q) e^{-i arg rho01})
  PureQubit phi2;  // (sqrt(1-q), sqrt q e^{-i arg rho01})

  Ensemble ensemble() const;
};

Theorem1Witness theorem1_witness(const QubitState& state);

/// Split rho = weight * |coherent_part><coherent_part| + diag(residual) with
/// the smallest possible weight.
struct Theorem2Witness {
  double weight;
  /// |0> when weight == 0.
  PureQubit coherent_part;
  std::array<double, 2> residual;

  Ensemble ensemble() const;
};

Theorem2Witness theorem2_witness(const QubitState& state);

struct VerificationReport {
  double closed;
  double oracle;
  double witness_value;
  bool pass;
};

inline constexpr double kOracleAgreementTol = 1e-3;

/// Certifies the closed form of spec at state: oracle within 1e-3 and
/// witness average within 1e-10. For rank indicators the closed form is
/// coherence_rank and the witness is the minimum-trace split. Throws
/// NonConvexMeasure for any other ineligible measure.
VerificationReport verify_closed_form(const MeasureSpec& spec, const QubitState& state,
                                      const RoofConfig& config);

}  // namespace qcoh
