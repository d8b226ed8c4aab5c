#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace qcoh {

using cplx = std::complex<double>;

/// Slack for validation invariants (normalization, positivity, weight sums).
inline constexpr double kValidationTol = 1e-12;
/// Slack for reassembly checks (remixing, eigen reconstruction).
inline constexpr double kReassemblyTol = 1e-10;

/// Normalized single-qubit pure state c0|0> + c1|1>.
class PureQubit {
 public:
  /// Validating constructor; throws NotNormalized if | |c0|^2+|c1|^2 - 1 | > 1e-12.
  PureQubit(cplx c0, cplx c1);

  /// Rescales an arbitrary nonzero vector to unit norm.
  static PureQubit normalized(cplx c0, cplx c1);

  static PureQubit zero() { return {1.0, 0.0}; }
  static PureQubit one() { return {0.0, 1.0}; }
  static PureQubit plus();

  cplx c0() const { return c0_; }
  cplx c1() const { return c1_; }

  /// m = |c0 conj(c1)| in [0, 1/2], computed exactly as |rho01| of from_pure().
  double off_diagonal_magnitude() const;

  bool operator==(const PureQubit&) const = default;

 private:
  cplx c0_;
  cplx c1_;
};

/// Single-qubit density matrix [[rho00, rho01], [conj(rho01), 1 - rho00]].
///
/// Only obtainable through validate_density() or from_pure(), so every
/// instance satisfies trace one and positivity.
class QubitState {
 public:
  double rho00() const { return rho00_; }
  double rho11() const { return 1.0 - rho00_; }
  cplx rho01() const { return rho01_; }
  double coherence_magnitude() const { return std::abs(rho01_); }

  static QubitState from_pure(const PureQubit& phi);

  /// The state with basis labels |0> <-> |1> exchanged.
  QubitState swapped() const;

  bool operator==(const QubitState&) const = default;

 private:
  friend QubitState validate_density(double rho00, cplx rho01);
  QubitState(double rho00, cplx rho01) : rho00_(rho00), rho01_(rho01) {}

  double rho00_;
  cplx rho01_;
};

struct EnsembleMember {
  double weight;
  PureQubit state;
};

/// Weighted list of pure states with nonnegative weights summing to one.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleMember> members);

  std::span<const EnsembleMember> members() const { return members_; }
  std::size_t size() const { return members_.size(); }

 private:
  std::vector<EnsembleMember> members_;
};

/// p * phi1 (+) (1 - p) * phi2 on span{|0>,|1>} (+) span{|2>,|3>}.
struct DirectSumState {
  double p;
  PureQubit phi1;
  PureQubit phi2;
};

struct EigenDecomposition {
  std::array<double, 2> eigenvalues;  // descending
  std::array<PureQubit, 2> eigenvectors;
};

struct PhaseNormalized {
  QubitState state;
  double phase;  // arg(rho01) of the input, radians; 0 when rho01 == 0
};

/// Throws TraceRange or NotPositive. A positivity excess within 1e-12 is
/// clamped onto the boundary |rho01|^2 = rho00 * rho11, keeping the phase.
QubitState validate_density(double rho00, cplx rho01);

/// 2|rho01|.
double l1_coherence(const QubitState& state);

/// Applies diag(1, e^{i arg rho01}) so that rho01 becomes real and >= 0.
PhaseNormalized phase_normalize(const QubitState& state);

QubitState mix(const Ensemble& ensemble);

/// min(|c0|^2, |c1|^2).
double lower_population(const PureQubit& phi);

/// Closed-form 2x2 Hermitian eigendecomposition. Degenerate spectra return
/// the computational basis.
EigenDecomposition eigendecompose(const QubitState& state);

/// Throws WeightRange if p is outside [0, 1].
DirectSumState direct_sum(double p, const PureQubit& phi1, const PureQubit& phi2);

}  // namespace qcoh
