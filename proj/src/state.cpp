#include "qcoh/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcoh/errors.hpp"

namespace qcoh {

PureQubit::PureQubit(cplx c0, cplx c1) : c0_(c0), c1_(c1) {
  const double norm = std::norm(c0) + std::norm(c1);
  if (!(std::abs(norm - 1.0) <= kValidationTol)) {
    throw NotNormalized("pure state norm " + std::to_string(norm) + " differs from 1");
  }
}

PureQubit PureQubit::normalized(cplx c0, cplx c1) {
  const double norm = std::sqrt(std::norm(c0) + std::norm(c1));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw NotNormalized("cannot normalize a zero or non-finite vector");
  }
  return {c0 / norm, c1 / norm};
}

PureQubit PureQubit::plus() {
  return {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
}

QubitState QubitState::from_pure(const PureQubit& phi) {
  return validate_density(std::clamp(std::norm(phi.c0()), 0.0, 1.0), phi.c0() * std::conj(phi.c1()));
}

double PureQubit::off_diagonal_magnitude() const {
  return QubitState::from_pure(*this).coherence_magnitude();
}

QubitState QubitState::swapped() const {
  return QubitState(1.0 - rho00_, std::conj(rho01_));
}

Ensemble::Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
  if (members_.empty()) {
    throw WeightRange("ensemble has no members");
  }
  double total = 0.0;
  for (const auto& m : members_) {
    if (!(m.weight >= 0.0 && m.weight <= 1.0 + kValidationTol)) {
      throw WeightRange("ensemble weight " + std::to_string(m.weight) + " outside [0, 1]");
    }
    total += m.weight;
  }
  if (std::abs(total - 1.0) > kValidationTol) {
    throw WeightRange("ensemble weights sum to " + std::to_string(total));
  }
}

QubitState validate_density(double rho00, cplx rho01) {
  if (!(rho00 >= 0.0 && rho00 <= 1.0)) {
    throw TraceRange("rho00 = " + std::to_string(rho00) + " outside [0, 1]");
  }
  if (!std::isfinite(rho01.real()) || !std::isfinite(rho01.imag())) {
    throw NotPositive("rho01 is not finite");
  }
  const double bound = rho00 * (1.0 - rho00);
  const double r2 = std::norm(rho01);
  if (r2 > bound + kValidationTol) {
    throw NotPositive("|rho01|^2 = " + std::to_string(r2) + " exceeds rho00*rho11 = " +
                      std::to_string(bound));
  }
  if (r2 > bound) {
    rho01 = std::polar(std::sqrt(bound), std::arg(rho01));
  }
  return QubitState(rho00, rho01);
}

double l1_coherence(const QubitState& state) { return 2.0 * state.coherence_magnitude(); }

PhaseNormalized phase_normalize(const QubitState& state) {
  const cplx off = state.rho01();
  const double phase = (off == cplx{}) ? 0.0 : std::arg(off);
  return {validate_density(state.rho00(), std::abs(off)), phase};
}

QubitState mix(const Ensemble& ensemble) {
  double rho00 = 0.0;
  cplx rho01{};
  for (const auto& [w, phi] : ensemble.members()) {
    rho00 += w * std::norm(phi.c0());
    rho01 += w * phi.c0() * std::conj(phi.c1());
  }
  return validate_density(std::clamp(rho00, 0.0, 1.0), rho01);
}

double lower_population(const PureQubit& phi) {
  return std::min(std::norm(phi.c0()), std::norm(phi.c1()));
}

EigenDecomposition eigendecompose(const QubitState& state) {
  const double a = state.rho00();
  const double d = state.rho11();
  const cplx b = state.rho01();

  if (b == cplx{}) {
    if (a >= d) {
      return {{a, d}, {PureQubit::zero(), PureQubit::one()}};
    }
    return {{d, a}, {PureQubit::one(), PureQubit::zero()}};
  }

  const double half_gap = std::hypot(0.5 * (a - d), std::abs(b));
  const double lambda1 = 0.5 + half_gap;
  // det / lambda1 avoids cancellation in 1/2 - half_gap for near-pure states.
  const double det = std::max(0.0, a * d - std::norm(b));
  const double lambda2 = det / lambda1;

  // Null vector of (H - lambda1), taken from whichever row is better conditioned.
  const cplx u0{b};
  const cplx u1{lambda1 - a};
  const cplx w0{lambda1 - d};
  const cplx w1{std::conj(b)};
  const bool use_first = std::norm(u0) + std::norm(u1) >= std::norm(w0) + std::norm(w1);
  const PureQubit v = use_first ? PureQubit::normalized(u0, u1) : PureQubit::normalized(w0, w1);
  const PureQubit v_perp{-std::conj(v.c1()), std::conj(v.c0())};
  return {{lambda1, lambda2}, {v, v_perp}};
}

DirectSumState direct_sum(double p, const PureQubit& phi1, const PureQubit& phi2) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw WeightRange("direct-sum weight " + std::to_string(p) + " outside [0, 1]");
  }
  return {p, phi1, phi2};
}

}  // namespace qcoh
