#include "qcoh/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qcoh/errors.hpp"
#include "qcoh/measures.hpp"

namespace qcoh {

ChitambarMonotones chitambar_monotones(const QubitState& state) {
  const double r = state.coherence_magnitude();
  const double denom = std::sqrt(state.rho00() * state.rho11());
  const double xi = denom > 0.0 ? std::min(1.0, r / denom) : 0.0;
  return {r, xi};
}

FeasibilityVerdict qubit_transform_verdict(const QubitState& source, const QubitState& target) {
  const auto s = chitambar_monotones(source);
  const auto t = chitambar_monotones(target);
  const double zeta_margin = s.zeta - t.zeta;
  const double xi_margin = s.xi - t.xi;
  const bool feasible = zeta_margin >= -kFeasibilityTol && xi_margin >= -kFeasibilityTol;
  if (zeta_margin <= xi_margin) {
    return {feasible, std::nullopt, s.zeta, t.zeta};
  }
  return {feasible, std::nullopt, s.xi, t.xi};
}

bool qubit_transform_feasible(const QubitState& source, const QubitState& target) {
  return qubit_transform_verdict(source, target).feasible;
}

double c_mu_direct_sum(double mu, const DirectSumState& state) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw MuRange("mu = " + std::to_string(mu) + " outside [0, 1]");
  }
  return state.p * c_mu_pure(mu, lower_population(state.phi1)) +
         (1.0 - state.p) * c_mu_pure(mu, lower_population(state.phi2));
}

std::vector<double> critical_mus(const DirectSumState& source, const DirectSumState& target) {
  std::vector<double> mus{0.0, 1.0};
  for (const auto* d : {&source, &target}) {
    for (const auto* phi : {&d->phi1, &d->phi2}) {
      const double a = lower_population(*phi);
      if (a > 0.0) mus.push_back(a);
    }
  }
  std::sort(mus.begin(), mus.end());
  mus.erase(std::unique(mus.begin(), mus.end()), mus.end());
  return mus;
}

FeasibilityVerdict theorem3_feasible(const DirectSumState& source, const DirectSumState& target) {
  double tight_mu = 0.0;
  double tight_lhs = 0.0;
  double tight_rhs = 0.0;
  double tight_margin = std::numeric_limits<double>::infinity();
  for (double mu : critical_mus(source, target)) {
    const double lhs = c_mu_direct_sum(mu, source);
    const double rhs = c_mu_direct_sum(mu, target);
    if (lhs - rhs < tight_margin) {
      tight_margin = lhs - rhs;
      tight_mu = mu;
      tight_lhs = lhs;
      tight_rhs = rhs;
    }
  }
  if (tight_margin >= -kFeasibilityTol) {
    return {true, std::nullopt, tight_lhs, tight_rhs};
  }
  return {false, tight_mu, tight_lhs, tight_rhs};
}

bool pure_to_pure_feasible(const PureQubit& source, const PureQubit& target) {
  return lower_population(source) >= lower_population(target) - kFeasibilityTol;
}

double max_conversion_probability(double a_source, double theta, double tau) {
  if (tau > theta) {
    throw BadOrdering("tau must not exceed theta");
  }
  if (!(tau >= 0.0 && theta <= 0.5 && a_source >= 0.0 && a_source <= 0.5)) {
    throw std::invalid_argument("lower populations must lie in [0, 1/2]");
  }
  if (theta == tau) {
    return a_source >= theta ? 1.0 : 0.0;
  }
  return std::clamp((a_source - tau) / (theta - tau), 0.0, 1.0);
}

}  // namespace qcoh
