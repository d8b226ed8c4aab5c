#include "qcoh/roof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "qcoh/errors.hpp"
#include "qcoh/nelder_mead.hpp"

namespace qcoh {

namespace {

constexpr double kDropWeight = 1e-15;
constexpr double kInvalid = std::numeric_limits<double>::max();

/// Orthonormalizes the columns of an n x 2 complex matrix packed as 4n reals.
/// Returns false when the columns are (numerically) dependent.
bool chart_to_isometry(std::span<const double> x, std::span<IsometryRow> rows) {
  const std::size_t n = rows.size();
  double n0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rows[i] = {cplx{x[4 * i], x[4 * i + 1]}, cplx{x[4 * i + 2], x[4 * i + 3]}};
    n0 += std::norm(rows[i][0]);
  }
  if (!(n0 > 1e-20)) return false;
  n0 = std::sqrt(n0);
  cplx overlap{};
  for (std::size_t i = 0; i < n; ++i) {
    rows[i][0] /= n0;
    overlap += std::conj(rows[i][0]) * rows[i][1];
  }
  double n1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rows[i][1] -= overlap * rows[i][0];
    n1 += std::norm(rows[i][1]);
  }
  if (!(n1 > 1e-20)) return false;
  n1 = std::sqrt(n1);
  for (std::size_t i = 0; i < n; ++i) rows[i][1] /= n1;
  return true;
}

/// Weighted profile average of the HJW ensemble, computed without building
/// PureQubit values.
class HjwObjective {
 public:
  HjwObjective(const MeasureSpec& spec, const QubitState& state, std::size_t n)
      : spec_(spec), rows_(n) {
    const auto eig = eigendecompose(state);
    for (int j = 0; j < 2; ++j) {
      const double s = std::sqrt(std::max(0.0, eig.eigenvalues[j]));
      basis_[j] = {s * eig.eigenvectors[j].c0(), s * eig.eigenvectors[j].c1()};
    }
  }

  double operator()(std::span<const double> x) {
    if (!chart_to_isometry(x, rows_)) return kInvalid;
    double total = 0.0;
    for (const auto& row : rows_) {
      const cplx v0 = row[0] * basis_[0][0] + row[1] * basis_[1][0];
      const cplx v1 = row[0] * basis_[0][1] + row[1] * basis_[1][1];
      const double p0 = std::norm(v0);
      const double p1 = std::norm(v1);
      const double w = p0 + p1;
      if (w <= kDropWeight) continue;
      total += w * spec_.profile(std::sqrt(p0 * p1) / w, std::min(p0, p1) / w);
    }
    return total;
  }

  std::span<IsometryRow> rows() { return rows_; }

 private:
  const MeasureSpec& spec_;
  std::array<std::array<cplx, 2>, 2> basis_{};
  std::vector<IsometryRow> rows_;
};

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> x;
  std::size_t size = 0;
};

Candidate run_restart(const MeasureSpec& spec, const QubitState& state, const RoofConfig& config,
                      std::size_t n, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                    static_cast<std::uint32_t>(config.seed >> 32), static_cast<std::uint32_t>(n),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss;
  std::vector<double> x0(4 * n);
  if (restart == 0) {
    // Eigen-ensemble: U = [I; 0]. On plateau-shaped profiles (geometric) this
    // lands in the basin that random isometries of near-diagonal states miss.
    x0[0] = 1.0;
    x0[6] = 1.0;
  } else {
    for (double& v : x0) v = gauss(rng);
  }

  HjwObjective objective(spec, state, n);
  nelder_mead::Options opt;
  opt.max_iters = config.max_iters;
  opt.tol = config.tol;
  auto res = nelder_mead::minimize(objective, x0, opt);
  return {res.value, std::move(res.x), n};
}

/// Minimum-trace pure part over rho00^c in [r^2/rho11, rho00]: dense scan
/// followed by golden-section refinement of the best bracket.
RoofResult rank_search(const MeasureSpec& spec, const QubitState& state, const RoofConfig& config) {
  const double r = state.coherence_magnitude();
  const double rho00 = state.rho00();
  const double rho11 = state.rho11();
  if (r == 0.0 || rho00 <= 0.0 || rho11 <= 0.0) {
    std::vector<EnsembleMember> members;
    if (rho00 > 0.0) members.push_back({rho00, PureQubit::zero()});
    if (rho11 > 0.0) members.push_back({rho11, PureQubit::one()});
    Ensemble witness(std::move(members));
    return {ensemble_average(spec, witness), std::move(witness), std::nullopt};
  }
  const double lo = std::min(r * r / rho11, rho00);
  const double hi = rho00;
  auto trace = [&](double x) { return x + r * r / x; };

  constexpr int kScan = 2049;
  double best_x = hi;
  double best = trace(hi);
  int best_k = kScan - 1;
  for (int k = 0; k < kScan; ++k) {
    const double x = lo + (hi - lo) * k / (kScan - 1);
    const double v = trace(x);
    if (v < best) {
      best = v;
      best_x = x;
      best_k = k;
    }
  }
  double a = lo + (hi - lo) * std::max(0, best_k - 1) / (kScan - 1);
  double b = lo + (hi - lo) * std::min(kScan - 1, best_k + 1) / (kScan - 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < config.max_iters && b - a > config.tol * 1e-3; ++it) {
    const double c = b - inv_phi * (b - a);
    const double d = a + inv_phi * (b - a);
    if (trace(c) < trace(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  for (double x : {a, b, 0.5 * (a + b)}) {
    if (trace(x) < best) {
      best = trace(x);
      best_x = x;
    }
  }

  const double pure00 = best_x;
  const double pure11 = std::min(r * r / best_x, rho11);
  const double w = pure00 + pure11;
  const double delta = std::arg(state.rho01());
  std::vector<EnsembleMember> members{
      {w, PureQubit::normalized(std::sqrt(pure00 / w), std::polar(std::sqrt(pure11 / w), -delta))}};
  const double res0 = std::max(0.0, rho00 - pure00);
  const double res1 = std::max(0.0, 1.0 - w - res0);
  if (res0 > 0.0) members.push_back({res0, PureQubit::zero()});
  if (res1 > 0.0) members.push_back({res1, PureQubit::one()});
  Ensemble witness(std::move(members));
  return {ensemble_average(spec, witness), std::move(witness), std::nullopt};
}

}  // namespace

void RoofConfig::validate() const {
  if (ensemble_sizes.empty()) {
    throw std::invalid_argument("ensemble_sizes must not be empty");
  }
  for (int n : ensemble_sizes) {
    if (n < 2 || n > 4) {
      throw std::invalid_argument("ensemble sizes must lie in {2, 3, 4}");
    }
  }
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
}

Ensemble hjw_ensemble(const QubitState& state, std::span<const IsometryRow> isometry) {
  const std::size_t n = isometry.size();
  if (n < 2 || n > 4) {
    throw NotIsometry("isometry must have 2 to 4 rows, got " + std::to_string(n));
  }
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      cplx g{};
      for (const auto& row : isometry) g += std::conj(row[j]) * row[k];
      if (std::abs(g - cplx(j == k ? 1.0 : 0.0)) > kReassemblyTol) {
        throw NotIsometry("isometry columns are not orthonormal");
      }
    }
  }
  const auto eig = eigendecompose(state);
  std::vector<EnsembleMember> members;
  for (const auto& row : isometry) {
    cplx v0{};
    cplx v1{};
    for (int j = 0; j < 2; ++j) {
      const double s = std::sqrt(std::max(0.0, eig.eigenvalues[j]));
      v0 += row[j] * s * eig.eigenvectors[j].c0();
      v1 += row[j] * s * eig.eigenvectors[j].c1();
    }
    const double w = std::norm(v0) + std::norm(v1);
    if (w <= kDropWeight) continue;
    members.push_back({w, PureQubit::normalized(v0, v1)});
  }
  return Ensemble(std::move(members));
}

double ensemble_average(const MeasureSpec& spec, const Ensemble& ensemble) {
  double total = 0.0;
  for (const auto& [w, phi] : ensemble.members()) total += w * eval_pure(spec, phi);
  return total;
}

RoofResult roof_minimize(const MeasureSpec& spec, const QubitState& state,
                         const RoofConfig& config) {
  config.validate();
  if (spec.is_rank_indicator()) {
    RoofResult result = rank_search(spec, state, config);
    const double closed = coherence_rank(state);
    result.gap = GapReport{closed, std::abs(result.value - closed)};
    return result;
  }

  const auto eig = eigendecompose(state);
  if (eig.eigenvalues[1] <= kDropWeight) {
    // Rank one: every decomposition is the state itself.
    Ensemble witness({{1.0, eig.eigenvectors[0]}});
    RoofResult result{ensemble_average(spec, witness), std::move(witness), std::nullopt};
    if (spec.continuous() && spec.convex_in_m()) {
      const double closed = closed_form(spec, state);
      result.gap = GapReport{closed, std::abs(result.value - closed)};
    }
    return result;
  }

  // Restarts are independent; the winner is the lexicographic minimum of
  // (value, size order, restart index), so any evaluation order agrees.
  Candidate best;
  for (int n : config.ensemble_sizes) {
    for (int restart = 0; restart < config.restarts; ++restart) {
      Candidate c = run_restart(spec, state, config, static_cast<std::size_t>(n), restart);
      if (c.value < best.value) best = std::move(c);
    }
  }

  std::vector<IsometryRow> rows(best.size);
  if (!chart_to_isometry(best.x, rows)) {
    throw std::logic_error("roof search returned a degenerate isometry");
  }
  Ensemble witness = hjw_ensemble(state, rows);
  RoofResult result{ensemble_average(spec, witness), std::move(witness), std::nullopt};
  if (spec.continuous() && spec.convex_in_m()) {
    const double closed = closed_form(spec, state);
    result.gap = GapReport{closed, std::abs(result.value - closed)};
  }
  return result;
}

Ensemble Theorem1Witness::ensemble() const {
  if (p_prime >= 1.0) return Ensemble({{1.0, phi1}});
  if (p_prime <= 0.0) return Ensemble({{1.0, phi2}});
  return Ensemble({{p_prime, phi1}, {1.0 - p_prime, phi2}});
}

Theorem1Witness theorem1_witness(const QubitState& state) {
  const double r = state.coherence_magnitude();
  const double delta = (state.rho01() == cplx{}) ? 0.0 : std::arg(state.rho01());
  const double q = population_from_magnitude(r);
  const double sq = std::sqrt(q);
  const double sq1 = std::sqrt(1.0 - q);
  // rho00 = p' q + (1 - p')(1 - q); rho00 lies in [q, 1 - q] by positivity.
  const double p_prime =
      (1.0 - 2.0 * q > 0.0) ? std::clamp((1.0 - q - state.rho00()) / (1.0 - 2.0 * q), 0.0, 1.0)
                            : 0.5;
  return {q, p_prime, PureQubit(sq, std::polar(sq1, -delta)),
          PureQubit(sq1, std::polar(sq, -delta))};
}

Ensemble Theorem2Witness::ensemble() const {
  std::vector<EnsembleMember> members;
  if (weight > 0.0) members.push_back({weight, coherent_part});
  if (residual[0] > 0.0) members.push_back({residual[0], PureQubit::zero()});
  if (residual[1] > 0.0) members.push_back({residual[1], PureQubit::one()});
  return Ensemble(std::move(members));
}

Theorem2Witness theorem2_witness(const QubitState& state) {
  const double r = state.coherence_magnitude();
  const bool swapped = state.rho00() > state.rho11();
  const double d = std::min(state.rho00(), state.rho11());
  if (r == 0.0 || d <= 0.0) {
    return {0.0, PureQubit::zero(), {state.rho00(), state.rho11()}};
  }
  // Pure part diagonal in the frame where rho00 <= rho11.
  const double small = d >= r ? r : d;
  const double large = d >= r ? r : r * r / d;
  const double pure00 = swapped ? large : small;
  const double pure11 = swapped ? small : large;
  const double weight = coherence_rank(state);
  const double delta = std::arg(state.rho01());
  const PureQubit part = PureQubit::normalized(std::sqrt(pure00), std::polar(std::sqrt(pure11), -delta));
  const double res0 = std::max(0.0, state.rho00() - pure00);
  const double res1 = std::max(0.0, 1.0 - weight - res0);
  return {weight, part, {res0, res1}};
}

VerificationReport verify_closed_form(const MeasureSpec& spec, const QubitState& state,
                                      const RoofConfig& config) {
  double closed = 0.0;
  double witness_value = 0.0;
  if (spec.is_rank_indicator()) {
    closed = coherence_rank(state);
    witness_value = ensemble_average(spec, theorem2_witness(state).ensemble());
  } else {
    closed = closed_form(spec, state);
    witness_value = ensemble_average(spec, theorem1_witness(state).ensemble());
  }
  const double oracle = roof_minimize(spec, state, config).value;
  const bool pass = std::abs(closed - oracle) <= kOracleAgreementTol &&
                    std::abs(witness_value - closed) <= kReassemblyTol;
  return {closed, oracle, witness_value, pass};
}

}  // namespace qcoh
