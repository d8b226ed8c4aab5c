#include "qcoh/repro.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qcoh/errors.hpp"
#include "qcoh/io.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/transforms.hpp"

namespace qcoh::repro {

namespace {

constexpr double kExact = 1e-12;

std::mt19937_64 stream(std::uint64_t seed, std::uint32_t purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    purpose};
  return std::mt19937_64(seq);
}

double entry_distance(const QubitState& a, const QubitState& b) {
  return std::max(std::abs(a.rho00() - b.rho00()), std::abs(a.rho01() - b.rho01()));
}

/// Piecewise minimum-trace formula for the coherence-indicator roof, written
/// out independently of coherence_rank().
double rank_formula(double rho00, double r) {
  const double small = std::min(rho00, 1.0 - rho00);
  if (small == 0.0) return 0.0;
  return small >= r ? 2.0 * r : small + (r / small) * r;
}

/// C_mu of a direct sum evaluated straight from the amplitudes.
double c_mu_blockwise(double mu, const DirectSumState& d) {
  auto block = [mu](const PureQubit& phi) {
    const double a = std::min(std::norm(phi.c0()), std::norm(phi.c1()));
    if (mu == 0.0) return a == 0.0 ? 0.0 : 1.0;
    return a / mu < 1.0 ? a / mu : 1.0;
  };
  return d.p * block(d.phi1) + (1.0 - d.p) * block(d.phi2);
}

/// Feasibility by sweeping mu over k / 10000, k = 0..10000.
bool dense_grid_feasible(const DirectSumState& source, const DirectSumState& target) {
  constexpr int kGrid = 10000;
  for (int k = 0; k <= kGrid; ++k) {
    const double mu = static_cast<double>(k) / kGrid;
    if (c_mu_blockwise(mu, source) < c_mu_blockwise(mu, target) - kFeasibilityTol) return false;
  }
  return true;
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

void cmax_gap(const ReproOptions& opt, std::vector<ReproCheck>& out) {
  const double sqrt15 = std::sqrt(15.0);
  const QubitState state = validate_density(9.0 / 32.0, 0.25 + sqrt15 / 32.0);
  const Ensemble reference({{0.5, PureQubit(0.25, sqrt15 / 4.0)}, {0.5, PureQubit::plus()}});
  const auto cmax = MeasureSpec::cmax();

  const double m_exact = std::log2(std::sqrt(8.0 + sqrt15) / 2.0);
  const double n_exact = std::log2(1.5 + sqrt15 / 16.0);
  out.push_back(numeric_check("cmax.reference_ensemble_remix", 1, 0.0,
                              entry_distance(mix(reference), state), kExact));
  out.push_back(numeric_check("cmax.M_ensemble_average", 1, m_exact,
                              ensemble_average(cmax, reference), kExact));
  out.push_back(numeric_check("cmax.N_plugin_profile", 1, n_exact,
                              cmax.profile(state.coherence_magnitude()), kExact));
  out.push_back(numeric_check("cmax.M_minus_N", 1, -0.0160, m_exact - n_exact, 5e-4));

  bool rejected = false;
  try {
    (void)closed_form(cmax, state);
  } catch (const NonConvexMeasure&) {
    rejected = true;
  }
  out.push_back(boolean_check("cmax.closed_form_rejected", 1, true, rejected));

  RoofConfig cfg = opt.roof;
  cfg.seed = opt.seed;
  const double oracle = roof_minimize(cmax, state, cfg).value;
  out.push_back(boolean_check("cmax.oracle_le_M", 1, true, oracle <= m_exact + 1e-6,
                              "oracle " + fmt(oracle) + " vs M " + fmt(m_exact)));
}

void cmu_counterexample(const ReproOptions& opt, std::vector<ReproCheck>& out) {
  const double sqrt29 = std::sqrt(29.0);
  const QubitState state = validate_density(9.0 / 25.0, (sqrt29 + 35.0) / 100.0);
  const Ensemble reference({{0.3, PureQubit(std::sqrt(1.0 / 30.0), std::sqrt(29.0 / 30.0))},
                        {0.7, PureQubit::plus()}});
  const auto c20 = MeasureSpec::cmu(1.0 / 20.0);

  out.push_back(numeric_check("cmu20.reference_ensemble_remix", 2, 0.0,
                              entry_distance(mix(reference), state), kExact));
  out.push_back(numeric_check("cmu20.ensemble_average", 2, 0.9, ensemble_average(c20, reference),
                              kExact));
  out.push_back(numeric_check("cmu20.plugin_profile", 2, 1.0,
                              c20.profile(state.coherence_magnitude()), kExact));
  RoofConfig cfg = opt.roof;
  cfg.seed = opt.seed;
  const double oracle = roof_minimize(c20, state, cfg).value;
  out.push_back(boolean_check("cmu20.oracle_le_0.9", 2, true, oracle <= 0.9 + 1e-6,
                              "oracle " + fmt(oracle)));
}

void dsum_pair(std::vector<ReproCheck>& out) {
  const double s2 = std::numbers::sqrt2;
  const double s3 = std::numbers::sqrt3;
  const double s10 = std::sqrt(10.0);
  const DirectSumState rho1 =
      direct_sum(1.0 / 6.0, PureQubit::plus(), PureQubit(0.5, s3 / 2.0));
  const DirectSumState rho2 =
      direct_sum(5.0 / 6.0, PureQubit(std::sqrt(1.0 / 3.0), std::sqrt(2.0 / 3.0)),
                 PureQubit(std::sqrt(1.0 / 11.0), std::sqrt(10.0 / 11.0)));

  out.push_back(numeric_check("dsum.C_1/3(rho1)", 3, 19.0 / 24.0,
                              c_mu_direct_sum(1.0 / 3.0, rho1), kExact));
  out.push_back(numeric_check("dsum.C_1/3(rho2)", 3, 29.0 / 33.0,
                              c_mu_direct_sum(1.0 / 3.0, rho2), kExact));

  const auto l1 = MeasureSpec::concurrence();
  auto additive = [](const MeasureSpec& spec, const DirectSumState& d) {
    return d.p * eval_pure(spec, d.phi1) + (1.0 - d.p) * eval_pure(spec, d.phi2);
  };
  out.push_back(numeric_check("dsum.C_l1(rho1)", 3, (2.0 + 5.0 * s3) / 12.0,
                              additive(l1, rho1), kExact));
  out.push_back(numeric_check("dsum.C_l1(rho2)", 3, (55.0 * s2 + 3.0 * s10) / 99.0,
                              additive(l1, rho2), kExact));
  const auto rank = MeasureSpec::rank();
  out.push_back(numeric_check("dsum.C_R(rho1)", 3, 1.0, additive(rank, rho1), 0.0));
  out.push_back(numeric_check("dsum.C_R(rho2)", 3, 1.0, additive(rank, rho2), 0.0));

  const auto fwd = theorem3_feasible(rho1, rho2);
  out.push_back(boolean_check("dsum.forward_infeasible", 3, false, fwd.feasible));
  out.push_back(numeric_check("dsum.forward_witness_mu", 3, 1.0 / 3.0,
                              fwd.witness_mu.value_or(-1.0), kExact));
  const auto rev = theorem3_feasible(rho2, rho1);
  out.push_back(boolean_check("dsum.reverse_infeasible", 3, false, rev.feasible));
  out.push_back(numeric_check("dsum.reverse_witness_mu", 3, 0.25,
                              rev.witness_mu.value_or(-1.0), kExact));
  out.push_back(numeric_check("dsum.reverse_lhs", 3, 59.0 / 66.0, rev.lhs, kExact));
  out.push_back(numeric_check("dsum.reverse_rhs", 3, 1.0, rev.rhs, kExact));

  // Dense sweep: the largest reverse violation on the grid sits at mu = 1/4.
  double worst = 0.0;
  double worst_mu = -1.0;
  for (int k = 0; k <= 10000; ++k) {
    const double mu = k / 10000.0;
    const double gap = c_mu_blockwise(mu, rho1) - c_mu_blockwise(mu, rho2);
    if (gap > worst) {
      worst = gap;
      worst_mu = mu;
    }
  }
  out.push_back(numeric_check("dsum.reverse_dense_grid_mu", 3, 0.25, worst_mu, kExact));
}

void theorem1_certification(const ReproOptions& opt, std::vector<ReproCheck>& out) {
  auto rng = stream(opt.seed, 4);
  std::vector<QubitState> states;
  for (int i = 0; i < opt.random_states; ++i) states.push_back(random_state(rng));

  for (const auto& spec :
       {MeasureSpec::formation(), MeasureSpec::geometric(), MeasureSpec::concurrence()}) {
    double max_gap = 0.0;
    double max_witness = 0.0;
    double max_remix = 0.0;
    RoofConfig cfg = opt.roof;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const QubitState& s = states[i];
      cfg.seed = opt.seed + i;
      const double closed = closed_form(spec, s);
      max_gap = std::max(max_gap, std::abs(roof_minimize(spec, s, cfg).value - closed));
      const auto witness = theorem1_witness(s).ensemble();
      max_witness = std::max(max_witness, std::abs(ensemble_average(spec, witness) - closed));
      max_remix = std::max(max_remix, entry_distance(mix(witness), s));
      const QubitState normal = phase_normalize(s).state;
      max_remix = std::max(max_remix,
                           entry_distance(mix(theorem1_witness(normal).ensemble()), normal));
    }
    const std::string tag = "roof." + spec.token();
    out.push_back(numeric_check(tag + ".max_oracle_gap", 4, 0.0, max_gap, kOracleAgreementTol));
    out.push_back(numeric_check(tag + ".max_witness_gap", 4, 0.0, max_witness, kReassemblyTol));
    out.push_back(numeric_check(tag + ".max_witness_remix", 4, 0.0, max_remix, kReassemblyTol));
  }
}

void theorem2_certification(const ReproOptions& opt, std::vector<ReproCheck>& out) {
  auto rng = stream(opt.seed, 5);
  double max_weight_gap = 0.0;
  double min_residual = 1.0;
  double min_oracle_margin = 1.0;
  bool mixed_below_one = true;
  RoofConfig cfg = opt.roof;
  cfg.seed = opt.seed;
  const auto rank = MeasureSpec::rank();
  for (int i = 0; i < opt.random_states; ++i) {
    const QubitState s = random_state(rng);
    const double formula = rank_formula(s.rho00(), s.coherence_magnitude());
    const auto w = theorem2_witness(s);
    max_weight_gap = std::max(max_weight_gap, std::abs(w.weight - formula));
    min_residual = std::min({min_residual, w.residual[0], w.residual[1]});
    min_oracle_margin = std::min(min_oracle_margin, roof_minimize(rank, s, cfg).value - formula);

    const QubitState mixed = random_state(rng, 0.999);
    mixed_below_one = mixed_below_one && coherence_rank(mixed) < 1.0;
  }
  out.push_back(numeric_check("rank.max_weight_vs_formula", 5, 0.0, max_weight_gap, kExact));
  out.push_back(boolean_check("rank.residual_nonnegative", 5, true, min_residual >= 0.0,
                              "min residual " + fmt(min_residual)));
  out.push_back(boolean_check("rank.oracle_ge_formula", 5, true, min_oracle_margin >= -1e-6,
                              "min oracle - formula " + fmt(min_oracle_margin)));
  out.push_back(boolean_check("rank.mixed_rank_below_one", 5, true, mixed_below_one));
}

void corollaries(const ReproOptions& opt, std::vector<ReproCheck>& out) {
  auto rng = stream(opt.seed, 6);
  int mismatches = 0;
  int accepted_pure_targets = 0;
  for (int i = 0; i < opt.random_states; ++i) {
    const PureQubit phi = random_pure(rng);
    const QubitState pure = QubitState::from_pure(phi);
    const QubitState mixed = random_state(rng, 0.999);
    const bool predicate = pure.coherence_magnitude() >= mixed.coherence_magnitude();
    if (qubit_transform_feasible(pure, mixed) != predicate) ++mismatches;
    if (qubit_transform_feasible(mixed, pure)) ++accepted_pure_targets;
  }
  out.push_back(numeric_check("qubit.pure_to_mixed_mismatches", 6, 0.0, mismatches, 0.0));
  out.push_back(numeric_check("qubit.mixed_to_pure_accepted", 6, 0.0, accepted_pure_targets, 0.0));
}

void breakpoint_completeness(const ReproOptions& opt, std::vector<ReproCheck>& out) {
  auto rng = stream(opt.seed, 7);
  int mismatches = 0;
  int infeasible = 0;
  for (int i = 0; i < opt.direct_sum_pairs; ++i) {
    const DirectSumState a = random_direct_sum(rng);
    const DirectSumState b = random_direct_sum(rng);
    const bool exact = theorem3_feasible(a, b).feasible;
    if (!exact) ++infeasible;
    if (exact != dense_grid_feasible(a, b)) ++mismatches;
  }
  out.push_back(numeric_check("dsum.breakpoint_vs_dense_grid_mismatches", 7, 0.0, mismatches, 0.0,
                              std::to_string(infeasible) + " of " +
                                  std::to_string(opt.direct_sum_pairs) + " infeasible"));
}

void shapes(std::vector<ReproCheck>& out) {
  constexpr int kGrid = 1025;
  auto shape_check = [&](const MeasureSpec& spec, Shape expected) {
    const Shape got = convexity_probe(spec, kGrid);
    out.push_back(boolean_check("shape." + spec.token() + "." + std::string(to_string(expected)),
                                8, true, got == expected, "probe: " + std::string(to_string(got))));
  };
  shape_check(MeasureSpec::cmax(), Shape::concave);
  shape_check(MeasureSpec::cmu(1.0 / 20.0), Shape::neither);
  shape_check(MeasureSpec::geometric(), Shape::convex);
  shape_check(MeasureSpec::formation(), Shape::convex);
  shape_check(MeasureSpec::concurrence(), Shape::affine);
}

void invariance(const ReproOptions& opt, std::vector<ReproCheck>& out) {
  auto rng = stream(opt.seed, 9);
  double max_phase_change = 0.0;
  for (int i = 0; i < opt.invariance_samples; ++i) {
    const QubitState s = random_state(rng);
    const QubitState n = phase_normalize(s).state;
    auto track = [&](double before, double after) {
      max_phase_change = std::max(max_phase_change, std::abs(before - after));
    };
    for (const auto& spec : builtin_measures()) {
      if (spec.continuous() && spec.convex_in_m()) track(closed_form(spec, s), closed_form(spec, n));
    }
    track(coherence_rank(s), coherence_rank(n));
    track(l1_coherence(s), l1_coherence(n));
    track(chitambar_monotones(s).zeta, chitambar_monotones(n).zeta);
    track(chitambar_monotones(s).xi, chitambar_monotones(n).xi);
  }
  out.push_back(numeric_check("invariance.phase_normalize_max_change", 9, 0.0, max_phase_change,
                              0.0));

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double max_additivity = 0.0;
  for (int i = 0; i < opt.invariance_samples; ++i) {
    const DirectSumState d = random_direct_sum(rng);
    const double mu = (i % 10 == 0) ? 0.0 : unit(rng);
    max_additivity =
        std::max(max_additivity, std::abs(c_mu_direct_sum(mu, d) - c_mu_blockwise(mu, d)));
  }
  out.push_back(numeric_check("invariance.c_mu_additivity_max_dev", 9, 0.0, max_additivity,
                              kExact));
}

}  // namespace

ReproCheck numeric_check(std::string name, int criterion, double expected, double computed,
                         double tolerance, std::string note) {
  const bool pass = std::abs(expected - computed) <= tolerance;
  return {std::move(name), criterion, expected, computed, tolerance, pass, std::move(note)};
}

ReproCheck boolean_check(std::string name, int criterion, bool expected, bool computed,
                         std::string note) {
  return {std::move(name), criterion, expected, computed, 0.0, expected == computed,
          std::move(note)};
}

std::vector<ReproCheck> run_reproduction(const ReproOptions& options) {
  std::vector<ReproCheck> out;
  cmax_gap(options, out);
  cmu_counterexample(options, out);
  dsum_pair(out);
  theorem1_certification(options, out);
  theorem2_certification(options, out);
  corollaries(options, out);
  breakpoint_completeness(options, out);
  shapes(out);
  invariance(options, out);
  return out;
}

std::string criterion_title(int criterion) {
  switch (criterion) {
    case 1: return "C_max gap and roof upper bound";
    case 2: return "C_1/20 counterexample";
    case 3: return "direct-sum constants and two-way infeasibility";
    case 4: return "closed form vs roof oracle (convex profiles)";
    case 5: return "coherence rank split";
    case 6: return "qubit conversions (pure->mixed, mixed->pure)";
    case 7: return "critical-point vs dense-grid feasibility";
    case 8: return "profile shapes";
    case 9: return "phase invariance and direct-sum additivity";
    default: return "unknown";
  }
}

void print_table(std::ostream& out, const std::vector<ReproCheck>& checks) {
  out << std::left << std::setw(4) << "#" << std::setw(44) << "check" << std::setw(18)
      << "expected" << std::setw(18) << "computed" << std::setw(10) << "tol"
      << "result\n";
  for (const auto& c : checks) {
    std::ostringstream tol;
    tol << c.tolerance;
    auto show = [](const CheckValue& v) {
      if (const bool* b = std::get_if<bool>(&v)) return std::string(*b ? "true" : "false");
      std::ostringstream s;
      s << std::setprecision(12) << std::get<double>(v);
      return s.str();
    };
    out << std::left << std::setw(4) << c.criterion << std::setw(44) << c.name << std::setw(18)
        << show(c.expected) << std::setw(18) << show(c.computed) << std::setw(10) << tol.str()
        << (c.pass ? "PASS" : "FAIL");
    if (!c.note.empty()) out << "  (" << c.note << ")";
    out << '\n';
  }
}

QubitState random_state(std::mt19937_64& rng, double shrink) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double rho00 = unit(rng);
  const double r = shrink * unit(rng) * std::sqrt(rho00 * (1.0 - rho00));
  const double phase = 2.0 * std::numbers::pi * unit(rng);
  return validate_density(rho00, std::polar(r, phase));
}

PureQubit random_pure(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  const cplx c0{gauss(rng), gauss(rng)};
  const cplx c1{gauss(rng), gauss(rng)};
  return PureQubit::normalized(c0, c1);
}

DirectSumState random_direct_sum(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double p = unit(rng);
  const PureQubit a = random_pure(rng);
  const PureQubit b = random_pure(rng);
  return direct_sum(p, a, b);
}

}  // namespace qcoh::repro
