#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcoh/state.hpp"

namespace qcoh {

enum class MeasureId { concurrence, formation, geometric, cmax, cmu, rank };

/// A convex-roof coherence measure given by its pure-state profile over
/// m = |c0 conj(c1)| in [0, 1/2].
///
/// Several profiles are naturally functions of the lower population
/// a = min(|c0|^2, |c1|^2) = (1 - sqrt(1 - 4 m^2)) / 2; those are evaluated
/// from a directly whenever it is available.
class MeasureSpec {
 public:
  static MeasureSpec concurrence();
  static MeasureSpec formation();
  static MeasureSpec geometric();
  static MeasureSpec cmax();
  /// Throws MuRange if mu is outside [0, 1]. mu = 0 is the rank indicator.
  static MeasureSpec cmu(double mu);
  static MeasureSpec rank();

  /// Parses `concurrence | formation | geometric | cmax | cmu:<mu> | rank`.
  static MeasureSpec from_token(std::string_view token);

  MeasureId id() const { return id_; }
  std::optional<double> mu() const { return mu_; }
  bool continuous() const { return continuous_; }
  bool convex_in_m() const { return convex_in_m_; }
  /// Canonical CLI token for this measure.
  std::string token() const;

  /// Pure-state value as a function of m.
  double profile(double m) const;
  /// Pure-state value given both coordinates of the same state.
  double profile(double m, double a) const;

  /// True for the coherence-indicator measures (rank and cmu:0), whose
  /// mixed-state value comes from the pure-plus-incoherent split.
  bool is_rank_indicator() const;

 private:
  MeasureSpec(MeasureId id, std::optional<double> mu, bool continuous, bool convex_in_m)
      : id_(id), mu_(mu), continuous_(continuous), convex_in_m_(convex_in_m) {}

  MeasureId id_;
  std::optional<double> mu_;
  bool continuous_;
  bool convex_in_m_;
};

/// The built-in registry: concurrence, formation, geometric, cmax, cmu:0.05, cmu:1, rank.
const std::vector<MeasureSpec>& builtin_measures();

/// Lower population as a function of m, cancellation free.
double population_from_magnitude(double m);

/// C_mu of a pure qubit with lower population a: min(a / mu, 1), and the
/// coherence indicator at mu = 0.
double c_mu_pure(double mu, double a);

/// Binary entropy in bits with h(0) = h(1) = 0.
double binary_entropy(double p);

double eval_pure(const MeasureSpec& spec, const PureQubit& phi);

/// profile(|rho01|). Throws NonConvexMeasure unless the spec is continuous
/// and convex in m.
double closed_form(const MeasureSpec& spec, const QubitState& state);

/// Convex roof of the coherence indicator: with d = min(rho00, rho11) and
/// r = |rho01|, 2r when d >= r, otherwise d + r^2 / d.
double coherence_rank(const QubitState& state);

enum class Shape { convex, concave, affine, neither };

std::string_view to_string(Shape shape);

/// Midpoint convexity/concavity test of the profile over all pairs of a
/// uniform grid on [0, 1/2], tolerance 1e-9. grid_size must be >= 3.
Shape convexity_probe(const MeasureSpec& spec, int grid_size);

struct CurvePoint {
  double c_l1;
  double value;
};

/// Profile sampled on a uniform grid of C_l1 = 2m over [0, 1]; n_points >= 2.
std::vector<CurvePoint> curve_sample(const MeasureSpec& spec, int n_points);

}  // namespace qcoh
