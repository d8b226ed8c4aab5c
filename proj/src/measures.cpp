#include "qcoh/measures.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "qcoh/errors.hpp"

namespace qcoh {

namespace {

constexpr double kProbeTol = 1e-9;

}  // namespace

MeasureSpec MeasureSpec::concurrence() { return {MeasureId::concurrence, std::nullopt, true, true}; }
MeasureSpec MeasureSpec::formation() { return {MeasureId::formation, std::nullopt, true, true}; }
MeasureSpec MeasureSpec::geometric() { return {MeasureId::geometric, std::nullopt, true, true}; }
MeasureSpec MeasureSpec::cmax() { return {MeasureId::cmax, std::nullopt, true, false}; }
MeasureSpec MeasureSpec::rank() { return {MeasureId::rank, std::nullopt, false, false}; }

MeasureSpec MeasureSpec::cmu(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw MuRange("mu = " + std::to_string(mu) + " outside [0, 1]");
  }
  // a never exceeds 1/2, so for mu >= 1/2 the cap at 1 is inactive and the
  // profile is a / mu, convex in m.
  return {MeasureId::cmu, mu, mu > 0.0, mu >= 0.5};
}

MeasureSpec MeasureSpec::from_token(std::string_view token) {
  if (token == "concurrence") return concurrence();
  if (token == "formation") return formation();
  if (token == "geometric") return geometric();
  if (token == "cmax") return cmax();
  if (token == "rank") return rank();
  if (token.starts_with("cmu:")) {
    const std::string arg{token.substr(4)};
    std::size_t used = 0;
    double mu = 0.0;
    try {
      mu = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size()) {
      throw UnknownMeasure("cannot parse mu in measure token '" + std::string(token) + "'");
    }
    return cmu(mu);
  }
  throw UnknownMeasure("unknown measure '" + std::string(token) +
                       "' (expected concurrence | formation | geometric | cmax | cmu:<mu> | rank)");
}

std::string MeasureSpec::token() const {
  switch (id_) {
    case MeasureId::concurrence: return "concurrence";
    case MeasureId::formation: return "formation";
    case MeasureId::geometric: return "geometric";
    case MeasureId::cmax: return "cmax";
    case MeasureId::rank: return "rank";
    case MeasureId::cmu: {
      char buf[32];
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, *mu_);
      return "cmu:" + std::string(buf, end);
    }
  }
  return {};
}

bool MeasureSpec::is_rank_indicator() const {
  return id_ == MeasureId::rank || (id_ == MeasureId::cmu && *mu_ == 0.0);
}

double MeasureSpec::profile(double m) const { return profile(m, population_from_magnitude(m)); }

double MeasureSpec::profile(double m, double a) const {
  switch (id_) {
    case MeasureId::concurrence: return 2.0 * m;
    case MeasureId::formation: return binary_entropy(a);
    case MeasureId::geometric: return a;
    case MeasureId::cmax: return std::log2(1.0 + 2.0 * m);
    case MeasureId::cmu: return c_mu_pure(*mu_, a);
    case MeasureId::rank: return m > 0.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

const std::vector<MeasureSpec>& builtin_measures() {
  static const std::vector<MeasureSpec> registry{
      MeasureSpec::concurrence(), MeasureSpec::formation(), MeasureSpec::geometric(),
      MeasureSpec::cmax(),        MeasureSpec::cmu(0.05),   MeasureSpec::cmu(1.0),
      MeasureSpec::rank()};
  return registry;
}

double population_from_magnitude(double m) {
  const double m2 = std::clamp(m, 0.0, 0.5) * std::clamp(m, 0.0, 0.5);
  return 2.0 * m2 / (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * m2)));
}

double c_mu_pure(double mu, double a) {
  if (mu == 0.0) {
    return a > 0.0 ? 1.0 : 0.0;
  }
  return std::min(a / mu, 1.0);
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) {
    return 0.0;
  }
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double eval_pure(const MeasureSpec& spec, const PureQubit& phi) {
  return spec.profile(phi.off_diagonal_magnitude(), lower_population(phi));
}

double closed_form(const MeasureSpec& spec, const QubitState& state) {
  if (!spec.continuous() || !spec.convex_in_m()) {
    throw NonConvexMeasure("measure '" + spec.token() +
                           "' is not continuous and convex in |c0 c1*|; the closed form does not "
                           "apply, use the convex-roof oracle");
  }
  return spec.profile(state.coherence_magnitude());
}

double coherence_rank(const QubitState& state) {
  const double d = std::min(state.rho00(), state.rho11());
  const double r = state.coherence_magnitude();
  if (d <= 0.0) {
    return 0.0;
  }
  if (d >= r) {
    return 2.0 * r;
  }
  return std::min(1.0, d + r * r / d);
}

std::string_view to_string(Shape shape) {
  switch (shape) {
    case Shape::convex: return "convex";
    case Shape::concave: return "concave";
    case Shape::affine: return "affine";
    case Shape::neither: return "neither";
  }
  return "neither";
}

Shape convexity_probe(const MeasureSpec& spec, int grid_size) {
  if (grid_size < 3) {
    throw std::invalid_argument("convexity_probe needs grid_size >= 3");
  }
  std::vector<double> grid(static_cast<std::size_t>(grid_size));
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = 0.5 * static_cast<double>(i) / static_cast<double>(grid_size - 1);
    values[i] = spec.profile(grid[i]);
  }
  bool convex = true;
  bool concave = true;
  for (std::size_t i = 0; i < grid.size() && (convex || concave); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double mid = spec.profile(0.5 * (grid[i] + grid[j]));
      const double chord = 0.5 * (values[i] + values[j]);
      if (mid > chord + kProbeTol) convex = false;
      if (mid < chord - kProbeTol) concave = false;
    }
  }
  if (convex && concave) return Shape::affine;
  if (convex) return Shape::convex;
  if (concave) return Shape::concave;
  return Shape::neither;
}

std::vector<CurvePoint> curve_sample(const MeasureSpec& spec, int n_points) {
  if (n_points < 2) {
    throw std::invalid_argument("curve_sample needs n_points >= 2");
  }
  std::vector<CurvePoint> out;
  out.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    const double c = static_cast<double>(i) / static_cast<double>(n_points - 1);
    out.push_back({c, spec.profile(0.5 * c)});
  }
  return out;
}

}  // namespace qcoh
