#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

namespace qcoh::nelder_mead {

struct Options {
  int max_iters = 2000;
  /// Converged when the spread of simplex values drops below tol.
  double tol = 1e-9;
  double initial_step = 0.5;
  /// Rebuild the simplex around the best vertex after convergence, up to this
  /// many times, to escape collapsed simplices.
  int rebuilds = 1;
};

struct Result {
  std::vector<double> x;
  double value;
  int iterations;
};

/// Minimizes f over R^n with the standard reflection/expansion/contraction/
/// shrink simplex moves (coefficients 1, 2, 1/2, 1/2).
template <class F>
Result minimize(F&& f, std::span<const double> x0, const Options& opt) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> simplex(n + 1, std::vector<double>(x0.begin(), x0.end()));
  std::vector<double> fv(n + 1);
  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);

  auto build = [&](std::span<const double> base) {
    for (std::size_t i = 0; i <= n; ++i) {
      std::copy(base.begin(), base.end(), simplex[i].begin());
      if (i > 0) simplex[i][i - 1] += opt.initial_step;
      fv[i] = f(std::span<const double>(simplex[i]));
    }
  };

  auto along = [&](double coeff, std::size_t worst, std::vector<double>& out) {
    for (std::size_t j = 0; j < n; ++j) {
      out[j] = centroid[j] + coeff * (centroid[j] - simplex[worst][j]);
    }
    return f(std::span<const double>(out));
  };

  build(x0);
  int iters = 0;
  for (int pass = 0; pass <= opt.rebuilds; ++pass) {
    if (pass > 0) {
      const std::size_t best = static_cast<std::size_t>(
          std::min_element(fv.begin(), fv.end()) - fv.begin());
      const std::vector<double> base = simplex[best];
      const double best_value = fv[best];
      build(base);
      if (!(*std::min_element(fv.begin(), fv.end()) <= best_value)) {
        // Keep the incumbent if the rebuilt simplex is worse everywhere.
        simplex[0] = base;
        fv[0] = best_value;
      }
    }
    for (; iters < opt.max_iters; ++iters) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return fv[a] < fv[b] || (fv[a] == fv[b] && a < b);
      });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second_worst = order[n - 1];
      if (fv[worst] - fv[best] <= opt.tol) break;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        const auto& v = simplex[order[k]];
        for (std::size_t j = 0; j < n; ++j) centroid[j] += v[j];
      }
      for (double& c : centroid) c /= static_cast<double>(n);

      const double fr = along(1.0, worst, trial);
      if (fr < fv[best]) {
        const double fe = along(2.0, worst, trial2);
        if (fe < fr) {
          simplex[worst] = trial2;
          fv[worst] = fe;
        } else {
          simplex[worst] = trial;
          fv[worst] = fr;
        }
        continue;
      }
      if (fr < fv[second_worst]) {
        simplex[worst] = trial;
        fv[worst] = fr;
        continue;
      }
      const bool outside = fr < fv[worst];
      const double fc = along(outside ? 0.5 : -0.5, worst, trial2);
      if (fc < (outside ? fr : fv[worst])) {
        simplex[worst] = trial2;
        fv[worst] = fc;
        continue;
      }
      for (std::size_t k = 1; k <= n; ++k) {
        auto& v = simplex[order[k]];
        for (std::size_t j = 0; j < n; ++j) v[j] = simplex[best][j] + 0.5 * (v[j] - simplex[best][j]);
        fv[order[k]] = f(std::span<const double>(v));
      }
    }
  }
  const std::size_t best =
      static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  return {simplex[best], fv[best], iters};
}

}  // namespace qcoh::nelder_mead
