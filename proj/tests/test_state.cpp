#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qcoh/errors.hpp"
#include "qcoh/state.hpp"
#include "support.hpp"

using namespace qcoh;
using qcoh::testing::entry_distance;
using doctest::Approx;

namespace {
const double kSqrt15 = std::sqrt(15.0);
}

TEST_CASE("validate_density accepts valid states and rejects invalid ones") {
  const auto plus = validate_density(0.5, 0.5);
  CHECK(plus.rho11() == 0.5);
  CHECK(plus.rho01() == cplx(0.5, 0.0));

  const auto ref = validate_density(9.0 / 32.0, 0.25 + kSqrt15 / 32.0);
  CHECK(ref.rho11() == doctest::Approx(23.0 / 32.0).epsilon(1e-15));

  CHECK_THROWS_AS(validate_density(0.3, 0.5), NotPositive);
  CHECK_THROWS_AS(validate_density(-0.1, 0.0), TraceRange);
  CHECK_THROWS_AS(validate_density(1.2, 0.0), TraceRange);
  CHECK_THROWS_AS(validate_density(std::nan(""), 0.0), TraceRange);
}

TEST_CASE("positivity excess within slack is clamped onto the boundary") {
  const double bound = std::sqrt(0.25 * 0.75);
  const auto s = validate_density(0.25, std::polar(bound * (1.0 + 1e-13), 0.7));
  CHECK(std::norm(s.rho01()) <= s.rho00() * s.rho11());
  CHECK(std::arg(s.rho01()) == Approx(0.7).epsilon(1e-14));
}

TEST_CASE("l1_coherence") {
  CHECK(l1_coherence(validate_density(0.5, 0.5)) == 1.0);
  CHECK(l1_coherence(validate_density(0.3, 0.0)) == 0.0);
  // 2 (1/4 + sqrt15/32), mpmath: 0.742061459137963555...
  CHECK(l1_coherence(validate_density(9.0 / 32.0, 0.25 + kSqrt15 / 32.0)) ==
        Approx(0.742061459137963555).epsilon(1e-14));
}

TEST_CASE("phase_normalize") {
  auto flip = phase_normalize(validate_density(0.5, -0.3));
  CHECK(flip.state.rho01() == cplx(0.3, 0.0));
  CHECK(flip.phase == Approx(std::numbers::pi));

  auto same = phase_normalize(validate_density(0.5, 0.25));
  CHECK(same.state.rho01() == cplx(0.25, 0.0));
  CHECK(same.phase == 0.0);

  auto diag = phase_normalize(validate_density(0.5, {0.1, 0.1}));
  CHECK(diag.state.rho01().real() == Approx(std::sqrt(0.02)).epsilon(1e-15));
  CHECK(diag.state.rho01().imag() == 0.0);
  CHECK(diag.phase == Approx(std::numbers::pi / 4.0));

  CHECK(phase_normalize(validate_density(0.3, 0.0)).phase == 0.0);
}

TEST_CASE("phase_normalize is idempotent and keeps l1 exactly") {
  auto rng = qcoh::testing::rng_for(11);
  for (int i = 0; i < 500; ++i) {
    const auto s = qcoh::testing::random_state(rng);
    const auto once = phase_normalize(s);
    const auto twice = phase_normalize(once.state);
    CHECK(twice.state == once.state);
    CHECK(twice.phase == 0.0);
    CHECK(l1_coherence(once.state) == l1_coherence(s));
  }
}

TEST_CASE("mix reproduces the reference decompositions") {
  const Ensemble single({{1.0, PureQubit::plus()}});
  CHECK(entry_distance(mix(single), validate_density(0.5, 0.5)) < 1e-15);

  const Ensemble cmax_example({{0.5, PureQubit(0.25, kSqrt15 / 4.0)}, {0.5, PureQubit::plus()}});
  CHECK(entry_distance(mix(cmax_example), validate_density(9.0 / 32.0, 0.25 + kSqrt15 / 32.0)) <
        1e-15);

  const Ensemble cmu_example({{0.3, PureQubit(std::sqrt(1.0 / 30.0), std::sqrt(29.0 / 30.0))},
                              {0.7, PureQubit::plus()}});
  CHECK(entry_distance(mix(cmu_example),
                       validate_density(9.0 / 25.0, (std::sqrt(29.0) + 35.0) / 100.0)) < 1e-15);
}

TEST_CASE("Ensemble and PureQubit validation") {
  CHECK_THROWS_AS(Ensemble({{0.6, PureQubit::plus()}}), WeightRange);
  CHECK_THROWS_AS(Ensemble({{1.5, PureQubit::plus()}, {-0.5, PureQubit::zero()}}), WeightRange);
  CHECK_THROWS_AS(Ensemble(std::vector<EnsembleMember>{}), WeightRange);
  CHECK_THROWS_AS(PureQubit(1.0, 1.0), NotNormalized);
  CHECK_THROWS_AS(PureQubit::normalized(0.0, 0.0), NotNormalized);
  const auto n = PureQubit::normalized({3.0, 0.0}, {0.0, 4.0});
  CHECK(n.c0().real() == Approx(0.6));
  CHECK(n.c1().imag() == Approx(0.8));
}

TEST_CASE("lower_population") {
  CHECK(lower_population(PureQubit::plus()) == Approx(0.5).epsilon(1e-15));
  CHECK(lower_population(PureQubit(0.25, kSqrt15 / 4.0)) == Approx(1.0 / 16.0).epsilon(1e-15));
  CHECK(lower_population(PureQubit(std::sqrt(29.0 / 30.0), std::sqrt(1.0 / 30.0))) ==
        Approx(1.0 / 30.0).epsilon(1e-14));
}

TEST_CASE("eigendecompose examples") {
  SUBCASE("diagonal") {
    const auto e = eigendecompose(validate_density(0.3, 0.0));
    CHECK(e.eigenvalues[0] == 0.7);
    CHECK(e.eigenvalues[1] == Approx(0.3));
    CHECK(e.eigenvectors[0] == PureQubit::one());
    CHECK(e.eigenvectors[1] == PureQubit::zero());
  }
  SUBCASE("pure") {
    const auto e = eigendecompose(validate_density(0.5, 0.5));
    CHECK(e.eigenvalues[0] == Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(e.eigenvalues[1]) < 1e-15);
  }
  SUBCASE("closed-form 2x2") {
    // [[1/2, 1/4], [1/4, 1/2]]: eigenvalues 3/4, 1/4 with (1, +-1)/sqrt2.
    const auto e = eigendecompose(validate_density(0.5, 0.25));
    CHECK(e.eigenvalues[0] == Approx(0.75).epsilon(1e-15));
    CHECK(e.eigenvalues[1] == Approx(0.25).epsilon(1e-15));
    const double h = std::numbers::sqrt2 / 2.0;
    CHECK(std::abs(std::abs(e.eigenvectors[0].c0()) - h) < 1e-15);
    CHECK(std::abs(e.eigenvectors[0].c0() - e.eigenvectors[0].c1()) < 1e-15);
    CHECK(std::abs(e.eigenvectors[1].c0() + e.eigenvectors[1].c1()) < 1e-15);
  }
  SUBCASE("maximally mixed returns the computational basis") {
    const auto e = eigendecompose(validate_density(0.5, 0.0));
    CHECK(e.eigenvectors[0] == PureQubit::zero());
    CHECK(e.eigenvectors[1] == PureQubit::one());
  }
}

TEST_CASE("eigendecompose invariants on random states") {
  auto rng = qcoh::testing::rng_for(5);
  for (int i = 0; i < 1000; ++i) {
    const auto s = qcoh::testing::random_state(rng, i % 7 == 0 ? 1.0 : 0.99);
    const auto e = eigendecompose(s);
    CHECK(e.eigenvalues[0] >= e.eigenvalues[1]);
    CHECK(e.eigenvalues[1] >= 0.0);
    CHECK(std::abs(e.eigenvalues[0] + e.eigenvalues[1] - 1.0) <= 1e-12);
    const double det = s.rho00() * s.rho11() - std::norm(s.rho01());
    CHECK(std::abs(e.eigenvalues[0] * e.eigenvalues[1] - det) <= 1e-10);
    const auto& [v, w] = e.eigenvectors;
    CHECK(std::abs(std::conj(v.c0()) * w.c0() + std::conj(v.c1()) * w.c1()) <= 1e-12);
    // Reassemble sum_j l_j |e_j><e_j|.
    double r00 = 0.0;
    cplx r01{};
    for (int j = 0; j < 2; ++j) {
      r00 += e.eigenvalues[j] * std::norm(e.eigenvectors[j].c0());
      r01 += e.eigenvalues[j] * e.eigenvectors[j].c0() * std::conj(e.eigenvectors[j].c1());
    }
    CHECK(std::abs(r00 - s.rho00()) <= 1e-10);
    CHECK(std::abs(r01 - s.rho01()) <= 1e-10);
  }
}

TEST_CASE("l1 vanishes exactly on incoherent states") {
  CHECK(l1_coherence(validate_density(0.2, 0.0)) == 0.0);
  CHECK(l1_coherence(validate_density(0.2, {0.0, 1e-300})) > 0.0);
}

TEST_CASE("direct_sum") {
  const auto d = direct_sum(1.0, PureQubit::plus(), PureQubit::zero());
  CHECK(d.p == 1.0);
  const auto rho1 = direct_sum(1.0 / 6.0, PureQubit::plus(), PureQubit(0.5, std::sqrt(3.0) / 2.0));
  CHECK(lower_population(rho1.phi2) == Approx(0.25).epsilon(1e-15));
  const auto rho2 = direct_sum(5.0 / 6.0, PureQubit(std::sqrt(1.0 / 3.0), std::sqrt(2.0 / 3.0)),
                               PureQubit(std::sqrt(1.0 / 11.0), std::sqrt(10.0 / 11.0)));
  CHECK(lower_population(rho2.phi2) == Approx(1.0 / 11.0).epsilon(1e-14));
  CHECK_THROWS_AS(direct_sum(1.5, PureQubit::plus(), PureQubit::plus()), WeightRange);
  CHECK_THROWS_AS(direct_sum(-0.1, PureQubit::plus(), PureQubit::plus()), WeightRange);
}

TEST_CASE("swapped relabels the basis") {
  const auto s = validate_density(0.2, {0.1, 0.3});
  const auto t = s.swapped();
  CHECK(t.rho00() == Approx(0.8));
  CHECK(t.rho01() == cplx(0.1, -0.3));
}
