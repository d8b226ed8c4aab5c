#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qcoh/errors.hpp"
#include "qcoh/roof.hpp"
#include "support.hpp"

using namespace qcoh;
using doctest::Approx;
using qcoh::testing::entry_distance;

namespace {

const double kSqrt15 = std::sqrt(15.0);

std::vector<IsometryRow> random_isometry(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  std::vector<IsometryRow> u(n);
  for (auto& row : u) row = {cplx{g(rng), g(rng)}, cplx{g(rng), g(rng)}};
  for (int c = 0; c < 2; ++c) {
    if (c == 1) {
      cplx ov{};
      for (auto& row : u) ov += std::conj(row[0]) * row[1];
      for (auto& row : u) row[1] -= ov * row[0];
    }
    double nn = 0.0;
    for (auto& row : u) nn += std::norm(row[c]);
    for (auto& row : u) row[c] /= std::sqrt(nn);
  }
  return u;
}

RoofConfig quick_config(std::uint64_t seed) {
  RoofConfig c;
  c.restarts = 8;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("RoofConfig validation") {
  RoofConfig c;
  CHECK_NOTHROW(c.validate());
  c.ensemble_sizes = {5};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.ensemble_sizes = {};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = RoofConfig{};
  c.restarts = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("hjw_ensemble with the identity isometry is the eigen-ensemble") {
  const auto s = validate_density(0.5, 0.25);
  const std::vector<IsometryRow> id{{cplx{1.0}, cplx{}}, {cplx{}, cplx{1.0}}};
  const auto e = hjw_ensemble(s, id);
  const auto eig = eigendecompose(s);
  REQUIRE(e.size() == 2);
  for (int j = 0; j < 2; ++j) {
    CHECK(e.members()[j].weight == Approx(eig.eigenvalues[j]).epsilon(1e-15));
    const cplx ov = std::conj(e.members()[j].state.c0()) * eig.eigenvectors[j].c0() +
                    std::conj(e.members()[j].state.c1()) * eig.eigenvectors[j].c1();
    CHECK(std::abs(ov) == Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("a real rotation of the eigen-ensemble reproduces the two-member witness") {
  // Scan the rotation angle for both members having m = |rho01| = 1/4.
  const auto s = validate_density(0.5, 0.25);
  auto mismatch = [&](double t) {
    const std::vector<IsometryRow> u{{cplx{std::cos(t)}, cplx{-std::sin(t)}},
                                     {cplx{std::sin(t)}, cplx{std::cos(t)}}};
    const auto e = hjw_ensemble(s, u);
    double worst = 0.0;
    for (const auto& m : e.members()) {
      worst = std::max(worst, std::abs(m.state.off_diagonal_magnitude() - 0.25));
    }
    return worst;
  };
  double best_t = 0.0, best = 1.0;
  for (int i = 0; i <= 100000; ++i) {
    const double t = std::numbers::pi * i / 100000;
    if (const double v = mismatch(t); v < best) best = v, best_t = t;
  }
  CHECK(best < 1e-4);
  const std::vector<IsometryRow> u{{cplx{std::cos(best_t)}, cplx{-std::sin(best_t)}},
                                   {cplx{std::sin(best_t)}, cplx{std::cos(best_t)}}};
  const auto e = hjw_ensemble(s, u);
  const auto w = theorem1_witness(s);
  REQUIRE(e.size() == 2);
  CHECK(e.members()[0].weight == Approx(w.p_prime).epsilon(1e-3));
  CHECK(ensemble_average(MeasureSpec::geometric(), e) ==
        Approx(ensemble_average(MeasureSpec::geometric(), w.ensemble())).epsilon(1e-6));
}

TEST_CASE("hjw_ensemble on a pure state gives copies of that state") {
  auto rng = qcoh::testing::rng_for(31);
  const auto phi = PureQubit::normalized({0.6, 0.1}, {0.3, -0.7});
  const auto s = QubitState::from_pure(phi);
  const auto e = hjw_ensemble(s, random_isometry(rng, 3));
  for (const auto& m : e.members()) {
    const cplx ov = std::conj(m.state.c0()) * phi.c0() + std::conj(m.state.c1()) * phi.c1();
    CHECK(std::abs(ov) == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("hjw_ensemble rejects non-isometries") {
  const auto s = validate_density(0.5, 0.25);
  const std::vector<IsometryRow> bad{{cplx{1.0}, cplx{0.1}}, {cplx{}, cplx{1.0}}};
  CHECK_THROWS_AS(hjw_ensemble(s, bad), NotIsometry);
  const std::vector<IsometryRow> one{{cplx{1.0}, cplx{}}};
  CHECK_THROWS_AS(hjw_ensemble(s, one), NotIsometry);
  auto rng = qcoh::testing::rng_for(1);
  CHECK_THROWS_AS(hjw_ensemble(s, random_isometry(rng, 5)), NotIsometry);
}

TEST_CASE("hjw_ensemble remixes to its source") {
  auto rng = qcoh::testing::rng_for(32);
  for (int i = 0; i < 100; ++i) {
    const auto s = qcoh::testing::random_state(rng);
    const int n = 2 + i % 3;
    CHECK(entry_distance(mix(hjw_ensemble(s, random_isometry(rng, n))), s) <= 1e-10);
  }
}

TEST_CASE("ensemble averages never undercut the closed form of a convex measure") {
  auto rng = qcoh::testing::rng_for(33);
  for (int i = 0; i < 200; ++i) {
    const auto s = qcoh::testing::random_state(rng);
    const auto e = hjw_ensemble(s, random_isometry(rng, 2 + i % 3));
    for (const auto& spec : {MeasureSpec::formation(), MeasureSpec::geometric(),
                             MeasureSpec::concurrence()}) {
      CHECK(ensemble_average(spec, e) >= closed_form(spec, s) - 1e-12);
    }
  }
}

TEST_CASE("roof_minimize examples") {
  SUBCASE("formation at (0.5, 0.25)") {
    const auto r = roof_minimize(MeasureSpec::formation(), validate_density(0.5, 0.25), RoofConfig{});
    CHECK(std::abs(r.value - 0.3545789026652) <= 1e-3);
    REQUIRE(r.gap.has_value());
    CHECK(r.gap->difference <= 1e-3);
  }
  SUBCASE("cmax beats the plug-in value") {
    const auto s = validate_density(9.0 / 32.0, 0.25 + kSqrt15 / 32.0);
    const double m = std::log2(std::sqrt(8.0 + kSqrt15) / 2.0);
    const double n = std::log2(1.5 + kSqrt15 / 16.0);
    const auto r = roof_minimize(MeasureSpec::cmax(), s, RoofConfig{});
    CHECK(r.value <= m + 1e-6);
    CHECK(r.value < n);
    CHECK_FALSE(r.gap.has_value());
  }
  SUBCASE("cmu(1/20) drops below one") {
    const auto s = validate_density(9.0 / 25.0, (std::sqrt(29.0) + 35.0) / 100.0);
    const auto r = roof_minimize(MeasureSpec::cmu(0.05), s, RoofConfig{});
    CHECK(r.value <= 0.9 + 1e-6);
  }
  SUBCASE("concurrence on |+>") {
    const auto r = roof_minimize(MeasureSpec::concurrence(), validate_density(0.5, 0.5), RoofConfig{});
    CHECK(r.value == Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("rank dispatches to the split search") {
    const auto r = roof_minimize(MeasureSpec::rank(), validate_density(0.1, 0.2), RoofConfig{});
    CHECK(r.value >= 0.5 - 1e-6);
    CHECK(r.value <= 0.5 + 1e-6);
    REQUIRE(r.gap.has_value());
    CHECK(r.gap->closed_form == Approx(0.5).epsilon(1e-15));
  }
}

TEST_CASE("RoofResult invariants") {
  auto rng = qcoh::testing::rng_for(34);
  for (int i = 0; i < 20; ++i) {
    const auto s = qcoh::testing::random_state(rng);
    for (const auto& spec : builtin_measures()) {
      const auto r = roof_minimize(spec, s, quick_config(i));
      CHECK(entry_distance(mix(r.witness), s) <= 1e-8);
      CHECK(std::abs(ensemble_average(spec, r.witness) - r.value) <= 1e-12);
    }
  }
}

TEST_CASE("roof_minimize is deterministic in its seed") {
  const auto s = validate_density(0.37, {0.2, -0.11});
  for (const auto& spec : builtin_measures()) {
    const auto a = roof_minimize(spec, s, quick_config(42));
    const auto b = roof_minimize(spec, s, quick_config(42));
    CHECK(a.value == b.value);
    REQUIRE(a.witness.size() == b.witness.size());
    for (std::size_t i = 0; i < a.witness.size(); ++i) {
      CHECK(a.witness.members()[i].weight == b.witness.members()[i].weight);
    }
  }
}

TEST_CASE("sandwich between closed form and oracle on random states") {
  // Few restarts but a tight simplex tolerance: the upper side needs the
  // search to converge well below 1e-12, not to explore widely.
  auto rng = qcoh::testing::rng_for(35);
  for (int i = 0; i < 500; ++i) {
    const auto s = qcoh::testing::random_state(rng);
    for (const auto& spec : {MeasureSpec::formation(), MeasureSpec::geometric(),
                             MeasureSpec::concurrence(), MeasureSpec::cmu(1.0)}) {
      const double closed = closed_form(spec, s);
      const double witness = ensemble_average(spec, theorem1_witness(s).ensemble());
      RoofConfig config = quick_config(i);
      config.restarts = 4;
      config.tol = 1e-15;
      config.max_iters = 5000;
      const double oracle = roof_minimize(spec, s, config).value;
      CHECK(std::abs(witness - closed) <= 1e-10);
      CHECK(oracle <= witness + 1e-12);
      CHECK(oracle >= closed - 1e-3);
    }
  }
}

TEST_CASE("theorem1_witness examples") {
  SUBCASE("(0.5, 0.25)") {
    const auto w = theorem1_witness(validate_density(0.5, 0.25));
    CHECK(w.q == Approx((1.0 - std::sqrt(0.75)) / 2.0).epsilon(1e-14));
    CHECK(w.p_prime == Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("pure |+>") {
    const auto s = validate_density(0.5, 0.5);
    const auto w = theorem1_witness(s);
    CHECK(w.q == Approx(0.5).epsilon(1e-15));
    CHECK(entry_distance(QubitState::from_pure(w.phi1), s) < 1e-15);
  }
  SUBCASE("incoherent diag(0.3, 0.7)") {
    const auto w = theorem1_witness(validate_density(0.3, 0.0));
    CHECK(w.q == 0.0);
    CHECK(w.p_prime == Approx(0.7).epsilon(1e-15));
    CHECK(w.phi1.c0() == cplx{});
    CHECK(w.phi2.c1() == cplx{});
  }
}

TEST_CASE("theorem1_witness remixes with both members at m = |rho01|") {
  auto rng = qcoh::testing::rng_for(36);
  for (int i = 0; i < 500; ++i) {
    const auto s = qcoh::testing::random_state(rng);
    const auto w = theorem1_witness(s);
    CHECK(entry_distance(mix(w.ensemble()), s) <= 1e-10);
    CHECK(std::abs(w.phi1.off_diagonal_magnitude() - s.coherence_magnitude()) <= 1e-12);
    CHECK(std::abs(w.phi2.off_diagonal_magnitude() - s.coherence_magnitude()) <= 1e-12);
    CHECK(w.q <= 0.5);
  }
}

TEST_CASE("theorem2_witness examples") {
  SUBCASE("branch d >= r") {
    const auto w = theorem2_witness(validate_density(0.3, 0.2));
    CHECK(w.weight == Approx(0.4).epsilon(1e-15));
    CHECK(w.residual[0] == Approx(0.1).epsilon(1e-14));
    CHECK(w.residual[1] == Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("branch d < r") {
    const auto w = theorem2_witness(validate_density(0.1, 0.2));
    CHECK(w.weight == Approx(0.5).epsilon(1e-15));
    CHECK(w.weight * std::norm(w.coherent_part.c0()) == Approx(0.1).epsilon(1e-14));
    CHECK(w.weight * std::norm(w.coherent_part.c1()) == Approx(0.4).epsilon(1e-14));
    CHECK(w.residual[0] == 0.0);
    CHECK(w.residual[1] == Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("incoherent") {
    const auto w = theorem2_witness(validate_density(0.3, 0.0));
    CHECK(w.weight == 0.0);
    CHECK(w.residual[0] == 0.3);
    CHECK(w.residual[1] == Approx(0.7));
  }
}

TEST_CASE("theorem2_witness weight matches the piecewise formula") {
  auto rng = qcoh::testing::rng_for(37);
  for (int i = 0; i < 500; ++i) {
    const auto s = qcoh::testing::random_state(rng);
    const auto w = theorem2_witness(s);
    const double d = std::min(s.rho00(), s.rho11());
    const double r = s.coherence_magnitude();
    const double formula = d <= 0.0 ? 0.0 : (d >= r ? 2.0 * r : d + r * r / d);
    CHECK(std::abs(w.weight - formula) <= 1e-12);
    CHECK(w.residual[0] >= 0.0);
    CHECK(w.residual[1] >= 0.0);
    CHECK(entry_distance(mix(w.ensemble()), s) <= 1e-10);
  }
}

TEST_CASE("verify_closed_form") {
  SUBCASE("rank") {
    const auto rep = verify_closed_form(MeasureSpec::rank(), validate_density(0.1, 0.2), RoofConfig{});
    CHECK(rep.closed == Approx(0.5).epsilon(1e-15));
    CHECK(rep.witness_value == Approx(0.5).epsilon(1e-15));
    CHECK(rep.oracle >= 0.5 - 1e-6);
    CHECK(rep.pass);
  }
  SUBCASE("concurrence on |+>") {
    const auto rep = verify_closed_form(MeasureSpec::concurrence(), validate_density(0.5, 0.5), RoofConfig{});
    CHECK(rep.closed == 1.0);
    CHECK(rep.oracle == Approx(1.0).epsilon(1e-12));
    CHECK(rep.pass);
  }
  SUBCASE("geometric on random states") {
    auto rng = qcoh::testing::rng_for(38);
    for (int i = 0; i < 20; ++i) {
      CHECK(verify_closed_form(MeasureSpec::geometric(), qcoh::testing::random_state(rng),
                               quick_config(i)).pass);
    }
  }
  SUBCASE("ineligible") {
    CHECK_THROWS_AS(verify_closed_form(MeasureSpec::cmax(), validate_density(0.5, 0.25), RoofConfig{}),
                    NonConvexMeasure);
  }
}
