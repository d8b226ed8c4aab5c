import math

import pytest

import qcoh

SQRT15 = math.sqrt(15.0)


def remark_pair():
    rho1 = qcoh.direct_sum(1 / 6, qcoh.PureQubit.plus(), qcoh.PureQubit(0.5, math.sqrt(3) / 2))
    rho2 = qcoh.direct_sum(
        5 / 6,
        qcoh.PureQubit(math.sqrt(1 / 3), math.sqrt(2 / 3)),
        qcoh.PureQubit(math.sqrt(1 / 11), math.sqrt(10 / 11)),
    )
    return rho1, rho2


def test_state_basics():
    s = qcoh.validate_density(0.5, 0.25)
    assert s.rho11 == 0.5
    assert qcoh.l1_coherence(s) == 0.5
    vals, vecs = qcoh.eigendecompose(s)
    assert vals[0] == pytest.approx(0.75, abs=1e-15)
    assert vals[1] == pytest.approx(0.25, abs=1e-15)
    normed, phase = qcoh.phase_normalize(qcoh.validate_density(0.5, -0.3))
    assert normed.rho01 == 0.3
    assert phase == pytest.approx(math.pi)


def test_errors_map_to_python_exceptions():
    with pytest.raises(qcoh.NotPositive):
        qcoh.validate_density(0.3, 0.5)
    with pytest.raises(qcoh.QcohError):
        qcoh.PureQubit(1.0, 1.0)
    with pytest.raises(ValueError):
        qcoh.MeasureSpec.from_token("nope")
    with pytest.raises(qcoh.NonConvexMeasure):
        qcoh.closed_form(qcoh.MeasureSpec.cmax(), qcoh.validate_density(0.5, 0.25))
    with pytest.raises(qcoh.BadOrdering):
        qcoh.max_conversion_probability(0.2, 0.1, 0.3)


def test_measures():
    geo = qcoh.MeasureSpec.geometric()
    assert qcoh.closed_form(geo, qcoh.validate_density(0.5, 0.25)) == pytest.approx(
        (1 - math.sqrt(3) / 2) / 2, rel=1e-14
    )
    assert qcoh.coherence_rank(qcoh.validate_density(0.1, 0.2)) == pytest.approx(0.5, abs=1e-15)
    assert qcoh.eval_pure(qcoh.MeasureSpec.cmu(1 / 3), qcoh.PureQubit(0.5, math.sqrt(3) / 2)) == pytest.approx(0.75)
    assert qcoh.convexity_probe(qcoh.MeasureSpec.cmax()) == "concave"
    assert qcoh.convexity_probe(qcoh.MeasureSpec.cmu(0.05)) == "neither"
    assert [t.token for t in qcoh.builtin_measures()][:3] == ["concurrence", "formation", "geometric"]
    assert qcoh.curve_sample(qcoh.MeasureSpec.cmax(), 3)[1] == pytest.approx((0.5, math.log2(1.5)))


def test_roof_oracle():
    state = qcoh.validate_density(9 / 32, 0.25 + SQRT15 / 32)
    cfg = qcoh.RoofConfig()
    cfg.restarts = 16
    res = qcoh.roof_minimize(qcoh.MeasureSpec.cmax(), state, cfg)
    m_value = math.log2(math.sqrt(8 + SQRT15) / 2)
    assert res.value <= m_value + 1e-6
    assert res.gap is None
    total = sum(w for w, _ in res.witness.members)
    assert total == pytest.approx(1.0, abs=1e-12)
    mixed = qcoh.mix(res.witness)
    assert abs(mixed.rho00 - state.rho00) < 1e-8

    rep = qcoh.verify_closed_form(qcoh.MeasureSpec.formation(), qcoh.validate_density(0.5, 0.25), cfg)
    assert rep.passed


def test_witnesses():
    w1 = qcoh.theorem1_witness(qcoh.validate_density(0.5, 0.25))
    assert w1.p_prime == pytest.approx(0.5)
    w2 = qcoh.theorem2_witness(qcoh.validate_density(0.3, 0.2))
    assert w2.weight == pytest.approx(0.4)
    assert w2.residual == pytest.approx([0.1, 0.5])


def test_transforms():
    rho1, rho2 = remark_pair()
    assert qcoh.c_mu_direct_sum(1 / 3, rho1) == pytest.approx(19 / 24, abs=1e-12)
    assert qcoh.c_mu_direct_sum(1 / 3, rho2) == pytest.approx(29 / 33, abs=1e-12)
    fwd = qcoh.theorem3_feasible(rho1, rho2)
    rev = qcoh.theorem3_feasible(rho2, rho1)
    assert not fwd.feasible and fwd.witness_mu == pytest.approx(1 / 3)
    assert not rev.feasible and rev.witness_mu == pytest.approx(0.25)
    zeta, xi = qcoh.chitambar_monotones(qcoh.validate_density(0.5, 0.5))
    assert (zeta, xi) == pytest.approx((0.5, 1.0))
    assert qcoh.qubit_transform_feasible(qcoh.validate_density(0.5, 0.5), qcoh.validate_density(0.5, 0.0))
    assert qcoh.max_conversion_probability(0.2, 0.3, 0.1) == pytest.approx(0.5)


def test_reduced_reproduction_passes():
    rows = qcoh.run_reproduction(seed=7, samples=5, pairs=50)
    assert rows and all(r["pass"] for r in rows)
    assert {r["criterion"] for r in rows} == set(range(1, 10))
