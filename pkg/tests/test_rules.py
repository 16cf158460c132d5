import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qtransfer.dynamics import DampingParams, JCParams, apply_damping, evolve, generic_propagator
from qtransfer.entanglement import pair_concurrences
from qtransfer.rules import (
    RuleReport,
    WrongSector,
    WrongShape,
    check_ckw,
    check_damped_sum,
    check_global_invariance,
    check_one_sided_sum,
    check_theorem1,
    check_theorem2,
    one_sided_sum,
    sspc,
    three_tangle_phi,
    three_tangle_psi,
    yonac_sum,
)
from qtransfer.sector import BellParams, PhiSectorState, PsiSectorState, make_bell

from conftest import random_hermitian, random_unit

EQUAL = PhiSectorState(np.full((2, 2), 1 / math.sqrt(5)), 1 / math.sqrt(5))


def random_evolved(rng, kind, n_a, n_b, t):
    s0 = make_bell(BellParams(kind, rng.uniform(0, math.pi / 2), rng.uniform(0, 2 * math.pi), n_a, n_b))
    return evolve(s0, generic_propagator(random_hermitian(rng, n_a), t),
                  generic_propagator(random_hermitian(rng, n_b), t))


@pytest.mark.parametrize("kind", ["psi", "phi"])
@pytest.mark.parametrize("alpha", [0.0, 0.3, math.pi / 4])
def test_sspc_at_seed(kind, alpha):
    s = make_bell(BellParams(kind, alpha, 0.0, 3, 2))
    assert sspc(s) == pytest.approx(math.sin(2 * alpha) ** 2, abs=1e-15)


def test_sspc_equal_amplitude_phi():
    assert sspc(EQUAL) == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n_a=st.integers(1, 4), n_b=st.integers(1, 4),
       t=st.floats(0.0, 30.0))
def test_theorem1_random(seed, n_a, n_b, t):
    rep = check_theorem1(random_evolved(np.random.default_rng(seed), "psi", n_a, n_b, t), tol=1e-10)
    assert rep.passed, str(rep)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n_a=st.integers(1, 4), n_b=st.integers(1, 4),
       t=st.floats(0.0, 30.0))
def test_theorem2_random(seed, n_a, n_b, t):
    rep = check_theorem2(random_evolved(np.random.default_rng(seed), "phi", n_a, n_b, t), tol=1e-10)
    assert rep.passed, str(rep)
    assert rep.lhs >= 0.0


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), kind=st.sampled_from(["psi", "phi"]),
       n_a=st.integers(1, 4), n_b=st.integers(1, 4), t=st.floats(0.0, 30.0))
def test_one_sided_sum_random(seed, kind, n_a, n_b, t):
    rep = check_one_sided_sum(random_evolved(np.random.default_rng(seed), kind, n_a, n_b, t), tol=1e-10)
    assert rep.passed, str(rep)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), n=st.integers(1, 4))
def test_theorem1_on_arbitrary_psi_vectors(seed, n):
    # any normalised vector, not only states reachable from the seed
    z = random_unit(np.random.default_rng(seed), 2 * n)
    assert check_theorem1(PsiSectorState(z[:n], z[n:])).passed


def test_one_sided_sum_equal_amplitude():
    assert one_sided_sum(EQUAL) == pytest.approx(16 / 25, abs=1e-12)
    assert check_one_sided_sum(EQUAL).passed


def test_ckw_with_pairs(rng):
    s = random_evolved(rng, "phi", 3, 3, 2.0)
    cab = 2 * abs(s.c0) * math.sqrt(s.excited_weight)
    assert check_ckw(cab, pair_concurrences(s).ravel()).passed
    rep = check_ckw(0.1, [0.5, 0.5])
    assert not rep.passed
    assert rep.residual == pytest.approx(0.49)


def test_yonac_symmetric_resonant():
    alpha = math.pi / 4
    s0 = make_bell(BellParams("psi", alpha, 0.0, 2, 2))
    jc = JCParams(1.0, 1.0)
    for gt in np.linspace(0, 12, 97):
        s = evolve(s0, *jc.propagators(gt))
        assert yonac_sum(s) == pytest.approx(1.0, abs=1e-12)


def test_yonac_breaks_for_unequal_couplings():
    s0 = make_bell(BellParams("psi", math.pi / 4, 0.0, 2, 2))
    jc = JCParams(2.0, 1.0)
    values = [yonac_sum(evolve(s0, *jc.propagators(t))) for t in np.linspace(0, 12, 200)]
    assert max(abs(v - 1.0) for v in values) > 1e-3
    for t in np.linspace(0, 12, 50):
        assert check_theorem1(evolve(s0, *jc.propagators(t))).passed


def test_yonac_guards():
    with pytest.raises(WrongSector):
        yonac_sum(EQUAL)
    with pytest.raises(WrongShape):
        yonac_sum(make_bell(BellParams("psi", 0.3, 0.0, 3, 2)))


def test_sector_guards():
    with pytest.raises(WrongSector):
        check_theorem1(EQUAL)
    with pytest.raises(WrongSector):
        check_theorem2(make_bell(BellParams("psi", 0.3)))


def test_three_tangle_equal_amplitude():
    assert three_tangle_phi(EQUAL, 1) == pytest.approx(8 / 25, abs=1e-12)
    assert three_tangle_phi(EQUAL, 2) == pytest.approx(8 / 25, abs=1e-12)


def test_three_tangle_phi_seed_is_zero():
    s = make_bell(BellParams("phi", 0.6, 0.0, 2, 2))
    assert three_tangle_phi(s) == pytest.approx(0.0, abs=1e-15)


def test_three_tangle_psi_vanishes(rng):
    for _ in range(20):
        s = random_evolved(rng, "psi", 3, 3, rng.uniform(0, 10))
        assert abs(three_tangle_psi(s)) <= 1e-12
        assert abs(three_tangle_psi(s, [1, 3])) <= 1e-12


def test_damped_sum():
    alpha = math.pi / 4
    damping = DampingParams(0.3)
    s0 = make_bell(BellParams("psi", alpha, 0.0, 2, 2))
    jc = JCParams(1.0, 1.0, 2.0, 2.0)
    for t in np.linspace(0, 10, 41):
        pairs = apply_damping(pair_concurrences(evolve(s0, *jc.propagators(t))), t, damping)
        rep = check_damped_sum(float(np.sum(pairs ** 2)), 1.0, t, damping, tol=1e-12)
        assert rep.passed, str(rep)
    # a different global rate breaks it away from t = 0
    pairs = apply_damping(pair_concurrences(evolve(s0, *jc.propagators(2.0))), 2.0, damping)
    assert not check_damped_sum(float(np.sum(pairs ** 2)), 1.0, 2.0, DampingParams(0.3, 0.1)).passed


def test_global_invariance(rng):
    s = random_evolved(rng, "phi", 2, 3, 4.0)
    cab = 2 * abs(s.c0) * math.sqrt(s.excited_weight)
    assert check_global_invariance(s, cab).passed
    assert not check_global_invariance(s, cab + 1e-6).passed


def test_report_formatting():
    rep = RuleReport("theorem1", 0.75, 0.75, 0.0, True, 1.5)
    assert rep.csv_row() == "theorem1,1.5,0.75,0.75,0,1"
    assert str(rep).startswith("[PASS] theorem1 at t=1.5")
    assert RuleReport.CSV_HEADER.split(",") == ["rule", "t", "lhs", "rhs", "residual", "passed"]
