import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qtransfer import oracle
from qtransfer.dynamics import JCParams, evolve, generic_propagator
from qtransfer.entanglement import (
    Partition,
    concurrence_pair,
    concurrence_partition_psi,
    concurrence_wootters,
    rho_pair,
)
from qtransfer.linalg import NonHermitianInput
from qtransfer.sector import BellParams, PhiSectorState, PsiSectorState, make_bell

from conftest import random_hermitian


def sector_amplitudes(s):
    if isinstance(s, PsiSectorState):
        return np.concatenate([s.d_a, s.d_b])
    return np.concatenate([s.c.ravel(), [s.c0]])


def test_embed_psi_bell():
    full = oracle.embed(make_bell(BellParams("psi", math.pi / 4, 0.0, 2, 2)))
    nz = np.flatnonzero(full.amplitudes)
    assert list(nz) == [0b0010, 0b1000]
    assert np.allclose(full.amplitudes[nz], 1 / math.sqrt(2), atol=1e-16)


def test_embed_phi_bell():
    full = oracle.embed(make_bell(BellParams("phi", math.pi / 4, 0.0, 2, 2)))
    assert list(np.flatnonzero(full.amplitudes)) == [0b0000, 0b1010]


@pytest.mark.parametrize("kind,n_a,n_b", [("psi", 2, 2), ("psi", 3, 2), ("phi", 2, 3), ("phi", 1, 1)])
def test_embed_extract_round_trip(kind, n_a, n_b, rng):
    s = evolve(make_bell(BellParams(kind, 0.5, 0.4, n_a, n_b)),
               generic_propagator(random_hermitian(rng, n_a), 0.9),
               generic_propagator(random_hermitian(rng, n_b), 1.7))
    full = oracle.embed(s)
    assert full.norm() == pytest.approx(1.0, abs=1e-14)
    assert full.leakage() == 0.0
    back = oracle.extract(full, kind)
    assert np.array_equal(sector_amplitudes(back), sector_amplitudes(s))


def test_register_cap():
    with pytest.raises(oracle.RegisterTooLarge):
        oracle.embed(make_bell(BellParams("psi", 0.3, 0.0, 7, 6)))
    oracle.embed(make_bell(BellParams("psi", 0.3, 0.0, 6, 6)))


def test_lifted_hamiltonian_blocks(rng):
    h = random_hermitian(rng, 3)
    big = oracle.lift_site_hamiltonian(h, 3)
    single = [0b100, 0b010, 0b001]
    assert np.array_equal(big[np.ix_(single, single)], h)
    others = [k for k in range(8) if k not in single]
    assert not big[others].any() and not big[:, others].any()


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2 ** 32 - 1), kind=st.sampled_from(["psi", "phi"]),
       n_a=st.integers(1, 3), n_b=st.integers(1, 3), t=st.floats(0.0, 20.0))
def test_evolve_full_matches_sector(seed, kind, n_a, n_b, t):
    rng = np.random.default_rng(seed)
    h_a, h_b = random_hermitian(rng, n_a), random_hermitian(rng, n_b)
    s0 = make_bell(BellParams(kind, 0.6, 0.2, n_a, n_b))
    s = evolve(s0, generic_propagator(h_a, t), generic_propagator(h_b, t))
    full = oracle.evolve_full(oracle.embed(s0), h_a, h_b, t)
    assert full.leakage() <= 1e-12
    got = sector_amplitudes(oracle.extract(full, kind))
    assert np.max(np.abs(got - sector_amplitudes(s))) <= 1e-10


def test_site_evolutions_commute(rng):
    h_a, h_b = random_hermitian(rng, 2), random_hermitian(rng, 3)
    s0 = oracle.embed(make_bell(BellParams("phi", 0.4, 0.0, 2, 3)))
    ab = oracle.evolve_full(oracle.evolve_full(s0, h_a, None, 1.3), None, h_b, 1.3)
    ba = oracle.evolve_full(oracle.evolve_full(s0, None, h_b, 1.3), h_a, None, 1.3)
    both = oracle.evolve_full(s0, h_a, h_b, 1.3)
    assert np.allclose(ab.amplitudes, ba.amplitudes, atol=1e-12)
    assert np.allclose(ab.amplitudes, both.amplitudes, atol=1e-12)


def test_evolve_full_rejects_non_hermitian():
    s0 = oracle.embed(make_bell(BellParams("psi", 0.4)))
    with pytest.raises(NonHermitianInput):
        oracle.evolve_full(s0, np.array([[0, 1], [0, 0]]), None, 1.0)


@pytest.mark.parametrize("kind", ["psi", "phi"])
def test_partial_trace_matches_sector_rho(kind, rng):
    s0 = make_bell(BellParams(kind, 0.45, 0.3, 3, 2))
    h_a, h_b = random_hermitian(rng, 3), random_hermitian(rng, 2)
    for t in np.linspace(0, 8, 9):
        s = evolve(s0, generic_propagator(h_a, t), generic_propagator(h_b, t))
        full = oracle.evolve_full(oracle.embed(s0), h_a, h_b, t)
        for i in (1, 2, 3):
            for j in (1, 2):
                rho = oracle.partial_trace(full, oracle.pair_positions(3, i, j))
                assert np.max(np.abs(rho - rho_pair(s, i, j))) <= 1e-10
                assert abs(oracle.pair_concurrence(full, i, j) - concurrence_pair(s, i, j)) <= 1e-10


def test_partial_trace_single_qubit():
    full = oracle.embed(make_bell(BellParams("psi", math.pi / 3, 0.0, 2, 2)))
    rho = oracle.partial_trace(full, [0])
    assert np.allclose(rho, np.diag([0.25, 0.75]), atol=1e-15)


def test_partial_trace_limits():
    full = oracle.embed(make_bell(BellParams("psi", 0.3, 0.0, 3, 3)))
    with pytest.raises(oracle.TooManyKept):
        oracle.partial_trace(full, [0, 1, 2, 3, 4])
    with pytest.raises(IndexError):
        oracle.partial_trace(full, [6])
    with pytest.raises(ValueError):
        oracle.partial_trace(full, [])


def test_collapse_full_sites_gives_global():
    alpha = 0.35
    for kind in ("psi", "phi"):
        s0 = make_bell(BellParams(kind, alpha, 0.0, 2, 2))
        full = oracle.evolve_full(oracle.embed(s0), *JCParams(1.0, 0.7, 0.3, -0.2).hamiltonians(), 2.2)
        got = oracle.partition_concurrence(full, Partition.full(2, 2))
        assert got == pytest.approx(math.sin(2 * alpha), abs=1e-10)


def test_collapse_singletons_match_partial_trace(rng):
    s0 = make_bell(BellParams("psi", 0.7, 0.0, 3, 2))
    full = oracle.evolve_full(oracle.embed(s0), random_hermitian(rng, 3), random_hermitian(rng, 2), 1.1)
    for i in (1, 2, 3):
        for j in (1, 2):
            a = oracle.partition_collapse(full, Partition([i], [j]))
            b = oracle.partial_trace(full, oracle.pair_positions(3, i, j))
            assert np.max(np.abs(a - b)) <= 1e-12


def test_collapse_matches_psi_partition_forms(rng):
    s0 = make_bell(BellParams("psi", 0.5, 0.0, 3, 3))
    h_a, h_b = random_hermitian(rng, 3), random_hermitian(rng, 3)
    s = evolve(s0, generic_propagator(h_a, 0.8), generic_propagator(h_b, 0.8))
    full = oracle.evolve_full(oracle.embed(s0), h_a, h_b, 0.8)
    for q in (Partition([1, 3], [2]), Partition([2], [1, 2, 3]), Partition([1, 2], [2, 3])):
        eff = oracle.partition_collapse(full, q)
        assert abs(concurrence_wootters(eff) - concurrence_partition_psi(s, q)) <= 1e-10


def test_collapse_rejects_multiple_directions():
    c = np.diag([0.6, 0.6])
    full = oracle.embed(PhiSectorState(c, math.sqrt(0.28)))
    with pytest.raises(oracle.NotCollapsible):
        oracle.partition_collapse(full, Partition([1, 2], [1, 2]))


def test_collapse_rejects_double_excitation():
    amp = np.zeros(16, complex)
    amp[0b1100] = 1.0
    full = oracle.FullState(amp, 2, 2)
    assert full.leakage() == pytest.approx(1.0)
    with pytest.raises(oracle.WeightOverflow):
        oracle.partition_collapse(full, Partition([1, 2], [1]))
