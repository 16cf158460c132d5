"""Brute-force reference path over the full qubit register.

Nothing in here uses the sector closed forms. States live in the full
``2**(N+M)`` register, site Hamiltonians are lifted to the register and
exponentiated with ``scipy.linalg.expm``, reduced states come from explicit
partial traces, and concurrences only from the general Wootters formula.

Register positions are 0-based: ``a_1 .. a_N`` are positions ``0 .. N-1``
and ``b_1 .. b_M`` are ``N .. N+M-1``. Position 0 is the most significant
bit of the amplitude index. Reduced matrices are returned in descending
basis order (``|1...1>`` first), the same order as the closed forms.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .entanglement import Partition, concurrence_wootters
from .linalg import DEFAULT_TOL, NonHermitianInput, as_matrix, is_hermitian
from .sector import BellKind, PhiSectorState, PsiSectorState

MAX_QUBITS = 12
MAX_KEPT = 4


class RegisterTooLarge(ValueError):
    pass


class TooManyKept(ValueError):
    pass


class WeightOverflow(ValueError):
    """A subset carries amplitude on states with two or more excitations."""


class NotCollapsible(ValueError):
    """A subset's excitation is spread over more than one direction."""


def _bit(n, position):
    return 1 << (n - 1 - position)


@dataclass(frozen=True, eq=False)
class FullState:
    amplitudes: np.ndarray
    n_a: int
    n_b: int

    def __post_init__(self):
        n = self.n_a + self.n_b
        if n > MAX_QUBITS:
            raise RegisterTooLarge(f"{n} qubits exceeds the cap of {MAX_QUBITS}")
        a = np.array(self.amplitudes, dtype=complex)
        if a.shape != (2 ** n,):
            raise ValueError(f"expected {2 ** n} amplitudes, got shape {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @property
    def n(self):
        return self.n_a + self.n_b

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def site_weights(self):
        """Excitation counts (on A, on B) for every basis index."""
        idx = np.arange(2 ** self.n)
        wb = np.array([bin(k & ((1 << self.n_b) - 1)).count("1") for k in idx])
        wa = np.array([bin(k >> self.n_b).count("1") for k in idx])
        return wa, wb

    def leakage(self):
        """Norm carried by states with two or more excitations on a site."""
        wa, wb = self.site_weights()
        return float(np.linalg.norm(self.amplitudes[(wa > 1) | (wb > 1)]))


def pair_positions(n_a, i, j):
    return (i - 1, n_a + j - 1)


def embed(state):
    n_a, n_b = state.n_a, state.n_b
    n = n_a + n_b
    if n > MAX_QUBITS:
        raise RegisterTooLarge(f"{n} qubits exceeds the cap of {MAX_QUBITS}")
    amp = np.zeros(2 ** n, dtype=complex)
    if isinstance(state, PsiSectorState):
        for i in range(n_a):
            amp[_bit(n, i)] = state.d_a[i]
        for j in range(n_b):
            amp[_bit(n, n_a + j)] = state.d_b[j]
    elif isinstance(state, PhiSectorState):
        for i in range(n_a):
            for j in range(n_b):
                amp[_bit(n, i) | _bit(n, n_a + j)] = state.c[i, j]
        amp[0] = state.c0
    else:
        raise TypeError(f"not a sector state: {type(state).__name__}")
    return FullState(amp, n_a, n_b)


def extract(full, kind):
    """Read sector amplitudes back out of a register state."""
    n, n_a, n_b = full.n, full.n_a, full.n_b
    amp = full.amplitudes
    if BellKind(kind) is BellKind.PSI:
        d_a = [amp[_bit(n, i)] for i in range(n_a)]
        d_b = [amp[_bit(n, n_a + j)] for j in range(n_b)]
        return PsiSectorState(d_a, d_b)
    c = np.array([[amp[_bit(n, i) | _bit(n, n_a + j)] for j in range(n_b)]
                  for i in range(n_a)])
    return PhiSectorState(c, amp[0])


def lift_site_hamiltonian(h, n):
    """Place a single-excitation block on an ``n``-qubit site register.

    The vacuum gets zero energy; multiply-excited states are left at zero
    too, so their propagator is the identity (they are never populated).
    """
    h = as_matrix(h)
    if h.shape != (n, n):
        raise ValueError(f"site has {n} qubits but block is {h.shape}")
    lifted = np.zeros((2 ** n, 2 ** n), dtype=complex)
    single = [_bit(n, k) for k in range(n)]
    lifted[np.ix_(single, single)] = h
    return lifted


def register_hamiltonian(h_a, h_b, n_a, n_b):
    ha = np.zeros((2 ** n_a,) * 2, complex) if h_a is None else lift_site_hamiltonian(h_a, n_a)
    hb = np.zeros((2 ** n_b,) * 2, complex) if h_b is None else lift_site_hamiltonian(h_b, n_b)
    return np.kron(ha, np.eye(2 ** n_b)) + np.kron(np.eye(2 ** n_a), hb)


def evolve_full(s, h_a, h_b, t, tol=DEFAULT_TOL):
    """Evolve under ``H_A + H_B``; either block may be ``None`` (no dynamics)."""
    for h in (h_a, h_b):
        if h is not None and not is_hermitian(h, tol):
            raise NonHermitianInput("site Hamiltonian is not Hermitian")
    big_h = register_hamiltonian(h_a, h_b, s.n_a, s.n_b)
    u = scipy.linalg.expm(-1j * float(t) * big_h)
    return FullState(u @ s.amplitudes, s.n_a, s.n_b)


def _reduce(amplitudes, n, keep):
    keep = sorted(keep)
    rest = [p for p in range(n) if p not in keep]
    m = amplitudes.reshape((2,) * n).transpose(keep + rest).reshape(2 ** len(keep), -1)
    return m @ m.conj().T


def partial_trace(s, keep):
    """Reduced density matrix of the kept register positions, descending basis."""
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep at least one qubit")
    if len(keep) > MAX_KEPT:
        raise TooManyKept(f"at most {MAX_KEPT} qubits may be kept, asked for {len(keep)}")
    if keep[0] < 0 or keep[-1] >= s.n:
        raise IndexError(f"positions {keep} outside register of {s.n} qubits")
    return _reduce(s.amplitudes, s.n, keep)[::-1, ::-1]


def _one_hot_block(m_rows):
    """Row indices of the no-excitation and single-excitation strings."""
    return [0] + [1 << (m_rows - 1 - k) for k in range(m_rows)]


def _effective_isometry(block, tol):
    size = block.shape[0]
    w, v = np.linalg.eigh(block)
    vec = v[:, -1]
    if w.size > 1 and w[-2] > tol * max(1.0, w[-1]):
        raise NotCollapsible("excitation within the subset is not along one direction")
    # pin the phase so the map is deterministic
    k = int(np.argmax(np.abs(vec)))
    vec = vec * (abs(vec[k]) / vec[k])
    iso = np.zeros((size + 1, 2), dtype=complex)
    iso[0, 0] = 1.0
    iso[1:, 1] = vec
    return iso


def partition_collapse(s, q, tol=DEFAULT_TOL):
    """Effective two-qubit state for an A-subset against a B-subset.

    Each subset is mapped onto one effective qubit: the all-zero string goes
    to ``|0>``, the normalised single-excitation component to ``|1>``. The
    complement of the two subsets is traced out.
    """
    q.check(s.n_a, s.n_b)
    pa = [i - 1 for i in sorted(q.subset_a)]
    pb = [s.n_a + j - 1 for j in sorted(q.subset_b)]
    rest = [p for p in range(s.n) if p not in pa and p not in pb]
    na, nb = len(pa), len(pb)
    m = s.amplitudes.reshape((2,) * s.n).transpose(pa + pb + rest)
    m = m.reshape(2 ** na, 2 ** nb, -1)
    rows, cols = _one_hot_block(na), _one_hot_block(nb)
    e = m[np.ix_(rows, cols)]
    dropped = np.linalg.norm(m) ** 2 - np.linalg.norm(e) ** 2
    if dropped > tol:
        raise WeightOverflow(f"weight {dropped:.3g} on multiply-excited subset strings")

    flat = e.reshape((na + 1) * (nb + 1), -1)
    rho = (flat @ flat.conj().T).reshape(na + 1, nb + 1, na + 1, nb + 1)
    rho_a = np.einsum("ikjk->ij", rho)
    rho_b = np.einsum("kikj->ij", rho)
    iso = np.kron(_effective_isometry(rho_a[1:, 1:], tol),
                  _effective_isometry(rho_b[1:, 1:], tol))
    eff = iso.conj().T @ rho.reshape(iso.shape[0], iso.shape[0]) @ iso
    return eff[::-1, ::-1]


def pair_concurrence(s, i, j, tol=DEFAULT_TOL):
    return concurrence_wootters(partial_trace(s, pair_positions(s.n_a, i, j)), tol)


def partition_concurrence(s, q, tol=DEFAULT_TOL):
    return concurrence_wootters(partition_collapse(s, q, tol), tol)


def site_to_single_concurrence(s, j, tol=DEFAULT_TOL):
    return partition_concurrence(s, Partition(range(1, s.n_a + 1), [j]), tol)


def single_to_site_concurrence(s, i, tol=DEFAULT_TOL):
    return partition_concurrence(s, Partition([i], range(1, s.n_b + 1)), tol)
