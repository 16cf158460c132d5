"""Sector states reachable from a two-qubit Bell seed.

Site A holds qubits a_1..a_N, site B holds b_1..b_M. The seed pair is
always (a_1, b_1), stored at array index 0. Local dynamics conserve the
number of excitations on each site, so

* the anti-correlated seed ``cos(a)|10> + e^{ib} sin(a)|01>`` stays in the
  span of single excitations on either site (``PsiSectorState``);
* the correlated seed ``cos(a)|11> + e^{ib} sin(a)|00>`` stays in the span of
  one excitation per site plus the vacuum (``PhiSectorState``).
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_TOL


class BellKind(str, enum.Enum):
    PSI = "psi"
    PHI = "phi"


def _frozen(x, ndim):
    a = np.array(x, dtype=complex)
    if a.ndim != ndim:
        raise ValueError(f"expected a {ndim}-d array, got shape {a.shape}")
    if a.size == 0:
        raise ValueError("amplitude array is empty")
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class BellParams:
    kind: BellKind
    alpha: float
    beta: float = 0.0
    n_a: int = 2
    n_b: int = 2

    def __post_init__(self):
        object.__setattr__(self, "kind", BellKind(self.kind))
        if not 0.0 <= self.alpha <= math.pi / 2 + 1e-15:
            raise ValueError(f"alpha must lie in [0, pi/2], got {self.alpha}")
        if self.n_a < 1 or self.n_b < 1:
            raise ValueError("each site needs at least one qubit")

    @property
    def global_concurrence(self):
        return 2.0 * math.sin(self.alpha) * math.cos(self.alpha)


@dataclass(frozen=True, eq=False)
class PsiSectorState:
    """Amplitudes ``d_a[I]`` of ``|1_I>_A |0>_B`` and ``d_b[J]`` of ``|0>_A |1_J>_B``."""

    d_a: np.ndarray
    d_b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "d_a", _frozen(self.d_a, 1))
        object.__setattr__(self, "d_b", _frozen(self.d_b, 1))

    kind = BellKind.PSI

    @property
    def n_a(self):
        return self.d_a.shape[0]

    @property
    def n_b(self):
        return self.d_b.shape[0]

    @property
    def weight_a(self):
        return float(np.sum(np.abs(self.d_a) ** 2))

    @property
    def weight_b(self):
        return float(np.sum(np.abs(self.d_b) ** 2))

    def norm2(self):
        return self.weight_a + self.weight_b


@dataclass(frozen=True, eq=False)
class PhiSectorState:
    """Amplitudes ``c[i, j]`` of ``|1_i>_A |1_j>_B`` plus the vacuum amplitude ``c0``."""

    c: np.ndarray
    c0: complex

    def __post_init__(self):
        object.__setattr__(self, "c", _frozen(self.c, 2))
        object.__setattr__(self, "c0", complex(self.c0))

    kind = BellKind.PHI

    @property
    def n_a(self):
        return self.c.shape[0]

    @property
    def n_b(self):
        return self.c.shape[1]

    @property
    def excited_weight(self):
        return float(np.sum(np.abs(self.c) ** 2))

    def norm2(self):
        return abs(self.c0) ** 2 + self.excited_weight

    def rank1_residual(self):
        """Frobenius distance from ``c`` to its best rank-1 approximation."""
        s = np.linalg.svd(self.c, compute_uv=False)
        return float(np.sqrt(np.sum(s[1:] ** 2)))


def make_bell(params):
    ca = math.cos(params.alpha)
    sa = math.sin(params.alpha) * complex(math.cos(params.beta), math.sin(params.beta))
    if params.kind is BellKind.PSI:
        d_a = np.zeros(params.n_a, dtype=complex)
        d_b = np.zeros(params.n_b, dtype=complex)
        d_a[0] = ca
        d_b[0] = sa
        return PsiSectorState(d_a, d_b)
    c = np.zeros((params.n_a, params.n_b), dtype=complex)
    c[0, 0] = ca
    return PhiSectorState(c, sa)


def global_concurrence(state):
    """A-B concurrence read off the sector weights.

    Only the total excitation number at each site enters, so this value is
    fixed by the seed and cannot change under local dynamics.
    """
    if isinstance(state, PsiSectorState):
        return 2.0 * math.sqrt(state.weight_a) * math.sqrt(state.weight_b)
    return 2.0 * abs(state.c0) * math.sqrt(state.excited_weight)


@dataclass(frozen=True)
class ValidationReport:
    normalization_residual: float
    rank1_residual: float | None
    tol: float

    @property
    def passed(self):
        if self.normalization_residual > self.tol:
            return False
        return self.rank1_residual is None or self.rank1_residual <= self.tol


def validate(state, tol=DEFAULT_TOL):
    residual = abs(state.norm2() - 1.0)
    rank1 = state.rank1_residual() if isinstance(state, PhiSectorState) else None
    return ValidationReport(residual, rank1, tol)


# Plain-text dump: one "re im" pair per line. Psi: d_a then d_b.
# Phi: c in row-major order, then c0.

def _amplitudes(state):
    if isinstance(state, PsiSectorState):
        return np.concatenate([state.d_a, state.d_b])
    return np.concatenate([state.c.ravel(), [state.c0]])


def dump_state(state):
    return "".join(f"{z.real + 0.0:.17g} {z.imag + 0.0:.17g}\n" for z in _amplitudes(state))


def load_state(text, kind, n_a, n_b):
    kind = BellKind(kind)
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 're im', got {line!r}")
        values.append(complex(float(parts[0]), float(parts[1])))
    expected = n_a + n_b if kind is BellKind.PSI else n_a * n_b + 1
    if len(values) != expected:
        raise ValueError(f"expected {expected} amplitudes, found {len(values)}")
    z = np.array(values)
    if kind is BellKind.PSI:
        return PsiSectorState(z[:n_a], z[n_a:])
    return PhiSectorState(z[:-1].reshape(n_a, n_b), z[-1])
