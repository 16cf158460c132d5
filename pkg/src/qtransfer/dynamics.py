"""Local propagators on a site's single-excitation subspace.

A site Hamiltonian that conserves excitation number acts on the
one-excitation states ``|1_1>, ..., |1_N>`` through an N x N Hermitian block
``h``. The vacuum is pinned at zero energy (free phases are dropped), so the
site propagator is ``exp(-i h t)`` on that block and the identity on the
vacuum. Concurrences depend on amplitude moduli only, so this convention
does not change any observable.
"""

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_TOL, as_matrix, expm_unitary, is_hermitian, NonHermitianInput
from .sector import PhiSectorState, PsiSectorState


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class JCParams:
    """Atom-cavity couplings and detunings ``(w0 - w_cav) / 2`` for both sites."""

    g_a: float = 1.0
    g_b: float = 1.0
    delta_a: float = 0.0
    delta_b: float = 0.0

    def __post_init__(self):
        if self.g_a < 0 or self.g_b < 0:
            raise ValueError("couplings must be non-negative")

    @property
    def g_mean(self):
        return 0.5 * (self.g_a + self.g_b)

    def hamiltonians(self):
        return jc_hamiltonian(self.g_a, self.delta_a), jc_hamiltonian(self.g_b, self.delta_b)

    def propagators(self, t):
        return (jc_propagator(self.g_a, self.delta_a, t),
                jc_propagator(self.g_b, self.delta_b, t))


@dataclass(frozen=True, eq=False)
class LocalPropagator:
    u: np.ndarray
    t: float

    @property
    def dim(self):
        return self.u.shape[0]


@dataclass(frozen=True)
class DampingParams:
    gamma: float = 0.0
    kappa: float | None = None

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError("gamma must be non-negative")
        if self.kappa is None:
            object.__setattr__(self, "kappa", self.gamma)
        elif self.kappa < 0:
            raise ValueError("kappa must be non-negative")

    def envelope(self, t):
        return np.exp(-self.gamma * np.asarray(t, dtype=float))

    def global_envelope(self, t):
        return np.exp(-self.kappa * np.asarray(t, dtype=float))


def jc_hamiltonian(g, delta):
    """Jaynes-Cummings block on (atom excited, cavity excited), mean frequency removed."""
    return np.array([[delta, g], [g, -delta]], dtype=complex)


def jc_propagator(g, delta, t):
    """Closed-form ``exp(-i t [[delta, g], [g, -delta]])``.

    With ``W = sqrt(delta**2 + g**2)`` this is
    ``cos(Wt) I - i sin(Wt)/W [[delta, g], [g, -delta]]``.
    ``g = delta = 0`` gives the identity.
    """
    omega = math.hypot(delta, g)
    if omega == 0.0:
        return LocalPropagator(np.eye(2, dtype=complex), t)
    c = math.cos(omega * t)
    s = math.sin(omega * t) / omega
    u = np.array([[c - 1j * s * delta, -1j * s * g],
                  [-1j * s * g, c + 1j * s * delta]])
    return LocalPropagator(u, t)


def generic_propagator(h_local, t, tol=DEFAULT_TOL):
    return LocalPropagator(expm_unitary(h_local, t, tol), t)


def _check_dims(ua, ub, n_a, n_b):
    if ua.dim != n_a or ub.dim != n_b:
        raise DimensionMismatch(
            f"propagators are {ua.dim}x{ua.dim} and {ub.dim}x{ub.dim}, "
            f"state has sites of size {n_a} and {n_b}")


def evolve_psi(s0, ua, ub):
    _check_dims(ua, ub, s0.n_a, s0.n_b)
    return PsiSectorState(ua.u @ s0.d_a, ub.u @ s0.d_b)


def evolve_phi(s0, ua, ub):
    # each index of c transforms like a ket on its own site: c -> U_A c U_B^T
    _check_dims(ua, ub, s0.n_a, s0.n_b)
    return PhiSectorState(ua.u @ s0.c @ ub.u.T, s0.c0)


def evolve(s0, ua, ub):
    if isinstance(s0, PsiSectorState):
        return evolve_psi(s0, ua, ub)
    if isinstance(s0, PhiSectorState):
        return evolve_phi(s0, ua, ub)
    raise TypeError(f"not a sector state: {type(s0).__name__}")


def apply_damping(series, t, params):
    """Multiply concurrence values sampled at times ``t`` by ``exp(-gamma t)``.

    ``series`` may be 1-d (one value per time) or 2-d with time along axis 0.
    A scalar ``t`` scales every entry.
    """
    series = np.asarray(series, dtype=float)
    env = params.envelope(t)
    if series.ndim == 2 and np.ndim(env) == 1:
        env = env[:, None]
    return series * env


def damped_global_concurrence(cab0, t, params):
    return cab0 * params.global_envelope(t)


def parse_hamiltonian(text, tol=DEFAULT_TOL):
    """Parse the custom single-excitation Hamiltonian format.

    First line: N. Then N rows of N whitespace-separated ``re,im`` pairs.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty Hamiltonian file")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ValueError(f"first line must be the dimension, got {lines[0]!r}") from None
    if n < 1:
        raise ValueError("dimension must be at least 1")
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} matrix rows, found {len(lines) - 1}")
    h = np.zeros((n, n), dtype=complex)
    for r, line in enumerate(lines[1:]):
        cells = line.split()
        if len(cells) != n:
            raise ValueError(f"row {r + 1}: expected {n} entries, found {len(cells)}")
        for k, cell in enumerate(cells):
            try:
                re, im = cell.split(",")
                h[r, k] = complex(float(re), float(im))
            except ValueError:
                raise ValueError(f"row {r + 1}: bad entry {cell!r}, want 're,im'") from None
    if not is_hermitian(h, tol):
        raise NonHermitianInput("Hamiltonian is not Hermitian within 1e-10")
    return h


def load_hamiltonian(path, tol=DEFAULT_TOL):
    with open(path) as fh:
        return parse_hamiltonian(fh.read(), tol)


def format_hamiltonian(h):
    h = as_matrix(h)
    rows = [" ".join(f"{z.real:.17g},{z.imag:.17g}" for z in row) for row in h]
    return f"{h.shape[0]}\n" + "\n".join(rows) + "\n"
