"""Reduced two-qubit states and concurrences for sector states.

Two-qubit matrices use the basis order ``|11>, |10>, |01>, |00>`` (first
label: the A-side qubit). Qubit labels ``i`` (site A) and ``j`` (site B) are
1-based, matching the ``a_1, b_1`` naming of the seed pair.
"""

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_TOL, SIGMA_Y, as_matrix, eigvals_general, kron
from .sector import PhiSectorState, PsiSectorState

SPIN_FLIP = kron(SIGMA_Y, SIGMA_Y)


class InvalidDensityMatrix(ValueError):
    pass


class NonProductState(ValueError):
    """The Phi amplitude matrix is not rank 1, so the closed form does not apply."""


class EmptyPartition(ValueError):
    pass


def _check_pair(state, i, j):
    if not (1 <= i <= state.n_a and 1 <= j <= state.n_b):
        raise IndexError(f"pair ({i}, {j}) out of range for sites of size "
                         f"{state.n_a} and {state.n_b}")


@dataclass(frozen=True)
class Partition:
    """A nonlocal bipartition: a subset of A-qubits against a subset of B-qubits."""

    subset_a: frozenset
    subset_b: frozenset

    def __post_init__(self):
        object.__setattr__(self, "subset_a", frozenset(self.subset_a))
        object.__setattr__(self, "subset_b", frozenset(self.subset_b))
        if not self.subset_a or not self.subset_b:
            raise EmptyPartition("both sides of a partition must be non-empty")

    @classmethod
    def full(cls, n_a, n_b):
        return cls(range(1, n_a + 1), range(1, n_b + 1))

    def check(self, n_a, n_b):
        if min(self.subset_a) < 1 or max(self.subset_a) > n_a:
            raise IndexError(f"A-subset {sorted(self.subset_a)} outside 1..{n_a}")
        if min(self.subset_b) < 1 or max(self.subset_b) > n_b:
            raise IndexError(f"B-subset {sorted(self.subset_b)} outside 1..{n_b}")

    def a_index(self):
        return np.array(sorted(self.subset_a)) - 1

    def b_index(self):
        return np.array(sorted(self.subset_b)) - 1


def rho_pair_psi(s, i, j):
    _check_pair(s, i, j)
    da = s.d_a[i - 1]
    db = s.d_b[j - 1]
    pa = abs(da) ** 2
    pb = abs(db) ** 2
    rest = (np.sum(np.abs(np.delete(s.d_a, i - 1)) ** 2)
            + np.sum(np.abs(np.delete(s.d_b, j - 1)) ** 2))
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = pa
    rho[2, 2] = pb
    rho[1, 2] = da * np.conj(db)
    rho[2, 1] = np.conj(da) * db
    rho[3, 3] = rest
    return rho


def _phi_pair_weights(s, i, j):
    """|c_IJ|^2, row and column weights excluding c_IJ, and the rest."""
    w = np.abs(s.c) ** 2
    row = np.delete(w[i - 1], j - 1).sum()
    col = np.delete(w[:, j - 1], i - 1).sum()
    rest = np.delete(np.delete(w, i - 1, axis=0), j - 1, axis=1).sum()
    return w[i - 1, j - 1], row, col, rest


def rho_pair_phi(s, i, j):
    _check_pair(s, i, j)
    cij = s.c[i - 1, j - 1]
    p11, row, col, rest = _phi_pair_weights(s, i, j)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = p11
    rho[0, 3] = cij * np.conj(s.c0)
    rho[3, 0] = np.conj(cij) * s.c0
    rho[1, 1] = row
    rho[2, 2] = col
    rho[3, 3] = rest + abs(s.c0) ** 2
    return rho


def rho_pair(s, i, j):
    if isinstance(s, PsiSectorState):
        return rho_pair_psi(s, i, j)
    return rho_pair_phi(s, i, j)


def _check_density(rho, tol):
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise InvalidDensityMatrix(f"need a 4x4 matrix, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise InvalidDensityMatrix("matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise InvalidDensityMatrix(f"trace is {np.trace(rho).real:.3g}, not 1")
    w, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    if w.min() < -tol:
        raise InvalidDensityMatrix(f"negative eigenvalue {w.min():.3g}")
    return w, v


def spin_flip_eigenvalues(rho):
    """Eigenvalues of ``rho (Y x Y) rho* (Y x Y)``, clamped to >= 0, descending."""
    rho = as_matrix(rho)
    lam = eigvals_general(rho @ SPIN_FLIP @ rho.conj() @ SPIN_FLIP)
    return np.sort(np.clip(lam.real, 0.0, None))[::-1]


def wootters_roots(rho, tol=DEFAULT_TOL):
    """Square roots of the spin-flip spectrum, descending.

    With ``rho = W W^dagger`` these are the singular values of
    ``W^T (Y x Y) W``. Taking them as singular values keeps the small ones
    accurate to machine precision, whereas square roots of computed
    eigenvalues of the non-normal product carry ~1e-8 absolute error.
    """
    w, v = _check_density(rho, tol)
    # eigenvalues at rounding level are noise; their square roots would not be
    w = np.where(w > 16 * np.finfo(float).eps * w.max(), w, 0.0)
    factor = v * np.sqrt(w)
    return np.linalg.svd(factor.T @ SPIN_FLIP @ factor, compute_uv=False)


def concurrence_wootters(rho, tol=DEFAULT_TOL):
    r = wootters_roots(rho, tol)
    return max(0.0, float(r[0] - r[1] - r[2] - r[3]))


def concurrence_pair_psi(s, i, j):
    _check_pair(s, i, j)
    return 2.0 * abs(s.d_a[i - 1]) * abs(s.d_b[j - 1])


def concurrence_pair_phi(s, i, j):
    _check_pair(s, i, j)
    p11, row, col, _ = _phi_pair_weights(s, i, j)
    value = 2.0 * (math.sqrt(p11) * abs(s.c0) - math.sqrt(row * col))
    return max(0.0, value)


def concurrence_pair(s, i, j):
    if isinstance(s, PsiSectorState):
        return concurrence_pair_psi(s, i, j)
    return concurrence_pair_phi(s, i, j)


def pair_concurrences(s):
    """N x M array of all pairwise concurrences (0-based array indices)."""
    return np.array([[concurrence_pair(s, i, j) for j in range(1, s.n_b + 1)]
                     for i in range(1, s.n_a + 1)])


def concurrence_partition_psi(s, q):
    """Concurrence between A-subset and B-subset for a Psi state.

    Each subset collapses to one effective qubit: no excitation, or the
    normalised excitation vector restricted to the subset.
    """
    q.check(s.n_a, s.n_b)
    wa = np.sum(np.abs(s.d_a[q.a_index()]) ** 2)
    wb = np.sum(np.abs(s.d_b[q.b_index()]) ** 2)
    return 2.0 * math.sqrt(wa) * math.sqrt(wb)


def _require_product(s, tol):
    if not isinstance(s, PhiSectorState):
        raise TypeError("expected a PhiSectorState")
    residual = s.rank1_residual()
    if residual > tol:
        raise NonProductState(f"rank-1 residual {residual:.3g} exceeds {tol:g}")


def concurrence_site_to_single_phi(s, j, tol=DEFAULT_TOL):
    """Concurrence between all of site A and the single qubit b_j."""
    _require_product(s, tol)
    if not 1 <= j <= s.n_b:
        raise IndexError(f"b_{j} out of range 1..{s.n_b}")
    return 2.0 * abs(s.c0) * math.sqrt(np.sum(np.abs(s.c[:, j - 1]) ** 2))


def concurrence_single_to_site_phi(s, i, tol=DEFAULT_TOL):
    """Concurrence between the single qubit a_i and all of site B."""
    _require_product(s, tol)
    if not 1 <= i <= s.n_a:
        raise IndexError(f"a_{i} out of range 1..{s.n_a}")
    return 2.0 * abs(s.c0) * math.sqrt(np.sum(np.abs(s.c[i - 1]) ** 2))


def concurrence_site_to_single(s, j, tol=DEFAULT_TOL):
    if isinstance(s, PsiSectorState):
        return concurrence_partition_psi(s, Partition(range(1, s.n_a + 1), [j]))
    return concurrence_site_to_single_phi(s, j, tol)


def concurrence_single_to_site(s, i, tol=DEFAULT_TOL):
    if isinstance(s, PsiSectorState):
        return concurrence_partition_psi(s, Partition([i], range(1, s.n_b + 1)))
    return concurrence_single_to_site_phi(s, i, tol)
