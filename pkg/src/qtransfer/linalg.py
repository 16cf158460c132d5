"""Small dense complex matrix kernel.

Matrices are plain ``numpy`` arrays of ``complex128``. The sizes that occur
here are tiny (at most a few hundred rows), so everything is dense and
nothing is cached.
"""

import math

import numpy as np

DEFAULT_TOL = 1e-10

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class NonHermitianInput(ValueError):
    """A generator that should be Hermitian is not, within tolerance."""


class ConvergenceFailure(ArithmeticError):
    pass


def as_matrix(m):
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-d matrix, got shape {a.shape}")
    return a


def trace(m):
    return complex(np.trace(as_matrix(m)))


def is_hermitian(m, tol=DEFAULT_TOL):
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        return False
    return bool(np.max(np.abs(a - a.conj().T)) <= tol)


def is_unitary(m, tol=DEFAULT_TOL):
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        return False
    eye = np.eye(a.shape[0])
    return bool(np.max(np.abs(a.conj().T @ a - eye)) <= tol)


def is_psd(m, tol=DEFAULT_TOL):
    """Hermitian with no eigenvalue below ``-tol``."""
    if not is_hermitian(m, tol):
        return False
    a = as_matrix(m)
    w = np.linalg.eigvalsh(0.5 * (a + a.conj().T))
    return bool(w.min() >= -tol)


def kron(a, b):
    return np.kron(as_matrix(a), as_matrix(b))


# Pade(13) coefficients and the 1-norm threshold below which the [13/13]
# approximant is accurate to double precision without scaling.
_PADE13 = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0,
    670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
    960960.0, 16380.0, 182.0, 1.0,
)
_THETA13 = 5.371920351148152


def expm(a):
    """Matrix exponential by scaling and squaring around a [13/13] Pade core."""
    a = as_matrix(a)
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("expm needs a square matrix")
    norm = np.linalg.norm(a, 1)
    s = 0
    if norm > _THETA13:
        s = int(math.ceil(math.log2(norm / _THETA13)))
    a = a / (2.0 ** s)

    b = _PADE13
    eye = np.eye(n, dtype=complex)
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a4 @ a2
    u = a @ (a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
             + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * eye)
    v = (a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
         + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * eye)
    r = np.linalg.solve(v - u, v + u)
    for _ in range(s):
        r = r @ r
    return r


def expm_unitary(h, t, tol=DEFAULT_TOL):
    """Return ``exp(-i h t)`` for Hermitian ``h`` (hbar = 1)."""
    h = as_matrix(h)
    if not is_hermitian(h, tol):
        raise NonHermitianInput("generator is not Hermitian within tolerance")
    if t == 0:
        return np.eye(h.shape[0], dtype=complex)
    return expm(-1j * float(t) * h)


def eigvals_general(m):
    """All eigenvalues of a square (possibly non-normal) complex matrix.

    Backed by LAPACK's Hessenberg reduction plus shifted QR (``zgeev``).
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("eigvals_general needs a square matrix")
    if not np.all(np.isfinite(a)):
        raise ConvergenceFailure("matrix has non-finite entries")
    try:
        return np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
