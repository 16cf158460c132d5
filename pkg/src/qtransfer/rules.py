"""Checks of the entanglement sum rules on sector states.

Every checker returns a ``RuleReport``. Equality rules pass when
``|lhs - rhs| <= tol``; inequality rules pass when ``lhs <= rhs + tol``.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_TOL
from .entanglement import (
    Partition,
    concurrence_pair,
    concurrence_partition_psi,
    concurrence_single_to_site_phi,
    concurrence_site_to_single,
    pair_concurrences,
)
from .sector import PhiSectorState, PsiSectorState, global_concurrence


class WrongSector(TypeError):
    pass


class WrongShape(ValueError):
    pass


@dataclass(frozen=True)
class RuleReport:
    rule: str
    lhs: float
    rhs: float
    residual: float
    passed: bool
    t: float | None = None

    CSV_HEADER = "rule,t,lhs,rhs,residual,passed"

    def csv_row(self):
        t = "" if self.t is None else f"{self.t:.12g}"
        return (f"{self.rule},{t},{self.lhs:.12g},{self.rhs:.12g},"
                f"{self.residual:.12g},{int(self.passed)}")

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        at = "" if self.t is None else f" at t={self.t:.6g}"
        return (f"[{status}] {self.rule}{at}: lhs={self.lhs:.12g} "
                f"rhs={self.rhs:.12g} residual={self.residual:.3g}")


def equality_report(rule, lhs, rhs, tol, t):
    residual = abs(lhs - rhs)
    return RuleReport(rule, float(lhs), float(rhs), float(residual), bool(residual <= tol), t)


def inequality_report(rule, lhs, rhs, tol, t):
    # residual > 0 measures the violation
    residual = lhs - rhs
    return RuleReport(rule, float(lhs), float(rhs), float(residual), bool(residual <= tol), t)


def sspc(state):
    """Sum of squared pairwise nonlocal concurrences."""
    return float(np.sum(pair_concurrences(state) ** 2))


def check_theorem1(state, tol=DEFAULT_TOL, t=None):
    """SSPC equals C_AB^2 for the anti-correlated seed."""
    if not isinstance(state, PsiSectorState):
        raise WrongSector("the SSPC conservation rule applies to Psi states")
    return equality_report("theorem1", sspc(state), global_concurrence(state) ** 2, tol, t)


def check_theorem2(state, tol=DEFAULT_TOL, t=None):
    """0 <= SSPC <= C_AB^2 for the correlated seed."""
    if not isinstance(state, PhiSectorState):
        raise WrongSector("the SSPC upper bound is stated for Phi states")
    return inequality_report("theorem2", sspc(state), global_concurrence(state) ** 2, tol, t)


def one_sided_sum(state, tol=DEFAULT_TOL):
    """Sum over b_J of the squared concurrence between all of A and b_J."""
    return float(sum(concurrence_site_to_single(state, j, tol) ** 2
                     for j in range(1, state.n_b + 1)))


def check_one_sided_sum(state, tol=DEFAULT_TOL, t=None):
    return equality_report("one_sided_sum", one_sided_sum(state, tol),
                           global_concurrence(state) ** 2, tol, t)


def check_ckw(cab, parts, tol=DEFAULT_TOL, t=None):
    """Monogamy bound: sum of squared parts does not exceed ``cab**2``."""
    lhs = float(np.sum(np.square(np.asarray(parts, dtype=float))))
    return inequality_report("ckw", lhs, cab ** 2, tol, t)


def check_damped_sum(sspc_damped, cab0, t, damping, tol=DEFAULT_TOL):
    """Damped SSPC against ``(C_AB(0) exp(-kappa t))**2``.

    Only holds for ``kappa == gamma``; other choices of ``kappa`` fail on
    purpose.
    """
    rhs = (cab0 * float(damping.global_envelope(t))) ** 2
    return equality_report("damped_sum", sspc_damped, rhs, tol, t)


def check_global_invariance(state, cab0, tol=DEFAULT_TOL, t=None):
    return equality_report("global_invariance", global_concurrence(state), cab0, tol, t)


def yonac_sum(state):
    """C_11 + C_22 for a 2+2 Psi state.

    This linear sum is a diagnostic only. It is constant for the symmetric
    resonant Jaynes-Cummings model but not for general local dynamics.
    """
    if not isinstance(state, PsiSectorState):
        raise WrongSector("the linear sum is defined for Psi states")
    if (state.n_a, state.n_b) != (2, 2):
        raise WrongShape("the linear sum needs two qubits per site")
    return concurrence_pair(state, 1, 1) + concurrence_pair(state, 2, 2)


def three_tangle_phi(state, i=1, tol=DEFAULT_TOL):
    """Residual tangle ``C_{a_i B}^2 - C_{i1}^2 - C_{i2}^2`` on a 2+2 Phi state."""
    if not isinstance(state, PhiSectorState):
        raise WrongSector("expected a Phi state")
    if (state.n_a, state.n_b) != (2, 2):
        raise WrongShape("three_tangle_phi needs two qubits per site")
    whole = concurrence_single_to_site_phi(state, i, tol) ** 2
    return whole - concurrence_pair(state, i, 1) ** 2 - concurrence_pair(state, i, 2) ** 2


def three_tangle_psi(state, subset_a=None):
    """``C_{S(B)}^2 - sum_J C_{S b_J}^2`` for a Psi state; S defaults to all of A."""
    if not isinstance(state, PsiSectorState):
        raise WrongSector("expected a Psi state")
    if subset_a is None:
        subset_a = range(1, state.n_a + 1)
    whole = concurrence_partition_psi(state, Partition(subset_a, range(1, state.n_b + 1)))
    parts = [concurrence_partition_psi(state, Partition(subset_a, [j]))
             for j in range(1, state.n_b + 1)]
    return whole ** 2 - sum(p ** 2 for p in parts)
