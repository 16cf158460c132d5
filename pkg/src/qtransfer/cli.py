"""``simulate``: sweep a scenario over time and emit squared concurrences as CSV.

Exit codes: 0 when every applicable rule (and oracle comparison) passes,
1 on usage or configuration errors, 2 when some check fails.
"""

import argparse
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .dynamics import (
    DampingParams,
    JCParams,
    evolve,
    generic_propagator,
    jc_propagator,
    load_hamiltonian,
)
from .entanglement import concurrence_site_to_single, pair_concurrences
from .linalg import DEFAULT_TOL
from .rules import RuleReport, equality_report, inequality_report
from .sector import BellKind, BellParams, dump_state, make_bell


class UsageError(Exception):
    pass


@dataclass
class ScenarioConfig:
    state: BellKind = BellKind.PSI
    alpha: float = math.pi / 4
    beta: float = 0.0
    n_a: int = 2
    n_b: int = 2
    model: str = "jc"
    g_a: float = 1.0
    g_b: float = 1.0
    delta_a: float = 0.0
    delta_b: float = 0.0
    gamma: float = 0.0
    t_max: float = 12.0
    steps: int = 500
    oracle: bool = False
    tol: float = DEFAULT_TOL
    out: str | None = None
    dump_state: str | None = None
    report: str | None = None
    h_a: np.ndarray | None = field(default=None, repr=False)
    h_b: np.ndarray | None = field(default=None, repr=False)

    def check(self):
        self.state = BellKind(self.state)
        if self.steps < 2:
            raise UsageError(f"--steps must be at least 2, got {self.steps}")
        if not self.t_max > 0:
            raise UsageError(f"--tmax must be positive, got {self.t_max}")
        if not 0.0 <= self.alpha <= math.pi / 2 + 1e-15:
            raise UsageError(f"--alpha must lie in [0, pi/2], got {self.alpha}")
        if self.gamma < 0:
            raise UsageError("--gamma must be non-negative")
        if self.g_a < 0 or self.g_b < 0:
            raise UsageError("--ga and --gb must be non-negative")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.model == "jc":
            if (self.n_a, self.n_b) != (2, 2):
                raise UsageError("the jc model has exactly two qubits per site (atom, cavity)")
        elif self.model == "custom":
            if self.h_a is None or self.h_b is None:
                raise UsageError("--model custom needs --ha and --hb")
            if self.n_a + self.n_b > oracle.MAX_QUBITS and self.oracle:
                raise UsageError(f"--oracle supports at most {oracle.MAX_QUBITS} qubits")
        else:
            raise UsageError(f"unknown model {self.model!r}")
        return self

    @property
    def g_mean(self):
        g = 0.5 * (self.g_a + self.g_b)
        return g if g > 0 else 1.0

    def hamiltonians(self):
        if self.model == "jc":
            return JCParams(self.g_a, self.g_b, self.delta_a, self.delta_b).hamiltonians()
        return self.h_a, self.h_b

    def propagators(self, t):
        if self.model == "jc":
            return (jc_propagator(self.g_a, self.delta_a, t),
                    jc_propagator(self.g_b, self.delta_b, t))
        return generic_propagator(self.h_a, t), generic_propagator(self.h_b, t)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="simulate", description=__doc__.splitlines()[0])
    p.add_argument("--state", choices=["psi", "phi"], default="psi")
    p.add_argument("--alpha", type=float, default=math.pi / 4)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--na", type=int, default=None)
    p.add_argument("--nb", type=int, default=None)
    p.add_argument("--model", choices=["jc", "custom"], default="jc")
    p.add_argument("--ga", type=float, default=1.0)
    p.add_argument("--gb", type=float, default=1.0)
    p.add_argument("--da", type=float, default=0.0)
    p.add_argument("--db", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--tmax", type=float, default=12.0, help="end time in units of 1/g, g = (ga+gb)/2")
    p.add_argument("--steps", type=int, default=500)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out", default=None, help="CSV path (stdout if omitted)")
    p.add_argument("--oracle", action="store_true", help="add brute-force columns and compare")
    p.add_argument("--dump-state", default=None, help="write the final sector state here")
    p.add_argument("--report", default=None, help="write every rule report as CSV here")
    p.add_argument("--ha", default=None, help="custom site-A Hamiltonian file")
    p.add_argument("--hb", default=None, help="custom site-B Hamiltonian file")
    return p


def parse_args(argv):
    argv = list(argv)
    if argv and argv[0] == "simulate":
        argv = argv[1:]
    ns = build_parser().parse_args(argv)
    h_a = h_b = None
    if ns.model == "custom":
        if ns.ha is None or ns.hb is None:
            raise UsageError("--model custom needs --ha and --hb")
        try:
            h_a = load_hamiltonian(ns.ha)
            h_b = load_hamiltonian(ns.hb)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot load Hamiltonian: {exc}") from None
        n_a, n_b = h_a.shape[0], h_b.shape[0]
        if (ns.na is not None and ns.na != n_a) or (ns.nb is not None and ns.nb != n_b):
            raise UsageError("--na/--nb disagree with the Hamiltonian file dimensions")
    else:
        n_a = 2 if ns.na is None else ns.na
        n_b = 2 if ns.nb is None else ns.nb
    cfg = ScenarioConfig(
        state=BellKind(ns.state), alpha=ns.alpha, beta=ns.beta, n_a=n_a, n_b=n_b,
        model=ns.model, g_a=ns.ga, g_b=ns.gb, delta_a=ns.da, delta_b=ns.db,
        gamma=ns.gamma, t_max=ns.tmax, steps=ns.steps, oracle=ns.oracle, tol=ns.tol,
        out=ns.out, dump_state=ns.dump_state, report=ns.report, h_a=h_a, h_b=h_b,
    )
    return cfg.check()


def csv_header(n_a, n_b, with_oracle=False):
    conc = [f"c_{i}_{j}2" for i in range(1, n_a + 1) for j in range(1, n_b + 1)]
    conc += [f"cA_b{j}2" for j in range(1, n_b + 1)]
    cols = ["t", "cab2", "sspc", "yonac"] + conc
    if with_oracle:
        cols += [f"{c}_orc" for c in conc]
    return cols


def _fmt(v):
    if v is None:
        return ""
    return f"{float(v) + 0.0:.12g}"


@dataclass
class ScenarioResult:
    header: list
    rows: list
    reports: list
    final_state: object

    @property
    def failures(self):
        return [r for r in self.reports if not r.passed]

    @property
    def exit_code(self):
        return 2 if self.failures else 0

    def column(self, name):
        k = self.header.index(name)
        return np.array([np.nan if r[k] is None else r[k] for r in self.rows])

    def csv_text(self):
        lines = [",".join(self.header)]
        lines += [",".join(_fmt(v) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    def summary(self):
        by_rule = {}
        for r in self.reports:
            by_rule.setdefault(r.rule, []).append(r)
        out = []
        for rule, reps in by_rule.items():
            res = [r.residual for r in reps]
            bad = sum(not r.passed for r in reps)
            out.append(f"{rule}: {len(reps)} checks, residual min {min(res):.3g} "
                       f"max {max(res):.3g}, {bad} failed")
        out.append("status: " + ("FAIL" if self.failures else "PASS"))
        return "\n".join(out)


def run(config):
    """Evaluate a scenario on its time grid (no file I/O)."""
    cfg = config.check()
    params = BellParams(cfg.state, cfg.alpha, cfg.beta, cfg.n_a, cfg.n_b)
    seed = make_bell(params)
    cab0 = params.global_concurrence
    damping = DampingParams(cfg.gamma)
    psi = cfg.state is BellKind.PSI
    with_yonac = psi and (cfg.n_a, cfg.n_b) == (2, 2)
    h_a, h_b = cfg.hamiltonians()
    full_seed = oracle.embed(seed) if cfg.oracle else None

    rows, reports = [], []
    state = seed
    for gt in np.linspace(0.0, cfg.t_max, cfg.steps):
        gt = float(gt)
        t = gt / cfg.g_mean
        ua, ub = cfg.propagators(t)
        state = evolve(seed, ua, ub)
        env = float(damping.envelope(t))
        cab2 = (cab0 * float(damping.global_envelope(t))) ** 2

        pairs = pair_concurrences(state) * env
        # the rank-1 guard uses its own tolerance; --tol only judges the rules
        sides = np.array([concurrence_site_to_single(state, j)
                          for j in range(1, cfg.n_b + 1)]) * env
        sspc = float(np.sum(pairs ** 2))
        side_sum = float(np.sum(sides ** 2))
        yonac = float(pairs[0, 0] + pairs[1, 1]) if with_yonac else None
        conc2 = list((pairs ** 2).ravel()) + list(sides ** 2)

        if psi:
            reports.append(equality_report("theorem1", sspc, cab2, cfg.tol, gt))
        else:
            reports.append(inequality_report("theorem2", sspc, cab2, cfg.tol, gt))
        reports.append(equality_report("one_sided_sum", side_sum, cab2, cfg.tol, gt))

        row = [gt, cab2, sspc, yonac] + conc2
        if cfg.oracle:
            full = oracle.evolve_full(full_seed, h_a, h_b, t)
            orc = [oracle.pair_concurrence(full, i, j) * env
                   for i in range(1, cfg.n_a + 1) for j in range(1, cfg.n_b + 1)]
            orc += [oracle.site_to_single_concurrence(full, j) * env
                    for j in range(1, cfg.n_b + 1)]
            orc2 = [v ** 2 for v in orc]
            worst = max(abs(a - b) for a, b in zip(conc2, orc2))
            reports.append(RuleReport("oracle", worst, 0.0, worst, worst <= cfg.tol, gt))
            row += orc2
        rows.append(row)

    header = csv_header(cfg.n_a, cfg.n_b, cfg.oracle)
    return ScenarioResult(header, rows, reports, state)


def _write(path, text):
    with open(path, "w", newline="") as fh:
        fh.write(text)


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    try:
        cfg = parse_args(argv)
        result = run(cfg)
    except UsageError as exc:
        print(f"simulate: error: {exc}", file=sys.stderr)
        build_parser().print_usage(sys.stderr)
        return 1

    text = result.csv_text()
    if cfg.out:
        _write(cfg.out, text)
    else:
        sys.stdout.write(text)
    if cfg.dump_state:
        _write(cfg.dump_state, dump_state(result.final_state))
    if cfg.report:
        _write(cfg.report, "\n".join([RuleReport.CSV_HEADER]
                                     + [r.csv_row() for r in result.reports]) + "\n")
    print(result.summary(), file=sys.stderr)
    return result.exit_code
