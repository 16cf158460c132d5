"""Write the CSV series for the four Jaynes-Cummings scenarios.

Usage: python3 scripts/reproduce_figures.py [OUTDIR] [--oracle]
"""

import argparse
import math
import pathlib
import sys

from qtransfer.cli import ScenarioConfig, run

SCENARIOS = {
    # symmetric couplings, anti-correlated seed
    "psi_symmetric": dict(state="psi", alpha=math.pi / 6),
    # unequal couplings, time in units of the mean coupling
    "psi_unequal_g": dict(state="psi", alpha=math.pi / 4, g_a=2.0, g_b=1.0),
    # correlated seed at three seed angles
    "phi_alpha_pi4": dict(state="phi", alpha=math.pi / 4),
    "phi_alpha_pi6": dict(state="phi", alpha=math.pi / 6),
    "phi_alpha_pi12": dict(state="phi", alpha=math.pi / 12),
    # detuned and damped
    "psi_damped": dict(state="psi", alpha=math.pi / 4, delta_a=2.0, delta_b=2.0, gamma=0.3),
}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("outdir", nargs="?", default="figures_out")
    p.add_argument("--oracle", action="store_true")
    args = p.parse_args(argv)
    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    status = 0
    for name, params in SCENARIOS.items():
        res = run(ScenarioConfig(**params, oracle=args.oracle))
        (out / f"{name}.csv").write_text(res.csv_text())
        print(f"== {name}\n{res.summary()}")
        status = max(status, res.exit_code)
    return status


if __name__ == "__main__":
    sys.exit(main())
