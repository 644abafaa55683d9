"""Monte Carlo detector-angle scan: conditional left-arm frequency vs closed form.

    python scripts/detector_scan.py --qk 0.1 --trials 200000 --seed 7
"""
import argparse
import math

import numpy as np

from abflux import Coupling, make_cylinder, run_trials


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--qk", type=float, default=0.1)
    ap.add_argument("--trials", type=int, default=200_000)
    ap.add_argument("--points", type=int, default=9)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    xi, phi = make_cylinder(0, [1, 1]), make_cylinder(0, [1, 1j])
    c = Coupling(1, args.qk)
    print(f"{'theta':>8} {'freq':>10} {'exact':>10} {'analytic':>10} {'z':>7}")
    for k, theta in enumerate(np.linspace(0, math.pi, args.points)):
        res = run_trials(xi, phi, c, theta, args.trials, master_seed=args.seed + k)
        print(
            f"{theta:8.4f} {res.conditional_frequency:10.6f} {res.exact_target:10.6f} "
            f"{res.analytic_target:10.6f} {res.z_score():+7.2f}"
        )


if __name__ == "__main__":
    main()
