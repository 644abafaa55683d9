"""Tabulate the post-selected ring density for several tilts as CSV on stdout.

    python scripts/ring_tilt.py --alphas -1 0 0.5 1 --points 201 > ring.csv
"""
import argparse
import csv
import math
import sys

import numpy as np

from abflux.ring import RingDistribution


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alphas", type=float, nargs="+", default=[-1.0, 0.0, 0.5, 1.0])
    ap.add_argument("--points", type=int, default=201)
    args = ap.parse_args()

    thetas = np.linspace(0, 2 * math.pi, args.points)
    dists = [RingDistribution(a) for a in args.alphas]
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["theta"] + [f"density_alpha_{a:g}" for a in args.alphas])
    cols = [d.density(thetas) for d in dists]
    for i, t in enumerate(thetas):
        w.writerow([f"{t:.17g}"] + [f"{col[i]:.17g}" for col in cols])


if __name__ == "__main__":
    main()
