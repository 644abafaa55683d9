"""How fast the exact post-selected charge approaches the weak-value description.

For a pre/post pair, halve qK repeatedly and report
  * |a_R/a_L - exp(i qK wv)|          (relative amplitude at the full loop)
  * max_theta |pL_exact - pL_analytic| (arm probability over the detector angle)
together with fitted log-log slopes.

    python scripts/convergence_study.py --pre 1,0 1,0 --post 1,0 0,1
"""
import argparse
import math

import numpy as np

from abflux import Coupling, PathAmplitudes, analytic_pL, encircle, make_cylinder, postselect_exact, tensor
from abflux.weakvalues import weak_value_P_eta


def parse_amps(tokens):
    return [complex(*map(float, t.split(","))) for t in tokens]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pre", nargs="+", default=["1,0", "1,0"], help="re,im pairs")
    ap.add_argument("--post", nargs="+", default=["1,0", "0,1"], help="re,im pairs")
    ap.add_argument("--j-min", type=int, default=0)
    ap.add_argument("--qk-start", type=float, default=0.4)
    ap.add_argument("--halvings", type=int, default=6)
    args = ap.parse_args()

    xi = make_cylinder(args.j_min, parse_amps(args.pre))
    phi = make_cylinder(args.j_min, parse_amps(args.post))
    wv = weak_value_P_eta(xi, phi).wv
    print(f"weak value = {wv.real:+.6f} {wv.imag:+.6f}i")
    start = tensor(PathAmplitudes.balanced(), xi)
    thetas = np.linspace(0, math.pi, 65)

    qks, amp_err, pl_err = [], [], []
    qK = args.qk_start
    print(f"{'qK':>10} {'|ratio err|':>14} {'max pL err':>14}")
    for _ in range(args.halvings):
        c = Coupling(1, qK)
        alpha = weak_value_P_eta(xi, phi, c).alpha
        ps = postselect_exact(encircle(start, c, math.pi), phi)
        e1 = abs(ps.relative_amplitude - np.exp(1j * qK * wv))
        e2 = max(abs(postselect_exact(encircle(start, c, t), phi).p_left - analytic_pL(alpha, t)) for t in thetas)
        print(f"{qK:10.5f} {e1:14.6e} {e2:14.6e}")
        qks.append(qK), amp_err.append(e1), pl_err.append(e2)
        qK /= 2
    for name, errs in (("ratio", amp_err), ("pL", pl_err)):
        slope = np.polyfit(np.log(qks), np.log(errs), 1)[0]
        print(f"log-log slope ({name}): {slope:.3f}")


if __name__ == "__main__":
    main()
