"""Command-line driver: ``abflux {weakvalue,sweep-theta,montecarlo,ring} --config run.json``.

Exit codes: 0 success, 2 configuration error, 3 orthogonal post-selection.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig, ThetaGrid, config_from_dict, load_config
from .dynamics import encircle, visibility
from .errors import AbfluxError, OrthogonalPostSelection
from .hilbert import PathAmplitudes, tensor
from .postselect import analytic_pL, analytic_pR, postselect_exact, run_trials
from .ring import TWO_PI, p_final, p_initial
from .weakvalues import WeakSource, effective_vector_potential, weak_value_P_eta

EXIT_OK, EXIT_CONFIG, EXIT_PHYSICS = 0, 2, 3

SWEEP_HEADER = ["theta", "p_l_analytic", "p_l_exact", "p_r_analytic", "visibility"]
RING_HEADER = ["theta", "p_i", "p_f", "ratio"]
WEAKVALUE_HEADER = [
    "wv_re", "wv_im", "alpha", "overlap_sq", "regime_margin", "weak_margin", "expectation", "A_re", "A_im",
]
MONTECARLO_HEADER = [
    "n", "successes", "left_and_success", "conditional_frequency", "wilson_low", "wilson_high",
    "analytic_target", "exact_target", "z_score", "alpha", "pre_filter_left_frequency", "theta",
    "master_seed",
]


def _grid(cfg: RunConfig, upper: float, what: str) -> np.ndarray:
    grid = cfg.theta_grid or ThetaGrid(0.0, upper, 33)
    if grid.steps < 1:
        raise ConfigError("theta_grid is empty")
    if not (0.0 <= grid.start <= upper and 0.0 <= grid.stop <= upper):
        raise ConfigError(f"theta_grid must lie within [0, {upper!r}] for {what}")
    return grid.values()


def _alpha(cfg: RunConfig) -> float:
    if cfg.alpha_override is not None:
        return float(cfg.alpha_override)
    return weak_value_P_eta(cfg.pre(), cfg.post(), cfg.coupling_obj()).alpha


def cmd_weakvalue(cfg: RunConfig) -> dict:
    c = cfg.coupling_obj()
    xi, phi = cfg.pre(), cfg.post()
    rep = weak_value_P_eta(xi, phi, c)
    A = effective_vector_potential(WeakSource(xi, phi), c, 1.0)
    return {
        "wv_re": rep.wv.real,
        "wv_im": rep.wv.imag,
        "alpha": rep.alpha if cfg.alpha_override is None else float(cfg.alpha_override),
        "overlap_sq": rep.success_probability,
        "regime_margin": rep.regime_margin,
        "weak_margin": rep.weak_margin,
        "expectation": rep.expectation,
        "A_re": A.real,
        "A_im": A.imag,
    }


def cmd_sweep_theta(cfg: RunConfig) -> list[dict]:
    thetas = _grid(cfg, math.pi, "arm sweeps")
    c = cfg.coupling_obj()
    xi, phi = cfg.pre(), cfg.post()
    alpha = _alpha(cfg)
    start = tensor(PathAmplitudes.balanced(), xi)
    rows = []
    for th in thetas:
        state = encircle(start, c, float(th))
        rows.append(
            {
                "theta": float(th),
                "p_l_analytic": analytic_pL(alpha, float(th)),
                "p_l_exact": postselect_exact(state, phi).p_left,
                "p_r_analytic": analytic_pR(alpha, float(th)),
                "visibility": visibility(state),
            }
        )
    return rows


def cmd_montecarlo(cfg: RunConfig, threads: int | None = None, theta: float | None = None):
    """Returns (summary, result); the detector sits at ``theta`` (default: grid stop)."""
    if cfg.trials < 1:
        raise ConfigError("trials must be >= 1")
    if theta is None:
        theta = (cfg.theta_grid or ThetaGrid()).stop
    if not 0.0 <= theta <= math.pi:
        raise ConfigError("montecarlo detector angle must lie within [0, pi]")
    res = run_trials(cfg.pre(), cfg.post(), cfg.coupling_obj(), theta, cfg.trials, cfg.master_seed, threads)
    target = res.analytic_target if cfg.alpha_override is None else analytic_pL(cfg.alpha_override, theta)
    lo, hi = res.wilson_interval()
    summary = {
        "n": res.n,
        "successes": res.successes,
        "left_and_success": res.left_and_success,
        "conditional_frequency": res.conditional_frequency,
        "wilson_low": lo,
        "wilson_high": hi,
        "analytic_target": target,
        "exact_target": res.exact_target,
        "z_score": res.z_score(target),
        "alpha": res.alpha if cfg.alpha_override is None else float(cfg.alpha_override),
        "pre_filter_left_frequency": res.left_frequency,
        "theta": float(theta),
        "master_seed": res.master_seed,
    }
    return summary, res


def cmd_ring(cfg: RunConfig) -> dict:
    thetas = _grid(cfg, TWO_PI, "ring sweeps")
    alpha = _alpha(cfg)
    eps = float(cfg.epsilon)
    if not eps > 0:
        raise ConfigError("epsilon must be positive")
    rows = []
    for th in thetas:
        pi_, pf = p_initial(float(th), eps), p_final(float(th), eps, alpha)
        rows.append({"theta": float(th), "p_i": pi_, "p_f": pf, "ratio": pf / pi_ if pi_ > 0 else math.nan})
    full_i, full_f = p_initial(math.pi, math.pi), p_final(math.pi, math.pi, alpha)
    return {
        "alpha": alpha,
        "epsilon": eps,
        "rows": rows,
        "full_ring": {"theta": "total", "p_i": full_i, "p_f": full_f, "ratio": full_f / full_i},
    }


# -- formatting ---------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def to_csv(header: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(row[k]) for k in header])
    return buf.getvalue()


def to_json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def render(command: str, payload, fmt: str) -> str:
    if fmt == "json":
        return to_json(payload)
    if command == "weakvalue":
        return to_csv(WEAKVALUE_HEADER, [payload])
    if command == "sweep-theta":
        return to_csv(SWEEP_HEADER, payload)
    if command == "montecarlo":
        return to_csv(MONTECARLO_HEADER, [payload])
    if command == "ring":
        return to_csv(RING_HEADER, payload["rows"] + [payload["full_ring"]])
    raise ValueError(command)


def dump_trials(res, path: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("trial_index,left_detector_fired,postselect_succeeded,seed\n")
        for i in range(res.n):
            fh.write(f"{i},{int(res.left[i])},{int(res.success[i])},{int(res.seeds[i])}\n")


# -- argument handling --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="abflux", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("weakvalue", "sweep-theta", "montecarlo", "ring"):
        s = sub.add_parser(name)
        s.add_argument("--config", help="JSON run configuration")
        s.add_argument("--q", type=float)
        s.add_argument("--K", type=float)
        s.add_argument("--hbar", type=float)
        s.add_argument("--theta-start", type=float)
        s.add_argument("--theta-stop", type=float)
        s.add_argument("--theta-steps", type=int)
        s.add_argument("--trials", type=int)
        s.add_argument("--master-seed", type=int)
        s.add_argument("--epsilon", type=float)
        s.add_argument("--alpha-override", type=float)
        s.add_argument("--output-path")
        s.add_argument("--output-format", choices=["csv", "json"])
        if name == "montecarlo":
            s.add_argument("--theta", type=float, help="detector angle (default: theta_grid stop)")
            s.add_argument("--threads", type=int, help="worker threads (default: $ABFLUX_THREADS)")
            s.add_argument("--dump-trials", help="write per-trial records as CSV here")
    return p


def apply_overrides(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    for key in ("q", "K", "hbar"):
        if getattr(args, key) is not None:
            setattr(cfg.coupling, key, getattr(args, key))
    if any(getattr(args, f"theta_{k}") is not None for k in ("start", "stop", "steps")):
        grid = cfg.theta_grid or ThetaGrid(0.0, TWO_PI if args.command == "ring" else math.pi)
        for k in ("start", "stop", "steps"):
            if getattr(args, f"theta_{k}") is not None:
                setattr(grid, k, getattr(args, f"theta_{k}"))
        cfg.theta_grid = grid
    for key in ("trials", "master_seed", "epsilon", "alpha_override", "output_path", "output_format"):
        if getattr(args, key) is not None:
            setattr(cfg, key, getattr(args, key))
    return cfg


def run(args: argparse.Namespace, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        cfg = load_config(args.config) if args.config else config_from_dict({})
        cfg = apply_overrides(cfg, args)
        if args.command == "weakvalue":
            payload = cmd_weakvalue(cfg)
        elif args.command == "sweep-theta":
            payload = cmd_sweep_theta(cfg)
        elif args.command == "ring":
            payload = cmd_ring(cfg)
        else:
            payload, res = cmd_montecarlo(cfg, threads=args.threads, theta=args.theta)
            if args.dump_trials:
                dump_trials(res, args.dump_trials)
        text = render(args.command, payload, cfg.output_format)
    except OrthogonalPostSelection as exc:
        print(f"abflux: orthogonal post-selection: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except (ConfigError, AbfluxError) as exc:
        print(f"abflux: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out.write(text)
    if cfg.output_path:
        Path(cfg.output_path).write_text(text)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
