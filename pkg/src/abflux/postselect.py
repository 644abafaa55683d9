"""Post-selection of the cylinder: exact projection, weak-value approximation,
the closed-form arm probabilities and the detector-then-postselect Monte Carlo.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.special import expit
from statsmodels.stats.proportion import proportion_confint

from .dynamics import EncircleAngle, _as_angle, encircle
from .errors import OrthogonalPostSelection
from .hilbert import LEFT, RIGHT, Coupling, CylinderState, JointState, PathAmplitudes, tensor
from .streams import trial_seeds, uniforms
from .weakvalues import ORTHOGONALITY_TOL, weak_value_P_eta


@dataclass(frozen=True)
class PostselectedCharge:
    a_L: complex
    a_R: complex
    success_prob: float
    exact: bool

    @property
    def p_left(self) -> float:
        return abs(self.a_L) ** 2

    @property
    def p_right(self) -> float:
        return abs(self.a_R) ** 2

    @property
    def relative_amplitude(self) -> complex:
        """a_R / a_L."""
        return self.a_R / self.a_L


def project_cylinder(state: JointState, phi: CylinderState) -> np.ndarray:
    """Unnormalized charge amplitudes <phi|_cyl |state>, shape (2,)."""
    lo = min(state.j_min, phi.j_min)
    hi = max(state.j_min + state.size - 1, phi.j_max)
    amps = np.zeros((2, hi - lo + 1), dtype=complex)
    amps[:, state.j_min - lo : state.j_min - lo + state.size] = state.amps
    return amps @ phi.padded(lo, hi).conj()


def postselect_exact(state: JointState, phi: CylinderState) -> PostselectedCharge:
    proj = project_cylinder(state, phi)
    success = float(np.sum(np.abs(proj) ** 2))
    if math.sqrt(success) <= ORTHOGONALITY_TOL:
        raise OrthogonalPostSelection(f"projected norm {math.sqrt(success):.3e} is numerically zero")
    a = proj / math.sqrt(success)
    return PostselectedCharge(complex(a[LEFT]), complex(a[RIGHT]), min(success, 1.0), True)


def postselect_weak_approx(
    xi: CylinderState, phi: CylinderState, c: Coupling, theta: EncircleAngle | float
) -> PostselectedCharge:
    """Charge state when the cylinder acts through the weak value alone.

    Left arm ~ exp(-i qK wv theta / 2 pi hbar), right arm the inverse, so that
    a_R / a_L = exp(i qK wv theta / (pi hbar)).  The success probability is the
    matching first-order estimate |<phi|xi>|^2 (|a_L|^2 + |a_R|^2) / 2 of the
    unnormalized amplitudes, capped at 1.
    """
    th = _as_angle(theta).theta
    rep = weak_value_P_eta(xi, phi, c)
    z = 1j * c.qK * rep.wv * th / (2 * math.pi * c.hbar)
    logs = np.array([-z, z])
    shift = np.max(logs.real)
    amps = np.exp(logs - shift)
    n2 = float(np.sum(np.abs(amps) ** 2))
    a = amps / math.sqrt(n2)
    success = rep.success_probability * n2 * math.exp(2 * shift) / 2
    return PostselectedCharge(complex(a[0]), complex(a[1]), min(success, 1.0), False)


def analytic_pL(alpha, theta):
    """exp(a t) / (exp(a t) + exp(-a t)) in logistic form; vectorized."""
    out = expit(2.0 * np.multiply(alpha, theta))
    return float(out) if np.ndim(out) == 0 else out


def analytic_pR(alpha, theta):
    return analytic_pL(-np.asarray(alpha, dtype=float), theta)


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    left_detector_fired: bool
    postselect_succeeded: bool
    seed: int


def default_threads() -> int:
    env = os.environ.get("ABFLUX_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


@dataclass(frozen=True, eq=False)
class MonteCarloResult:
    """Per-trial outcomes (as arrays) plus the exact and analytic targets."""

    master_seed: int
    seeds: np.ndarray
    left: np.ndarray
    success: np.ndarray
    exact_target: float
    analytic_target: float
    alpha: float
    confidence: float = 0.95

    @property
    def n(self) -> int:
        return int(self.left.size)

    @cached_property
    def records(self) -> list[TrialRecord]:
        return [
            TrialRecord(i, bool(l), bool(s), int(sd))
            for i, (l, s, sd) in enumerate(zip(self.left, self.success, self.seeds))
        ]

    @property
    def successes(self) -> int:
        return int(np.count_nonzero(self.success))

    @property
    def left_and_success(self) -> int:
        return int(np.count_nonzero(self.left & self.success))

    @property
    def left_frequency(self) -> float:
        """Detector marginal before any filtering."""
        return float(np.count_nonzero(self.left)) / self.n

    @property
    def conditional_frequency(self) -> float:
        return self.left_and_success / self.successes if self.successes else math.nan

    def wilson_interval(self) -> tuple[float, float]:
        if not self.successes:
            return (0.0, 1.0)
        lo, hi = proportion_confint(
            self.left_and_success, self.successes, alpha=1 - self.confidence, method="wilson"
        )
        return float(lo), float(hi)

    def standard_error(self, p: float | None = None) -> float:
        p = self.analytic_target if p is None else p
        return math.sqrt(p * (1 - p) / self.successes) if self.successes else math.inf

    def z_score(self, target: float | None = None) -> float:
        target = self.analytic_target if target is None else target
        se = self.standard_error(target)
        return (self.conditional_frequency - target) / se if se > 0 else 0.0


def _sample_chunk(master_seed, start, stop, p_left, p_success_given):
    seeds = trial_seeds(master_seed, np.arange(start, stop, dtype=np.uint64))
    u = uniforms(seeds, 2)
    left = u[:, 0] < p_left
    success = u[:, 1] < np.where(left, p_success_given[LEFT], p_success_given[RIGHT])
    return seeds, left, success


def run_trials(
    xi: CylinderState,
    phi: CylinderState,
    c: Coupling,
    theta: EncircleAngle | float,
    n: int,
    master_seed: int,
    threads: int | None = None,
    chunk_size: int = 1 << 16,
) -> MonteCarloResult:
    """Repeat: encircle to theta, click the left detector or not, then measure
    the cylinder with {|phi><phi|, 1 - |phi><phi|}.

    Both measurements are sampled from exact Born probabilities of the joint
    state.  Trial i draws only from the stream keyed by (master_seed, i).
    """
    if n < 1:
        raise ValueError("need at least one trial")
    th = _as_angle(theta).theta
    state = encircle(tensor(PathAmplitudes.balanced(), xi), c, th)
    w_left, w_right = state.arm_weights()
    proj = project_cylinder(state, phi)
    weights = np.array([w_left, w_right])
    p_success_given = np.where(weights > 0, np.abs(proj) ** 2 / np.where(weights > 0, weights, 1), 0.0)

    bounds = [(s, min(s + chunk_size, n)) for s in range(0, n, chunk_size)]
    threads = threads or default_threads()
    job = lambda b: _sample_chunk(master_seed, b[0], b[1], w_left, p_success_given)  # noqa: E731
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(job, bounds))
    else:
        parts = [job(b) for b in bounds]

    exact = postselect_exact(state, phi)
    alpha = weak_value_P_eta(xi, phi, c).alpha
    return MonteCarloResult(
        master_seed=int(master_seed),
        seeds=np.concatenate([p[0] for p in parts]),
        left=np.concatenate([p[1] for p in parts]),
        success=np.concatenate([p[2] for p in parts]),
        exact_target=exact.p_left,
        analytic_target=analytic_pL(alpha, th),
        alpha=alpha,
    )
