"""Charge on a thin ring around the cylinder with an infinite barrier at theta = 0.

The ground state is psi_g(theta) = exp(i qK <P_eta> theta / 2 pi hbar) sin(theta/2) / sqrt(pi).
Before post-selection the detection density is sin^2(theta/2) / pi; after
post-selecting the cylinder it is tilted by exp(-alpha theta) and renormalized.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AngleOutOfRange
from .hilbert import Coupling
from .quadrature import adaptive_simpson

TWO_PI = 2 * math.pi


def _check_ring_angle(theta: float) -> None:
    if not (0.0 <= theta <= TWO_PI):
        raise AngleOutOfRange(f"ring angle {theta!r} outside [0, 2pi]")


def _window(theta: float, epsilon: float) -> tuple[float, float]:
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    return max(0.0, theta - epsilon), min(TWO_PI, theta + epsilon)


def ground_state_amplitude(theta: float, c: Coupling, p_eta_expect: float) -> complex:
    _check_ring_angle(theta)
    phase = c.qK * p_eta_expect * theta / (TWO_PI * c.hbar)
    return complex(np.exp(1j * phase) * math.sin(theta / 2) / math.sqrt(math.pi))


def p_initial(theta: float, epsilon: float) -> float:
    """Probability of finding the ground state within epsilon of theta."""
    a, b = _window(theta, epsilon)
    if b <= a:
        return 0.0
    F = lambda x: (x - math.sin(x)) / TWO_PI  # noqa: E731
    return F(b) - F(a)


def _tilt_scales(alpha: float) -> tuple[float, float]:
    # Exponentials are referenced to the end of [0, 2pi] where exp(-alpha x)
    # peaks, so nothing overflows for large |alpha|.
    if alpha > 0:
        return 0.0, -math.expm1(-TWO_PI * alpha)
    return TWO_PI, math.expm1(TWO_PI * alpha)


def p_final(theta: float, epsilon: float, alpha: float) -> float:
    """Post-selected probability of the epsilon window around theta.

    Integrates 2 alpha (1 + alpha^2) / (1 - exp(-2 pi alpha)) exp(-alpha x) sin^2(x/2)
    in closed form.  alpha = 0 reduces to p_initial.
    """
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    a, b = _window(theta, epsilon)
    if b <= a:
        return 0.0
    if alpha == 0.0:
        return p_initial(theta, epsilon)
    x0, denom = _tilt_scales(alpha)
    E = lambda x: math.exp(-alpha * (x - x0))  # noqa: E731
    if alpha > 0:
        drop = E(a) * -math.expm1(-alpha * (b - a))
    else:
        drop = E(b) * math.expm1(alpha * (b - a))
    t1 = (1 + alpha * alpha) * drop
    t2 = alpha * (
        E(b) * (math.sin(b) - alpha * math.cos(b)) - E(a) * (math.sin(a) - alpha * math.cos(a))
    )
    return (t1 - t2) / denom


def normalization_constant(alpha: float) -> float:
    """(2 alpha^3 + 2 alpha) / (1 - exp(-2 pi alpha)), with its 1/pi limit at 0."""
    if alpha == 0.0:
        return 1 / math.pi
    return (2 * alpha**3 + 2 * alpha) / -math.expm1(-TWO_PI * alpha)


@dataclass(frozen=True)
class RingDistribution:
    alpha: float

    @property
    def normalization_constant(self) -> float:
        return normalization_constant(self.alpha)

    def density(self, theta):
        th = np.asarray(theta, dtype=float)
        s2 = np.sin(th / 2) ** 2
        if self.alpha == 0.0:
            out = s2 / math.pi
        else:
            x0, denom = _tilt_scales(self.alpha)
            out = 2 * self.alpha * (1 + self.alpha**2) / denom * np.exp(-self.alpha * (th - x0)) * s2
        return float(out) if out.ndim == 0 else out

    def window_probability(self, theta: float, epsilon: float) -> float:
        return p_final(theta, epsilon, self.alpha)

    def window_probability_quadrature(self, theta: float, epsilon: float, tol: float = 1e-10) -> float:
        """Same probability by adaptive Simpson on the integrand as written,
        sharing no algebra with the closed form."""
        a, b = _window(theta, epsilon)
        k, al = normalization_constant(self.alpha), self.alpha
        return adaptive_simpson(lambda x: k * math.exp(-al * x) * math.sin(x / 2) ** 2, a, b, tol=tol)
