"""Expectation values, weak values and effective vector potentials of P_eta."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import NonpositiveRadius, OrthogonalPostSelection
from .hilbert import Coupling, CylinderState, common_window

ORTHOGONALITY_TOL = 1e-12


def expectation_P_eta(xi: CylinderState, hbar: float = 1.0) -> float:
    return float(np.sum(np.abs(xi.amps) ** 2 * xi.m)) * hbar


@dataclass(frozen=True)
class WeakValueReport:
    """Weak value of P_eta for the pair (xi, phi) and derived quantities.

    ``wv`` carries units of hbar.  ``alpha`` is the exponential tilt rate of the
    post-selected arm probabilities.  ``regime_margin`` is the largest
    |qK (m_j hbar - <P_eta>)|/hbar over levels occupied in both states and
    ``weak_margin`` is |qK (wv - <P_eta>) / 2|/hbar; both must be small for the
    weak-value phase approximation to hold.  Neither is enforced.
    """

    wv: complex
    alpha: float
    overlap: complex
    regime_margin: float
    weak_margin: float
    expectation: float

    @property
    def success_probability(self) -> float:
        return abs(self.overlap) ** 2


def _aligned(xi: CylinderState, phi: CylinderState):
    lo, hi = common_window(xi, phi)
    return xi.padded(lo, hi), phi.padded(lo, hi), np.arange(lo, hi + 1, dtype=float)


def weak_value_P_eta(
    xi: CylinderState, phi: CylinderState, c: Coupling = Coupling()
) -> WeakValueReport:
    """<phi|P_eta|xi> / <phi|xi> with alpha = qK Im(wv) / (pi hbar)."""
    cx, dx, m = _aligned(xi, phi)
    w = cx * dx.conj()
    ov = complex(np.sum(w))
    if abs(ov) <= ORTHOGONALITY_TOL:
        raise OrthogonalPostSelection(f"|<phi|xi>| = {abs(ov):.3e} is numerically zero")
    wv = c.hbar * complex(np.sum(w * m)) / ov
    mean = float(np.sum(np.abs(cx) ** 2 * m)) * c.hbar
    both = (np.abs(cx) > 0) & (np.abs(dx) > 0)
    margin = float(np.max(np.abs(c.qK * (m[both] * c.hbar - mean)))) / c.hbar if both.any() else 0.0
    return WeakValueReport(
        wv=wv,
        alpha=c.qK * wv.imag / (math.pi * c.hbar),
        overlap=ov,
        regime_margin=margin,
        weak_margin=abs(c.qK * (wv - mean) / 2) / c.hbar,
        expectation=mean,
    )


@dataclass(frozen=True)
class EigenstateSource:
    j: int


@dataclass(frozen=True)
class ExpectationSource:
    xi: CylinderState


@dataclass(frozen=True)
class WeakSource:
    xi: CylinderState
    phi: CylinderState


Source = Union[EigenstateSource, ExpectationSource, WeakSource]


def effective_vector_potential(mode: Source, c: Coupling, r: float) -> complex:
    """theta-component K X / (2 pi r) of the vector potential seen by the charge.

    X is m_j hbar, <P_eta> or the weak value depending on ``mode``; only the
    weak-value mode can give a complex result.
    """
    if not r > 0:
        raise NonpositiveRadius(f"radius must be positive, got {r!r}")
    if isinstance(mode, EigenstateSource):
        x: complex = mode.j * c.hbar
    elif isinstance(mode, ExpectationSource):
        x = expectation_P_eta(mode.xi, c.hbar)
    elif isinstance(mode, WeakSource):
        x = weak_value_P_eta(mode.xi, mode.phi, c).wv
    else:
        raise TypeError(f"unknown vector-potential mode {mode!r}")
    return complex(c.K * x / (2 * math.pi * r))
