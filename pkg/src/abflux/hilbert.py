"""Value types for the truncated charge ⊗ cylinder Hilbert space.

The charge lives in the two-dimensional span of the left/right packets.  The
cylinder lives in a finite window of angular-momentum eigenstates |m_j>, with
eigenvalue m_j = j (in units of hbar) for j in [j_min, j_min + N - 1].
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AllZeroAmplitudes, NonFiniteInput

NORM_TOL = 1e-12

LEFT, RIGHT = 0, 1


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def _check_finite(amps: np.ndarray) -> None:
    if not np.all(np.isfinite(amps)):
        raise NonFiniteInput("amplitudes contain NaN or infinity")


@dataclass(frozen=True)
class Coupling:
    """Charge q, coupling constant K and action scale hbar.

    The product q*K is what enters every phase; hbar only converts the
    angular-momentum eigenvalues m_j*hbar back to pure numbers.
    """

    q: float = 1.0
    K: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("q", "K", "hbar"):
            if not math.isfinite(getattr(self, name)):
                raise NonFiniteInput(f"coupling field {name} is not finite")
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")

    @property
    def qK(self) -> float:
        return self.q * self.K


@dataclass(frozen=True, eq=False)
class CylinderState:
    """Normalized coefficients c_j over the window starting at ``j_min``."""

    j_min: int
    amps: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amps", _frozen(self.amps))
        if self.amps.ndim != 1 or self.amps.size == 0:
            raise ValueError("cylinder amplitudes must be a non-empty 1-D sequence")
        _check_finite(self.amps)
        norm = float(np.vdot(self.amps, self.amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"cylinder state not normalized (norm^2 = {norm!r}); use make_cylinder")

    @property
    def size(self) -> int:
        return self.amps.size

    @property
    def j_max(self) -> int:
        return self.j_min + self.size - 1

    @property
    def m(self) -> np.ndarray:
        """Angular-momentum quantum numbers of the window."""
        return np.arange(self.j_min, self.j_min + self.size, dtype=float)

    def padded(self, j_min: int, j_max: int) -> np.ndarray:
        """Amplitudes on the window [j_min, j_max], zero outside our support."""
        if j_min > self.j_min or j_max < self.j_max:
            raise ValueError("padding window must contain the state's own window")
        out = np.zeros(j_max - j_min + 1, dtype=complex)
        out[self.j_min - j_min : self.j_min - j_min + self.size] = self.amps
        return out

    def __repr__(self):
        return f"CylinderState(j_min={self.j_min}, amps={self.amps.tolist()})"


def make_cylinder(j_min: int, amps: Sequence[complex]) -> CylinderState:
    """Build a cylinder state, rescaling ``amps`` to unit norm."""
    a = np.asarray(amps, dtype=complex).ravel()
    if a.size == 0:
        raise ValueError("amplitude list is empty")
    _check_finite(a)
    norm = math.sqrt(float(np.vdot(a, a).real))
    if norm == 0.0:
        raise AllZeroAmplitudes("all cylinder amplitudes are zero")
    return CylinderState(int(j_min), a / norm)


def eigenstate(j: int) -> CylinderState:
    return CylinderState(int(j), np.array([1.0 + 0j]))


def common_window(*states: CylinderState) -> tuple[int, int]:
    return min(s.j_min for s in states), max(s.j_max for s in states)


def overlap(x: CylinderState, y: CylinderState) -> complex:
    """<x|y>, aligning the two windows by zero-padding."""
    lo, hi = common_window(x, y)
    return complex(np.vdot(x.padded(lo, hi), y.padded(lo, hi)))


@dataclass(frozen=True)
class PathAmplitudes:
    a_L: complex
    a_R: complex

    @classmethod
    def balanced(cls) -> "PathAmplitudes":
        s = 1 / math.sqrt(2)
        return cls(s + 0j, s + 0j)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.a_L, self.a_R], dtype=complex)

    @property
    def norm2(self) -> float:
        return abs(self.a_L) ** 2 + abs(self.a_R) ** 2


@dataclass(frozen=True, eq=False)
class JointState:
    """Amplitudes indexed by (arm, j): row 0 is the left packet, row 1 the right."""

    j_min: int
    amps: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amps", _frozen(self.amps))
        if self.amps.ndim != 2 or self.amps.shape[0] != 2 or self.amps.shape[1] == 0:
            raise ValueError("joint amplitudes must have shape (2, N) with N >= 1")
        _check_finite(self.amps)

    @property
    def size(self) -> int:
        return self.amps.shape[1]

    @property
    def m(self) -> np.ndarray:
        return np.arange(self.j_min, self.j_min + self.size, dtype=float)

    @property
    def norm2(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    def arm_weights(self) -> tuple[float, float]:
        w = np.sum(np.abs(self.amps) ** 2, axis=1)
        return float(w[LEFT]), float(w[RIGHT])


def tensor(charge: PathAmplitudes, cyl: CylinderState) -> JointState:
    """Product state |charge> ⊗ |cyl>."""
    if abs(charge.norm2 - 1.0) > NORM_TOL:
        raise ValueError("charge amplitudes are not normalized")
    return JointState(cyl.j_min, np.outer(charge.vector, cyl.amps))


@dataclass(frozen=True, eq=False)
class ChargeDensityMatrix:
    """2x2 reduced state of the charge in the {L, R} basis."""

    rho: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rho", _frozen(self.rho))
        if self.rho.shape != (2, 2):
            raise ValueError("charge density matrix must be 2x2")

    @property
    def purity(self) -> float:
        return float(np.trace(self.rho @ self.rho).real)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.rho)

    @property
    def coherence_RL(self) -> complex:
        return complex(self.rho[RIGHT, LEFT])
