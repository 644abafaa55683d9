"""Encircling evolution of the joint state and reduced-state diagnostics.

Each arm sweeps an angle theta in opposite senses.  In the Coulomb gauge the
phase picked up along an arc is linear in the swept angle, so after an angle
theta the left packet carries exp(-i qK m_j theta / 2pi) and the right packet
the conjugate factor.  theta = pi closes the loop.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AngleOutOfRange, UnequalArms
from .hilbert import ChargeDensityMatrix, Coupling, CylinderState, JointState

ARM_BALANCE_TOL = 1e-9


@dataclass(frozen=True)
class EncircleAngle:
    theta: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi):
            raise AngleOutOfRange(f"encircling angle {self.theta!r} outside [0, pi]")

    @classmethod
    def full_loop(cls) -> "EncircleAngle":
        return cls(math.pi)


def _as_angle(angle) -> EncircleAngle:
    return angle if isinstance(angle, EncircleAngle) else EncircleAngle(float(angle))


def arm_phases(m: np.ndarray, c: Coupling, theta: float) -> np.ndarray:
    """Per-(arm, j) phase factors, shape (2, N)."""
    half = c.qK * m * theta / (2 * math.pi)
    return np.stack([np.exp(-1j * half), np.exp(1j * half)])


def encircle(state: JointState, c: Coupling, angle: EncircleAngle | float) -> JointState:
    theta = _as_angle(angle).theta
    return JointState(state.j_min, state.amps * arm_phases(state.m, c, theta))


def reduced_charge(state: JointState) -> ChargeDensityMatrix:
    """Partial trace over the cylinder: rho[a, b] = sum_j psi[a, j] conj(psi[b, j])."""
    a = state.amps
    return ChargeDensityMatrix(a @ a.conj().T)


def visibility(state: JointState) -> float:
    """Interference visibility 2|rho_RL| of a balanced two-arm state."""
    wl, wr = state.arm_weights()
    if abs(wl - wr) > ARM_BALANCE_TOL:
        raise UnequalArms(f"arm weights differ: {wl!r} vs {wr!r}")
    return min(1.0, 2.0 * abs(reduced_charge(state).coherence_RL))


def coherence_factor(xi: CylinderState, c: Coupling, theta: float = math.pi) -> complex:
    """sum_j |c_j|^2 exp(i qK m_j theta/pi); its modulus is the visibility."""
    p = np.abs(xi.amps) ** 2
    return complex(np.sum(p * np.exp(1j * c.qK * xi.m * theta / math.pi)))


def mean_field_coherence(xi: CylinderState, c: Coupling, theta: float = math.pi) -> complex:
    """Weak-interaction approximation exp(i qK <P_eta> theta / (pi hbar))."""
    mean_m = float(np.sum(np.abs(xi.amps) ** 2 * xi.m))
    return complex(np.exp(1j * c.qK * mean_m * theta / math.pi))


def interaction_strength(xi: CylinderState, c: Coupling) -> float:
    """max over occupied j of |qK (m_j - <P_eta>/hbar)|."""
    p = np.abs(xi.amps) ** 2
    mean_m = float(np.sum(p * xi.m))
    occupied = p > 0
    return float(np.max(np.abs(c.qK * (xi.m[occupied] - mean_m))))

