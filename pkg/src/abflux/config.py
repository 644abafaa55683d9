"""Run configuration: a JSON document whose keys mirror :class:`RunConfig`.

Complex amplitudes are written as ``[re, im]`` pairs, e.g.::

    {"coupling": {"q": 1.0, "K": 0.1, "hbar": 1.0},
     "cylinder_pre":  {"j_min": 0, "amps": [[1, 0], [1, 0]]},
     "cylinder_post": {"j_min": 0, "amps": [[1, 0], [0, 1]]},
     "theta_grid": {"start": 0.0, "stop": 3.141592653589793, "steps": 33},
     "trials": 100000, "master_seed": 1234, "epsilon": 0.05,
     "alpha_override": null, "output_path": null, "output_format": "csv"}
"""
from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import numpy as np

from .errors import AbfluxError
from .hilbert import Coupling, CylinderState, make_cylinder


class ConfigError(Exception):
    pass


@dataclass
class CouplingConfig:
    q: float = 1.0
    K: float = 1.0
    hbar: float = 1.0


@dataclass
class CylinderConfig:
    j_min: int = 0
    amps: list = field(default_factory=lambda: [[1.0, 0.0]])


@dataclass
class ThetaGrid:
    start: float = 0.0
    stop: float = math.pi
    steps: int = 33

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass
class RunConfig:
    coupling: CouplingConfig = field(default_factory=CouplingConfig)
    cylinder_pre: Optional[CylinderConfig] = None
    cylinder_post: Optional[CylinderConfig] = None
    theta_grid: Optional[ThetaGrid] = None
    trials: int = 100_000
    master_seed: int = 0
    epsilon: float = 0.05
    alpha_override: Optional[float] = None
    output_path: Optional[str] = None
    output_format: str = "csv"

    def coupling_obj(self) -> Coupling:
        try:
            return Coupling(float(self.coupling.q), float(self.coupling.K), float(self.coupling.hbar))
        except (AbfluxError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad coupling: {exc}") from exc

    def pre(self) -> CylinderState:
        return _cylinder(self.cylinder_pre, "cylinder_pre")

    def post(self) -> CylinderState:
        return _cylinder(self.cylinder_post, "cylinder_post")


def _complex(entry: Any, where: str) -> complex:
    if isinstance(entry, (int, float)) and not isinstance(entry, bool):
        return complex(float(entry), 0.0)
    if isinstance(entry, (list, tuple)) and len(entry) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in entry
    ):
        return complex(float(entry[0]), float(entry[1]))
    raise ConfigError(f"{where}: amplitude {entry!r} is not a [re, im] pair")


def _cylinder(cfg: Optional[CylinderConfig], name: str) -> CylinderState:
    if cfg is None:
        raise ConfigError(f"{name} is required for this command")
    if not isinstance(cfg.amps, list) or not cfg.amps:
        raise ConfigError(f"{name}.amps must be a non-empty list")
    amps = [_complex(a, f"{name}.amps[{i}]") for i, a in enumerate(cfg.amps)]
    try:
        return make_cylinder(int(cfg.j_min), amps)
    except (AbfluxError, ValueError) as exc:
        raise ConfigError(f"{name}: {exc}") from exc


def _build(cls, data: Any, where: str):
    if not isinstance(data, dict):
        raise ConfigError(f"{where} must be a mapping")
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    try:
        return cls(**data)
    except TypeError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def config_from_dict(data: dict) -> RunConfig:
    data = dict(data)
    nested = {
        "coupling": CouplingConfig,
        "cylinder_pre": CylinderConfig,
        "cylinder_post": CylinderConfig,
        "theta_grid": ThetaGrid,
    }
    for key, cls in nested.items():
        if data.get(key) is not None:
            data[key] = _build(cls, data[key], key)
    cfg = _build(RunConfig, data, "config")
    if cfg.output_format not in ("csv", "json"):
        raise ConfigError(f"output_format must be csv or json, got {cfg.output_format!r}")
    return cfg


def load_config(path: str | Path) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return config_from_dict(data)
