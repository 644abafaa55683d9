"""Counter-based random streams: every trial's draws depend only on (master_seed, index).

Trials can therefore be generated in any chunking or order, on any number of
threads, with bit-identical results.  The mixer is the SplitMix64 finalizer.
"""
from __future__ import annotations

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1


def mix64(x: np.ndarray) -> np.ndarray:
    z = np.array(x, dtype=np.uint64, copy=True)
    z ^= z >> np.uint64(30)
    z *= _M1
    z ^= z >> np.uint64(27)
    z *= _M2
    z ^= z >> np.uint64(31)
    return z


def trial_seeds(master_seed: int, indices: np.ndarray) -> np.ndarray:
    """seed_i = mix64(master_seed + (i + 1) * golden) mod 2**64."""
    base = np.uint64(int(master_seed) & _MASK64)
    idx = np.asarray(indices, dtype=np.uint64)
    return mix64(base + (idx + np.uint64(1)) * _GOLDEN)


def uniforms(seeds: np.ndarray, k: int) -> np.ndarray:
    """k independent doubles in [0, 1) per seed; shape (len(seeds), k)."""
    seeds = np.asarray(seeds, dtype=np.uint64)
    steps = (np.arange(1, k + 1, dtype=np.uint64) * _GOLDEN)[None, :]
    bits = mix64(seeds[:, None] + steps)
    return (bits >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))
