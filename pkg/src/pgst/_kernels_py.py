"""Pure numpy fallback for the fidelity kernel (same signature as the compiled one)."""

from __future__ import annotations

import numpy as np

CHUNK = 8192


def fidelity_grid(times, thetas, weights, offsets) -> np.ndarray:
    times = np.ascontiguousarray(times, dtype=np.float64)
    thetas = np.asarray(thetas, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    out = np.empty(times.shape[0])
    for start in range(0, times.shape[0], CHUNK):
        tc = times[start:start + CHUNK]
        prod = np.ones(tc.shape[0])
        for f in range(len(offsets) - 1):
            lo, hi = int(offsets[f]), int(offsets[f + 1])
            ph = np.outer(tc, thetas[lo:hi])
            re = np.cos(ph) @ weights[lo:hi]
            im = np.sin(ph) @ weights[lo:hi]
            prod *= np.sqrt(re * re + im * im)
        out[start:start + CHUNK] = prod
    return out


def fidelity_uniform(t0, step, count, thetas, weights, offsets) -> np.ndarray:
    """Fidelity at ``t0 + i*step`` for ``i < count``."""
    times = t0 + step * np.arange(count, dtype=np.float64)
    return fidelity_grid(times, thetas, weights, offsets)
