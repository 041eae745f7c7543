"""Continuous-time quantum walks on path products.

The propagator of a cartesian product is the tensor product of the factor
propagators, so a corner-to-corner amplitude is a product of 1-D entries

    U_P(t)[b, a] = sum_r exp(-i theta_r t) v_r(a) v_r(b)

built from the closed-form path eigenpairs. Scans evaluate this on a time
grid through :mod:`pgst.kernels` and refine the best peaks by golden-section
search. Scans only record observations. Whether PGST holds is decided exactly
by :func:`pgst.engine.decide_pgst`.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import TextIO

import numpy as np

from . import kernels
from .cospectral import CornerPair
from .errors import DomainError
from .spectra import (
    Hamiltonian,
    PathFactor,
    ProductGraph,
    path_eigenvalue_float,
    path_eigenvector_entry,
)

SAMPLES_PER_UNIT = 1000
REFINE_PEAKS = 10
REFINE_TOL = 1e-9
TIE_TOL = 1e-12
CHUNK = 1 << 16
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _factor_terms(f: PathFactor, a: int, b: int, h: Hamiltonian) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and weights ``v_r(a) v_r(b)`` of one factor's propagator entry."""
    if not (1 <= a <= f.n and 1 <= b <= f.n):
        raise DomainError(f"vertices ({a}, {b}) out of range for P_{f.n}")
    rs = f.index_range(h)
    theta = np.array([path_eigenvalue_float(f, r, h) for r in rs])
    w = np.array([path_eigenvector_entry(f, r, a, h) * path_eigenvector_entry(f, r, b, h) for r in rs])
    return theta, w


def path_propagator_entry(f: PathFactor | int, a: int, b: int, t: float,
                          h: Hamiltonian | str = Hamiltonian.ADJACENCY) -> complex:
    """Entry ``(b, a)`` of ``exp(-i t H)`` for the path ``f``."""
    if isinstance(f, int):
        f = PathFactor(f)
    theta, w = _factor_terms(f, a, b, Hamiltonian(h))
    if t == 0:
        return complex(a == b)  # U(0) = I exactly, not up to rounding
    return complex(sum(wr * cmath.exp(-1j * th * t) for th, wr in zip(theta.tolist(), w.tolist())))


@lru_cache(maxsize=256)
def _eigenbasis(f: PathFactor, h: Hamiltonian) -> tuple[np.ndarray, np.ndarray]:
    rs = f.index_range(h)
    theta = np.array([path_eigenvalue_float(f, r, h) for r in rs])
    V = np.array([[path_eigenvector_entry(f, r, j, h) for r in rs] for j in range(1, f.n + 1)])
    return theta, V


def path_propagator(f: PathFactor | int, t: float, h: Hamiltonian | str = Hamiltonian.ADJACENCY) -> np.ndarray:
    """The full matrix ``exp(-i t H)`` of the path ``f`` from its closed-form eigenpairs."""
    if isinstance(f, int):
        f = PathFactor(f)
    if t == 0:
        return np.eye(f.n, dtype=complex)
    theta, V = _eigenbasis(f, Hamiltonian(h))
    return (V * np.exp(-1j * theta * t)) @ V.T


@dataclass(frozen=True)
class _Terms:
    thetas: np.ndarray
    weights: np.ndarray
    offsets: np.ndarray

    def evaluate(self, times) -> np.ndarray:
        times = np.ascontiguousarray(np.atleast_1d(np.asarray(times, dtype=np.float64)))
        return kernels.fidelity_grid(times, self.thetas, self.weights, self.offsets)

    def uniform(self, t0: float, step: float, count: int) -> np.ndarray:
        return kernels.fidelity_uniform(float(t0), float(step), int(count),
                                        self.thetas, self.weights, self.offsets)

    def at(self, t: float) -> float:
        return float(self.evaluate(np.array([t]))[0])


def _corner_terms(G: ProductGraph, pair: CornerPair) -> _Terms:
    pair.validate(G)
    th, ws, offs = [], [], [0]
    for f, a, b in zip(G.factors, pair.a, pair.b):
        t, w = _factor_terms(f, a, b, G.hamiltonian)
        th.append(t)
        ws.append(w)
        offs.append(offs[-1] + len(t))
    return _Terms(np.concatenate(th), np.concatenate(ws), np.array(offs, dtype=np.int64))


def corner_fidelity(G: ProductGraph, pair: CornerPair, t: float) -> float:
    """``|U(t)[b, a]|`` for corners ``a, b`` of ``G``, as a product over factors."""
    pair.validate(G)
    out = 1.0
    for f, a, b in zip(G.factors, pair.a, pair.b):
        out *= abs(path_propagator_entry(f, a, b, t, G.hamiltonian))
    return out


def fidelity_grid(G: ProductGraph, pair: CornerPair, times) -> np.ndarray:
    """Corner fidelity at each of ``times`` through the selected kernel backend."""
    return _corner_terms(G, pair).evaluate(times)


@dataclass
class FidelityTrace:
    """Sampled fidelities on ``[0, t_max]`` with the refined maximum."""

    times: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    best_t: float
    best_value: float
    t_max: float
    samples: int

    def summary(self) -> dict:
        return {
            "t_max": self.t_max,
            "samples": self.samples,
            "best_t": self.best_t,
            "best_value": self.best_value,
            "sampled_max": float(self.values.max()),
        }

    def write_csv(self, out: TextIO) -> None:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["t", "fidelity"])
        for t, v in zip(self.times.tolist(), self.values.tolist()):
            w.writerow([f"{t:.17g}", f"{v:.17g}"])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def _golden_max(fn, lo: float, hi: float, tol: float = REFINE_TOL) -> tuple[float, float]:
    """Maximise ``fn`` on ``[lo, hi]`` by golden-section search; ends are candidates too."""
    best = max(((fn(lo), -lo), (fn(hi), -hi)))
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
    for t, v in ((c, fc), (d, fd)):
        best = max(best, (v, -t))
    return -best[1], best[0]


def _grid(t_max: float, samples: int | None) -> np.ndarray:
    if not t_max > 0:
        raise DomainError("t_max must be positive")
    if samples is None:
        samples = int(round(SAMPLES_PER_UNIT * t_max)) + 1
    if samples < 2:
        raise DomainError("samples must be at least 2")
    return np.linspace(0.0, float(t_max), samples)


def _chunks(terms: _Terms, times: np.ndarray):
    # uniform-grid kernel over fixed chunks, in order, so results are reproducible
    step = float(times[-1]) / (len(times) - 1)
    for s in range(0, len(times), CHUNK):
        n = min(CHUNK, len(times) - s)
        yield s, np.minimum(terms.uniform(s * step, step, n), 1.0)


def _evaluate_chunked(terms: _Terms, times: np.ndarray) -> np.ndarray:
    out = np.empty_like(times)
    for s, vals in _chunks(terms, times):
        out[s:s + len(vals)] = vals
    return out


def _local_peaks(v: np.ndarray) -> np.ndarray:
    n = len(v)
    left = np.empty(n, dtype=bool)
    right = np.empty(n, dtype=bool)
    left[0], right[-1] = True, True
    left[1:] = v[1:] >= v[:-1]
    right[:-1] = v[:-1] >= v[1:]
    return np.flatnonzero(left & right)


def scan_fidelity(G: ProductGraph, pair: CornerPair, t_max: float, samples: int | None = None,
                  refine: int = REFINE_PEAKS) -> FidelityTrace:
    """Sample the corner fidelity on a uniform grid and refine the best peaks.

    The ``refine`` highest local maxima of the grid are polished by
    golden-section search to a time resolution of ``1e-9``. ``best_t`` is the
    smallest time whose value is within ``1e-12`` of ``best_value``.
    """
    terms = _corner_terms(G, pair)
    times = _grid(t_max, samples)
    values = _evaluate_chunked(terms, times)
    peaks = _local_peaks(values)
    order = peaks[np.lexsort((peaks, -values[peaks]))][:refine]

    fn = lambda t: min(terms.at(t), 1.0)  # noqa: E731
    cands = [(float(times[i]), float(values[i])) for i in order]
    for i in order:
        lo = float(times[max(i - 1, 0)])
        hi = float(times[min(i + 1, len(times) - 1)])
        cands.append(_golden_max(fn, lo, hi))
    best_value = max(v for _, v in cands)
    sampled_best = int(np.argmax(values >= best_value - TIE_TOL))
    if values[sampled_best] >= best_value - TIE_TOL:
        cands.append((float(times[sampled_best]), float(values[sampled_best])))
    best_t = min(t for t, v in cands if v >= best_value - TIE_TOL)
    return FidelityTrace(times, values, best_t, best_value, float(t_max), len(times))


def _amplitude_bound(terms: _Terms) -> float:
    # largest |eigenvalue| of the product Hamiltonian restricted to the terms used
    total = 0.0
    offs = terms.offsets
    for f in range(len(offs) - 1):
        total += float(np.abs(terms.thetas[offs[f]:offs[f + 1]]).max())
    return total


def find_time_reaching(G: ProductGraph, pair: CornerPair, target: float, t_max: float,
                       samples: int | None = None) -> float | None:
    """Earliest time in ``[0, t_max]`` with fidelity at least ``target``, or ``None``.

    ``None`` only means the scan did not find such a time. It is not evidence
    against PGST, which promises every target eventually but gives no bound on
    when.

    A sample whose squared fidelity is within ``Lambda^2 h^2 / 2`` of
    ``target^2`` (grid step ``h``, spectral bound ``Lambda``) may sit next to a
    sub-grid peak reaching the target, so its neighbourhood is refined.
    The first crossing is then located by bisection.
    """
    if not 0 < target < 1:
        raise DomainError("target must lie strictly between 0 and 1")
    terms = _corner_terms(G, pair)
    times = _grid(t_max, samples)
    h = float(times[1] - times[0])
    lam = _amplitude_bound(terms)
    slack = 0.5 * (lam * h) ** 2
    fn = lambda t: min(terms.at(t), 1.0)  # noqa: E731
    if fn(0.0) >= target:
        return 0.0
    for s, vals in _chunks(terms, times):
        for k in np.flatnonzero(vals * vals >= target * target - slack):
            i = s + int(k)
            lo = float(times[max(i - 1, 0)])
            hi = float(times[min(i + 1, len(times) - 1)])
            if vals[k] >= target:
                peak_t = float(times[i])
            else:
                peak_t, peak_v = _golden_max(fn, lo, hi)
                if peak_v < target:
                    continue
            if fn(lo) >= target:
                return lo
            a, b = lo, peak_t
            while b - a > REFINE_TOL:
                mid = 0.5 * (a + b)
                if fn(mid) >= target:
                    b = mid
                else:
                    a = mid
            return b
    return None

