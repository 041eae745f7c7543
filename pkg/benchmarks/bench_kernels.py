"""Compare the compiled fidelity kernels against the numpy fallback.

Columns: arbitrary-times kernel, then the uniform-grid kernel used by scans.

Usage: python benchmarks/bench_kernels.py [--samples N] [--repeat R]
"""

import argparse
import time

import numpy as np

from pgst import _kernels_py
from pgst.cospectral import CornerPair
from pgst.dynamics import _corner_terms
from pgst.spectra import ProductGraph

try:
    from pgst import _kernels as _compiled
except ImportError:
    _compiled = None

CASES = [(3, 2), (16, 9), (7, 16, 9), (96, 100)]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    times = np.linspace(0.0, 200.0, args.samples)
    print(f"{'graph':>12} {'terms':>6} {'numpy s':>9} {'compiled s':>11} {'speedup':>8} {'max diff':>9} "
          f"{'uniform s':>10} {'speedup':>8} {'max diff':>9}")
    for sizes in CASES:
        G = ProductGraph.of(sizes)
        T = _corner_terms(G, CornerPair.adjacent(G, 0))
        args_ = (times, T.thetas, T.weights, T.offsets)
        t_py = best_of(lambda: _kernels_py.fidelity_grid(*args_), args.repeat)
        if _compiled is None:
            print(f"{'x'.join(map(str, sizes)):>12} {len(T.thetas):>6} {t_py:>9.3f} {'n/a':>11}")
            continue
        t_c = best_of(lambda: _compiled.fidelity_grid(*args_), args.repeat)
        diff = np.abs(_compiled.fidelity_grid(*args_) - _kernels_py.fidelity_grid(*args_)).max()
        step = float(times[1])
        uargs = (0.0, step, len(times), T.thetas, T.weights, T.offsets)
        t_u = best_of(lambda: _compiled.fidelity_uniform(*uargs), args.repeat)
        udiff = np.abs(_compiled.fidelity_uniform(*uargs) - _kernels_py.fidelity_uniform(*uargs)).max()
        print(f"{'x'.join(map(str, sizes)):>12} {len(T.thetas):>6} {t_py:>9.3f} {t_c:>11.3f} "
              f"{t_py / t_c:>8.2f} {diff:>9.1e} {t_u:>10.3f} {t_py / t_u:>8.2f} {udiff:>9.1e}")


if __name__ == "__main__":
    main()
