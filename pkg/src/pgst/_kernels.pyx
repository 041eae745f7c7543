# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fidelity kernel.

Each factor contributes ``|sum_r w_r exp(-i theta_r t)|``; the corner fidelity
is the product over factors. Terms of factor ``f`` occupy
``thetas[offsets[f]:offsets[f+1]]``.
"""

import numpy as np
from libc.math cimport cos, sin, sqrt


def fidelity_grid(const double[::1] times, const double[::1] thetas,
                  const double[::1] weights, const long long[::1] offsets):
    cdef Py_ssize_t T = times.shape[0]
    cdef Py_ssize_t k = offsets.shape[0] - 1
    cdef Py_ssize_t i, f, r
    cdef double t, ph, re, im, prod
    out = np.empty(T, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(T):
            t = times[i]
            prod = 1.0
            for f in range(k):
                re = 0.0
                im = 0.0
                for r in range(offsets[f], offsets[f + 1]):
                    ph = thetas[r] * t
                    re = re + weights[r] * cos(ph)
                    im = im - weights[r] * sin(ph)
                prod = prod * sqrt(re * re + im * im)
            o[i] = prod
    return out


DEF RESEED = 256


def fidelity_uniform(double t0, double step, Py_ssize_t count, const double[::1] thetas,
                     const double[::1] weights, const long long[::1] offsets):
    """Fidelity at ``t0 + i*step`` for ``i < count``.

    Phases advance by a fixed rotation per step and are recomputed exactly
    every ``RESEED`` steps, which bounds the accumulated rounding.
    """
    cdef Py_ssize_t n = thetas.shape[0]
    cdef Py_ssize_t k = offsets.shape[0] - 1
    cdef Py_ssize_t i, f, r
    cdef double t, re, im, prod, c, s
    out = np.empty(count, dtype=np.float64)
    cdef double[::1] o = out
    cs = np.empty(n, dtype=np.float64)
    sn = np.empty(n, dtype=np.float64)
    rc = np.cos(np.asarray(thetas) * step)
    rs = np.sin(np.asarray(thetas) * step)
    cdef double[::1] C = cs
    cdef double[::1] S = sn
    cdef double[::1] RC = rc
    cdef double[::1] RS = rs
    with nogil:
        for i in range(count):
            if i % RESEED == 0:
                t = t0 + i * step
                for r in range(n):
                    C[r] = cos(thetas[r] * t)
                    S[r] = sin(thetas[r] * t)
            else:
                for r in range(n):
                    c = C[r]
                    s = S[r]
                    C[r] = c * RC[r] - s * RS[r]
                    S[r] = s * RC[r] + c * RS[r]
            prod = 1.0
            for f in range(k):
                re = 0.0
                im = 0.0
                for r in range(offsets[f], offsets[f + 1]):
                    re = re + weights[r] * C[r]
                    im = im - weights[r] * S[r]
                prod = prod * sqrt(re * re + im * im)
            o[i] = prod
    return out
