"""Integer kernels through a column-style Hermite normal form.

``column_hnf`` applies unimodular column operations to an integer matrix
``M`` until ``M @ U`` is lower echelon with positive pivots and reduced
off-pivot entries. The columns of ``U`` that map to zero then form a
saturated basis of the integer kernel: ``U`` is unimodular and the pivot
columns have independent images, so every integer kernel vector is an integer
combination of them.

Transform columns are kept sparse (``dict`` index -> coefficient); kernel
vectors of relation matrices with thousands of columns touch only a handful
of coordinates each.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

SparseVec = dict[int, int]


def clear_denominators(rows: Sequence[Sequence]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (the kernel is unchanged)."""
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        mult = math.lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * mult) for x in fr])
    return out


@dataclass
class HNFResult:
    rows: int
    cols: int
    pivots: list[tuple[int, int]]   # (row, column) of each pivot, in row order
    images: dict[int, list[int]]    # column -> column of M @ U
    transform: dict[int, SparseVec]  # column -> sparse column of U
    kernel_cols: list[int]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def hnf_matrix(self) -> list[list[int]]:
        """``H`` with pivot columns first (in pivot order), zero columns after."""
        order = [c for _, c in self.pivots] + self.kernel_cols
        return [[self.images[c][i] for c in order] for i in range(self.rows)]

    def transform_matrix(self) -> list[list[int]]:
        order = [c for _, c in self.pivots] + self.kernel_cols
        return [[self.transform[c].get(i, 0) for c in order] for i in range(self.cols)]


def _axpy(img, tr, j, p, q, start):
    # column j -= q * column p, on rows >= start of the image
    ij, ip = img[j], img[p]
    for t in range(start, len(ij)):
        if ip[t]:
            ij[t] -= q * ip[t]
    tj = tr[j]
    for k, v in tr[p].items():
        nv = tj.get(k, 0) - q * v
        if nv:
            tj[k] = nv
        else:
            tj.pop(k, None)


def _negate(img, tr, p):
    img[p] = [-x for x in img[p]]
    tr[p] = {k: -v for k, v in tr[p].items()}


def column_hnf(M: Sequence[Sequence[int]], ncols: int | None = None) -> HNFResult:
    """Column-style Hermite normal form of an integer matrix given as rows."""
    rows = [list(map(int, r)) for r in M]
    r = len(rows)
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    img = {j: [rows[i][j] for i in range(r)] for j in range(n)}
    tr: dict[int, SparseVec] = {j: {j: 1} for j in range(n)}
    active = list(range(n))
    pivots: list[tuple[int, int]] = []
    for i in range(r):
        nz = [j for j in active if img[j][i]]
        if not nz:
            continue
        while True:
            p = min(nz, key=lambda j: (abs(img[j][i]), j))
            if img[p][i] < 0:
                _negate(img, tr, p)
            a = img[p][i]
            rest = []
            for j in nz:
                if j == p:
                    continue
                b = img[j][i]
                q = (2 * b + a) // (2 * a)  # nearest integer
                if q:
                    _axpy(img, tr, j, p, q, i)
                if img[j][i]:
                    rest.append(j)
            if not rest:
                break
            nz = rest + [p]
        active.remove(p)
        a = img[p][i]
        for _, c in pivots:
            q = img[c][i] // a
            if q:
                _axpy(img, tr, c, p, q, i)
        pivots.append((i, p))
    return HNFResult(r, n, pivots, img, tr, active)


def _normalise_sign(v: SparseVec) -> SparseVec:
    if v and v[min(v)] < 0:
        return {k: -x for k, x in v.items()}
    return dict(v)


def integer_kernel_sparse(M: Sequence[Sequence], ncols: int | None = None) -> list[SparseVec]:
    """Saturated integer kernel basis of ``M`` as sparse vectors.

    Rational entries are accepted; each row is scaled to integers first.
    Each vector's first nonzero coordinate is positive.
    """
    res = column_hnf(clear_denominators(M), ncols)
    return [_normalise_sign(res.transform[j]) for j in res.kernel_cols]


def integer_kernel(M: Sequence[Sequence], ncols: int | None = None) -> list[tuple[int, ...]]:
    """Saturated integer kernel basis of ``M``, one dense tuple per basis vector."""
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    return [tuple(v.get(k, 0) for k in range(n)) for v in integer_kernel_sparse(M, n)]


def matvec(M: Sequence[Sequence[int]], v: SparseVec | Sequence[int]) -> list[int]:
    if not isinstance(v, dict):
        v = {k: x for k, x in enumerate(v) if x}
    return [sum(row[k] * x for k, x in v.items()) for row in M]
