"""Independent numeric oracles: dense matrices, eigensolvers and matrix exponentials.

Nothing here imports the package's spectral formulas; products are assembled
from explicit path matrices with Kronecker sums.
"""

from __future__ import annotations

import itertools
from functools import reduce

import numpy as np
import scipy.linalg as sla

CLUSTER_TOL = 1e-9
ENTRY_TOL = 1e-8


def path_matrix(n: int, hamiltonian: str = "adjacency") -> np.ndarray:
    A = np.diag(np.ones(n - 1), 1) + np.diag(np.ones(n - 1), -1)
    if hamiltonian == "adjacency":
        return A
    return np.diag(A.sum(axis=1)) - A


def product_matrix(sizes, hamiltonian: str = "adjacency") -> np.ndarray:
    mats = [path_matrix(n, hamiltonian) for n in sizes]
    eyes = [np.eye(n) for n in sizes]
    H = np.zeros((int(np.prod(sizes)),) * 2)
    for i, M in enumerate(mats):
        H += reduce(np.kron, [M if j == i else eyes[j] for j in range(len(sizes))])
    return H


def vertex_index(sizes, vertex) -> int:
    """Row of a 1-indexed vertex tuple in the Kronecker ordering."""
    idx = 0
    for n, v in zip(sizes, vertex):
        idx = idx * n + (v - 1)
    return idx


def clustered_eigen(H: np.ndarray, tol: float = CLUSTER_TOL):
    """Eigenvalues grouped by gaps larger than ``tol``, each with its projector."""
    w, V = np.linalg.eigh(H)
    groups, start = [], 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > tol:
            cols = V[:, start:i]
            groups.append((float(w[start:i].mean()), cols @ cols.T))
            start = i
    return groups


def distinct_eigenvalue_count(sizes, hamiltonian="adjacency") -> int:
    return len(clustered_eigen(product_matrix(sizes, hamiltonian)))


def strongly_cospectral(sizes, a, b, hamiltonian="adjacency") -> bool:
    """``E e_a = +-E e_b`` for every eigenprojector ``E`` (entrywise at ``ENTRY_TOL``)."""
    H = product_matrix(sizes, hamiltonian)
    ia, ib = vertex_index(sizes, a), vertex_index(sizes, b)
    for _, E in clustered_eigen(H):
        ua, ub = E[:, ia], E[:, ib]
        if not (np.allclose(ua, ub, atol=ENTRY_TOL, rtol=0) or np.allclose(ua, -ub, atol=ENTRY_TOL, rtol=0)):
            return False
    return True


def minus_eigenvalues(sizes, a, b, hamiltonian="adjacency") -> list[float]:
    H = product_matrix(sizes, hamiltonian)
    ia, ib = vertex_index(sizes, a), vertex_index(sizes, b)
    return [th for th, E in clustered_eigen(H)
            if np.allclose(E[:, ia], -E[:, ib], atol=ENTRY_TOL, rtol=0) and np.abs(E[:, ia]).max() > ENTRY_TOL]


def propagator(sizes, t: float, hamiltonian="adjacency") -> np.ndarray:
    return sla.expm(-1j * t * product_matrix(sizes, hamiltonian))


def dense_fidelity(sizes, a, b, t, hamiltonian="adjacency") -> float:
    U = propagator(sizes, t, hamiltonian)
    return float(abs(U[vertex_index(sizes, b), vertex_index(sizes, a)]))


def corners(sizes):
    return [tuple(c) for c in itertools.product(*[(1, n) for n in sizes])]


def brute_kernel_outside_span(M, basis, bound: int):
    """Brute-force every integer vector in ``[-bound, bound]^n`` killed by ``M``.

    Returns ``(count, offender)``: how many kernel vectors were found and the
    first one that is not an integer combination of ``basis`` (or ``None``).
    """
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    B = np.asarray(basis, dtype=float).reshape(len(basis), n).T
    P = np.linalg.pinv(B) if B.shape[1] else np.zeros((0, n))
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    rest = np.array(np.meshgrid(*([rng] * (n - 1)), indexing="ij")).reshape(n - 1, -1).T
    partial = rest @ M[:, 1:].T
    count = 0
    for x0 in rng:  # one slab per value of the first coordinate keeps memory flat
        mask = np.all(partial + x0 * M[:, 0] == 0, axis=1)
        if not mask.any():
            continue
        V = np.column_stack([np.full(int(mask.sum()), x0), rest[mask]]).astype(float)
        count += len(V)
        coef = np.rint(V @ P.T)
        bad = np.flatnonzero(np.abs(coef @ B.T - V).max(axis=1) > 1e-6)
        if len(bad):
            return count, V[bad[0]].astype(int)
    return count, None
