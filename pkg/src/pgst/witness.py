"""Explicit no-PGST certificates for two-factor path products.

Each family fixes a product shape, a transfer direction and congruence
conditions on two odd primes ``p1, p2``. Its coefficients come from a block
matrix ``L`` built from

    A = [[1, 0], [-2, 1]],  B = [[1, -1], [-2, 2]],  C = [[-1, 2], [1, -2]]

laid out as ``[[A, B, ..., B], [C, 0, ..., 0], ..., [C, 0, ..., 0]]``. Every
such ``L`` has row sums ``1, -1, 1, ...`` and column sums ``-1, 1, -1, ...``,
which is what makes the eigenvalue sum cancel against the alternating
cosine identities. ``L`` is then spread onto the eigen index grid of the
product (directly, or onto even indices plus a border row/column for the
zero eigenvalue of ``P_{2p-1}``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterator

from ._arith import is_prime
from .cospectral import CornerPair
from .engine import Certificate, Decision, Verdict, verify_certificate
from .errors import DomainError
from .spectra import EigenIndex, Hamiltonian, ProductGraph

BLOCK_A = ((1, 0), (-2, 1))
BLOCK_B = ((1, -1), (-2, 2))
BLOCK_C = ((-1, 2), (1, -2))


class WitnessFamily(str, enum.Enum):
    # P_{p1-1} x P_{p2-1}, move along the first factor, p1 = 3 mod 4
    PRIME_PRIME_3MOD4 = "prime-prime-3mod4"
    # P_{p1-1} x P_{p2-1}, first factor, p1 = 5 mod 8 and p2 = 1 mod 4
    PRIME_PRIME_5MOD8 = "prime-prime-5mod8"
    # P_{2p1-1} x P_{2p2-1}, first factor, p1 = 3 mod 4
    TWICE_TWICE_3MOD4 = "twice-twice-3mod4"
    # P_{2p1-1} x P_{p2-1}, first factor, p1 = 3 mod 4 and p2 = 1 mod 4
    TWICE_PRIME_3MOD4 = "twice-prime-3mod4"
    # P_{2p1-1} x P_{p2-1}, second factor, p2 = 3 mod 4
    TWICE_PRIME_SECOND_3MOD4 = "twice-prime-second-3mod4"
    # P_{2p1-1} x P_{p2-1}, second factor, p1 = 1 mod 4 and p2 = 5 mod 8
    TWICE_PRIME_SECOND_5MOD8 = "twice-prime-second-5mod8"


def block_layout(row_blocks: int, col_blocks: int) -> list[list[int]]:
    """``2*row_blocks`` by ``2*col_blocks`` matrix ``[[A, B..B], [C, 0..0], ...]``."""
    L = [[0] * (2 * col_blocks) for _ in range(2 * row_blocks)]

    def put(block, r0, c0):
        for i in range(2):
            for j in range(2):
                L[r0 + i][c0 + j] = block[i][j]

    put(BLOCK_A, 0, 0)
    for c in range(1, col_blocks):
        put(BLOCK_B, 0, 2 * c)
    for r in range(1, row_blocks):
        put(BLOCK_C, 2 * r, 0)
    return L


@dataclass(frozen=True)
class _Family:
    sizes: Callable[[int, int], tuple[int, int]]
    coord: int
    conditions: tuple[tuple[int, int, int], ...]  # (which prime, modulus, residue)


_FAMILIES = {
    WitnessFamily.PRIME_PRIME_3MOD4: _Family(lambda p, q: (p - 1, q - 1), 0, ((1, 4, 3),)),
    WitnessFamily.PRIME_PRIME_5MOD8: _Family(lambda p, q: (p - 1, q - 1), 0, ((1, 8, 5), (2, 4, 1))),
    WitnessFamily.TWICE_TWICE_3MOD4: _Family(lambda p, q: (2 * p - 1, 2 * q - 1), 0, ((1, 4, 3),)),
    WitnessFamily.TWICE_PRIME_3MOD4: _Family(lambda p, q: (2 * p - 1, q - 1), 0, ((1, 4, 3), (2, 4, 1))),
    WitnessFamily.TWICE_PRIME_SECOND_3MOD4: _Family(lambda p, q: (2 * p - 1, q - 1), 1, ((2, 4, 3),)),
    WitnessFamily.TWICE_PRIME_SECOND_5MOD8: _Family(lambda p, q: (2 * p - 1, q - 1), 1, ((1, 4, 1), (2, 8, 5))),
}


def check_hypotheses(family: WitnessFamily | str, p1: int, p2: int) -> None:
    """Raise :class:`DomainError` naming the first failed condition."""
    fam = _FAMILIES[WitnessFamily(family)]
    for name, p in (("p1", p1), ("p2", p2)):
        if not (isinstance(p, int) and p >= 3 and is_prime(p)):
            raise DomainError(f"{name}={p} is not an odd prime")
    for which, mod, res in fam.conditions:
        p = p1 if which == 1 else p2
        if p % mod != res:
            raise DomainError(f"p{which}={p} violates p{which} = {res} (mod {mod}); got {p % mod}")


def witness_graph(family: WitnessFamily | str, p1: int, p2: int) -> tuple[ProductGraph, CornerPair]:
    fam = _FAMILIES[WitnessFamily(family)]
    G = ProductGraph.of(fam.sizes(p1, p2), Hamiltonian.ADJACENCY)
    return G, CornerPair.adjacent(G, fam.coord)


def layout_matrix(family: WitnessFamily | str, p1: int, p2: int) -> list[list[int]]:
    """The compact coefficient matrix ``L`` of the family."""
    family = WitnessFamily(family)
    F = WitnessFamily
    if family is F.PRIME_PRIME_3MOD4:
        return block_layout((p1 - 1) // 2, (p2 - 1) // 2)
    if family is F.PRIME_PRIME_5MOD8:
        return block_layout((p1 - 1) // 4, (p2 - 1) // 4)
    if family is F.TWICE_TWICE_3MOD4:
        if p2 % 4 == 1:
            return block_layout((p1 + 1) // 4, (p2 - 1) // 4)
        return block_layout((p1 + 1) // 4, (p2 + 1) // 4)
    if family is F.TWICE_PRIME_3MOD4:
        return block_layout((p1 + 1) // 4, (p2 - 1) // 4)
    if family is F.TWICE_PRIME_SECOND_3MOD4:
        return block_layout((p1 - 1) // 2, (p2 - 1) // 2)
    return block_layout((p1 - 1) // 4, (p2 - 1) // 4)


def _twice_rows(p: int, nrows: int) -> list[int]:
    # rows of L sit on even indices 2, 4, ..., p-1, then the border row on p
    out = [2 * j for j in range(1, (p - 1) // 2 + 1)]
    if nrows > len(out):
        out.append(p)
    return out


def _embedding(family: WitnessFamily, p1: int, p2: int, L) -> tuple[list[int], list[int]]:
    """Eigen index carried by each row and each column of ``L``."""
    F = WitnessFamily
    nr, nc = len(L), len(L[0])
    if family in (F.PRIME_PRIME_3MOD4, F.PRIME_PRIME_5MOD8):
        return list(range(1, nr + 1)), list(range(1, nc + 1))
    if family is F.TWICE_TWICE_3MOD4:
        return _twice_rows(p1, nr), _twice_rows(p2, nc)
    if family is F.TWICE_PRIME_3MOD4:
        return _twice_rows(p1, nr), list(range(1, nc + 1))
    # second-factor families: rows on even indices of P_{2p1-1}, no border
    return [2 * j for j in range(1, nr + 1)], list(range(1, nc + 1))


def build_witness(family: WitnessFamily | str, p1: int, p2: int) -> Certificate:
    """Certificate of the family for primes ``p1, p2`` (hypotheses are checked)."""
    family = WitnessFamily(family)
    check_hypotheses(family, p1, p2)
    G, pair = witness_graph(family, p1, p2)
    L = layout_matrix(family, p1, p2)
    rows, cols = _embedding(family, p1, p2, L)
    coeffs: dict[EigenIndex, int] = {}
    for i, r in enumerate(rows):
        for j, s in enumerate(cols):
            if L[i][j]:
                coeffs[(r, s)] = L[i][j]
    return Certificate(G, pair, coeffs)


def minus_sum_closed_form(family: WitnessFamily | str, p1: int, p2: int) -> int:
    """Exact sum of the coefficients on minus-sign eigenvalues, in closed form."""
    F = WitnessFamily
    family = WitnessFamily(family)
    if family is F.PRIME_PRIME_3MOD4:
        return -((p1 - 1) // 2)
    if family is F.PRIME_PRIME_5MOD8:
        return -((p1 - 1) // 4)
    if family in (F.TWICE_TWICE_3MOD4, F.TWICE_PRIME_3MOD4):
        return sum((-1) ** (j + 1) for j in range(1, (p1 - 1) // 2 + 1))
    if family is F.TWICE_PRIME_SECOND_3MOD4:
        return (p2 - 1) // 2
    return (p2 - 1) // 4


def applicable_pairs(family: WitnessFamily | str, bound: int) -> Iterator[tuple[int, int]]:
    """Distinct primes ``p1, p2 <= bound`` satisfying the family's conditions."""
    primes = [p for p in range(3, bound + 1) if is_prime(p)]
    for p1 in primes:
        for p2 in primes:
            if p1 == p2:
                continue
            try:
                check_hypotheses(family, p1, p2)
            except DomainError:
                continue
            yield p1, p2


def decide_by_witness(family: WitnessFamily | str, p1: int, p2: int) -> Decision:
    """No-PGST decision backed by the family's certificate, verified exactly."""
    cert = build_witness(family, p1, p2)
    if not verify_certificate(cert):
        raise DomainError(f"{WitnessFamily(family).value} certificate for ({p1}, {p2}) does not verify")
    return Decision(Verdict.NO_PGST, "witness", cert.graph, cert.pair, certificate=cert)
