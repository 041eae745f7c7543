"""Closed-form verdicts on whether all corners of a path product are PGST-equivalent.

The adjacency classifier accepts exactly four shapes, with at most one
``P_{2^e-1}`` factor alongside ``P_{p-1}`` and ``P_{2q-1}`` factors on distinct
odd primes:

1. ``P_{2^e-1} x P_{p-1}``, any odd prime ``p``;
2. ``P_{2^e-1} x P_{2q-1}``, any odd prime ``q``;
3. no power-of-two factor, every ``p = 1 (mod 8)`` and every ``q = 1 (mod 4)``;
4. one power-of-two factor plus factors as in 3.

A rejection names the rule that applies and the factors involved. Pairwise
rules come with the corner pair they rule out. That pair differs in a single
coordinate, and the exact engine can confirm it independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .cospectral import CornerPair, CospectralReport, strong_cospectrality
from .errors import DomainError
from .spectra import FactorClass, Hamiltonian, PathFactor, ProductGraph
from .witness import WitnessFamily, check_hypotheses


@dataclass(frozen=True)
class Classification:
    pgst: bool
    case: int | None = None
    rule: str | None = None
    reason: str | None = None
    factors: tuple[int, ...] = ()      # positions of the offending factors
    coordinate: int | None = None      # coordinate of the corner pair ruled out
    family: WitnessFamily | None = None
    primes: tuple[int, int] | None = None
    overlap_case: int | None = None

    def to_dict(self) -> dict:
        if self.pgst and self.case is not None:
            return {"verdict": "pgst", "case": self.case}
        d: dict = {"verdict": "pgst" if self.pgst else "no", "rule": self.rule}
        if self.reason is not None:
            d["reason"] = self.reason
        if self.factors:
            d["factors"] = list(self.factors)
        if self.coordinate is not None:
            d["coordinate"] = self.coordinate
        if self.family is not None:
            d["family"] = self.family.value
            d["primes"] = list(self.primes)
        if self.overlap_case is not None:
            d["overlap_case"] = self.overlap_case
        return d

    def ruled_out_pair(self, G: ProductGraph) -> CornerPair | None:
        """Corner pair this rejection says has no PGST, if the rule names one."""
        if self.pgst or self.coordinate is None:
            return None
        return CornerPair.adjacent(G, self.coordinate)


def _describe(f: PathFactor) -> str:
    return f"P_{f.n}"


def _single(f: PathFactor) -> Classification:
    if f.kind is FactorClass.OTHER:
        return Classification(
            False, rule="single_path", coordinate=0,
            reason=f"{_describe(f)}: n+1 = {f.n + 1} is not a prime, twice a prime or a power of two")
    overlap = None
    if f.kind is FactorClass.POWER_OF_TWO_MINUS_ONE:
        overlap = 4
    elif (f.kind is FactorClass.PRIME_MINUS_ONE and f.param % 8 == 1) or (
            f.kind is FactorClass.TWICE_PRIME_MINUS_ONE and f.param % 4 == 1):
        overlap = 3
    return Classification(True, rule="single_path", overlap_case=overlap)


def _congruence_ok(f: PathFactor) -> bool:
    if f.kind is FactorClass.PRIME_MINUS_ONE:
        return f.param % 8 == 1
    if f.kind is FactorClass.TWICE_PRIME_MINUS_ONE:
        return f.param % 4 == 1
    return True


_SHAPES = {
    (FactorClass.PRIME_MINUS_ONE, FactorClass.PRIME_MINUS_ONE): (
        WitnessFamily.PRIME_PRIME_3MOD4, WitnessFamily.PRIME_PRIME_5MOD8),
    (FactorClass.TWICE_PRIME_MINUS_ONE, FactorClass.TWICE_PRIME_MINUS_ONE): (
        WitnessFamily.TWICE_TWICE_3MOD4,),
    (FactorClass.TWICE_PRIME_MINUS_ONE, FactorClass.PRIME_MINUS_ONE): (
        WitnessFamily.TWICE_PRIME_3MOD4,
        WitnessFamily.TWICE_PRIME_SECOND_3MOD4,
        WitnessFamily.TWICE_PRIME_SECOND_5MOD8),
}
_SECOND = {WitnessFamily.TWICE_PRIME_SECOND_3MOD4, WitnessFamily.TWICE_PRIME_SECOND_5MOD8}


def _witness_candidates(G: ProductGraph) -> Iterator[tuple[int, int, int, WitnessFamily]]:
    """``(coordinate, i, j, family)`` for each family applicable to factors ``i, j``."""
    fs = G.factors
    for i in range(G.k):
        for j in range(G.k):
            if i == j:
                continue
            for fam in _SHAPES.get((fs[i].kind, fs[j].kind), ()):
                try:
                    check_hypotheses(fam, fs[i].param, fs[j].param)
                except DomainError:
                    continue
                yield (j if fam in _SECOND else i), i, j, fam


def gcd_coordinate(n_i: int, n_j: int, i: int = 0, j: int = 1) -> int:
    """Coordinate along which the gcd rule breaks strong cospectrality.

    With ``g = gcd(n_i+1, n_j+1) >= 3`` the two cofactors ``(n+1)/g`` are
    coprime, so at least one is odd; the collision uses the odd one.
    """
    g = math.gcd(n_i + 1, n_j + 1)
    return i if ((n_i + 1) // g) % 2 == 1 else j


def classify_corners(G: ProductGraph) -> Classification:
    """Decide whether all corners of an adjacency path product are PGST-equivalent."""
    if G.hamiltonian is not Hamiltonian.ADJACENCY:
        raise DomainError("classify_corners expects the adjacency Hamiltonian")
    fs = G.factors
    if G.k == 1:
        return _single(fs[0])

    for i, f in enumerate(fs):
        if f.kind is FactorClass.OTHER:
            return Classification(
                False, rule="factor_necessity", factors=(i,), coordinate=i,
                reason=f"factor {i} ({_describe(f)}) has no PGST between its ends")

    for i in range(G.k):
        for j in range(i + 1, G.k):
            g = math.gcd(fs[i].n + 1, fs[j].n + 1)
            if g >= 3:
                c = gcd_coordinate(fs[i].n, fs[j].n, i, j)
                return Classification(
                    False, rule="gcd", factors=(i, j), coordinate=c,
                    reason=(f"gcd({fs[i].n + 1}, {fs[j].n + 1}) = {g} >= 3: corners differing "
                            f"in coordinate {c} are not strongly cospectral"))

    pow2 = [i for i, f in enumerate(fs) if f.kind is FactorClass.POWER_OF_TWO_MINUS_ONE]
    if G.k == 2 and len(pow2) == 1:
        other = fs[1 - pow2[0]]
        return Classification(True, case=1 if other.kind is FactorClass.PRIME_MINUS_ONE else 2)
    if all(_congruence_ok(f) for f in fs):
        return Classification(True, case=4 if pow2 else 3)

    coord, i, j, fam = min(_witness_candidates(G), key=lambda c: (c[0], c[1], c[2], list(WitnessFamily).index(c[3])))
    fi, fj = fs[i], fs[j]
    return Classification(
        False, rule="witness", factors=(i, j), coordinate=coord, family=fam,
        primes=(fi.param, fj.param),
        reason=(f"{fam.value} certificate on {_describe(fi)} x {_describe(fj)} rules out "
                f"PGST along coordinate {coord}"))


@dataclass(frozen=True)
class LaplacianVerdict:
    pgst: bool
    rule: str
    reason: str
    coordinate: int | None = None
    factors: tuple[int, ...] = ()
    refutation: CospectralReport | None = None
    subgraph: ProductGraph | None = None

    def to_dict(self) -> dict:
        d: dict = {"verdict": "pgst" if self.pgst else "no", "rule": self.rule, "reason": self.reason}
        if self.coordinate is not None:
            d["coordinate"] = self.coordinate
        if self.factors:
            d["factors"] = list(self.factors)
        if self.refutation is not None:
            d["subgraph"] = list(self.subgraph.sizes)
            d["refutation"] = self.refutation.to_dict()
        return d


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def laplacian_corner_verdict(G: ProductGraph) -> LaplacianVerdict:
    """Laplacian corner verdict: only a single ``P_{2^e}`` has PGST between its ends.

    With two or more factors the answer is always no. When the first two
    factors are powers of two, the reported refutation is the failure of strong
    cospectrality in ``P_{2^e} x P_{2^f}`` for the corners differing in the smaller factor.
    """
    if G.hamiltonian is not Hamiltonian.LAPLACIAN:
        raise DomainError("laplacian_corner_verdict expects the Laplacian Hamiltonian")
    sizes = G.sizes
    if G.k == 1:
        n = sizes[0]
        if _is_power_of_two(n):
            return LaplacianVerdict(True, "single_path", f"P_{n}: n is a power of two")
        return LaplacianVerdict(False, "single_path", f"P_{n}: n is not a power of two", coordinate=0)
    for i, n in enumerate(sizes):
        if not _is_power_of_two(n):
            return LaplacianVerdict(
                False, "factor_necessity", f"factor {i} (P_{n}) has no Laplacian PGST between its ends",
                coordinate=i, factors=(i,))
    c = 0 if sizes[0] <= sizes[1] else 1
    sub = ProductGraph.of(sizes[:2], Hamiltonian.LAPLACIAN)
    rep = strong_cospectrality(sub, CornerPair.adjacent(sub, c))
    return LaplacianVerdict(
        False, "power_of_two_pair",
        f"corners of P_{sizes[0]} x P_{sizes[1]} differing in coordinate {c} are not strongly cospectral",
        coordinate=c, factors=(0, 1), refutation=rep, subgraph=sub)
