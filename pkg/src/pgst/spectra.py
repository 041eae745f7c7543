"""Closed-form spectra of paths and of cartesian products of paths.

Vertices are 1-indexed along each path. Adjacency eigenvalues of ``P_n`` are
``2cos(r*pi/(n+1))`` for ``r = 1..n``; Laplacian eigenvalues are written as
``0`` (``r = 0``) and ``2 + 2cos(r*pi/n)`` for ``r = 1..n-1``. A product
eigenvalue is labelled by the tuple of per-factor indices.
"""

from __future__ import annotations

import enum
import itertools
import math
import operator
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from ._arith import is_prime, lcm, power_of_two_exponent
from .cyclo import CycloReal, from_rational, lift, make_cos
from .errors import DomainError, ResourceLimitError

EigenIndex = tuple[int, ...]

DEFAULT_CAP = 20_000


class Hamiltonian(str, enum.Enum):
    ADJACENCY = "adjacency"
    LAPLACIAN = "laplacian"


class FactorClass(str, enum.Enum):
    PRIME_MINUS_ONE = "prime_minus_one"            # n + 1 = p
    TWICE_PRIME_MINUS_ONE = "twice_prime_minus_one"  # n + 1 = 2p, p odd
    POWER_OF_TWO_MINUS_ONE = "power_of_two_minus_one"  # n + 1 = 2**e
    OTHER = "other"


@dataclass(frozen=True, order=True)
class PathFactor:
    """The path ``P_n`` together with the arithmetic class of ``n + 1``."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise DomainError(f"a path factor needs at least 2 vertices, got {self.n!r}")

    @property
    def kind(self) -> FactorClass:
        return self._classify()[0]

    @property
    def param(self) -> int | None:
        """``p`` for the prime classes, ``e`` for powers of two, None otherwise."""
        return self._classify()[1]

    def _classify(self) -> tuple[FactorClass, int | None]:
        m = self.n + 1
        e = power_of_two_exponent(m)
        if e is not None:
            return FactorClass.POWER_OF_TWO_MINUS_ONE, e
        if is_prime(m):
            return FactorClass.PRIME_MINUS_ONE, m
        if m % 2 == 0 and is_prime(m // 2):
            return FactorClass.TWICE_PRIME_MINUS_ONE, m // 2
        return FactorClass.OTHER, None

    @classmethod
    def from_class(cls, kind: FactorClass | str, param: int) -> "PathFactor":
        kind = FactorClass(kind)
        if kind is FactorClass.PRIME_MINUS_ONE:
            f = cls(param - 1)
        elif kind is FactorClass.TWICE_PRIME_MINUS_ONE:
            f = cls(2 * param - 1)
        elif kind is FactorClass.POWER_OF_TWO_MINUS_ONE:
            f = cls(2**param - 1)
        else:
            raise DomainError("class OTHER does not determine n")
        if f.kind is not kind or f.param != param:
            raise DomainError(f"{kind.value}({param}) is not a valid path class")
        return f

    def index_range(self, h: Hamiltonian) -> range:
        if Hamiltonian(h) is Hamiltonian.ADJACENCY:
            return range(1, self.n + 1)
        return range(0, self.n)


@dataclass(frozen=True)
class ProductGraph:
    """Cartesian product ``P_{n_1} x ... x P_{n_k}`` with a choice of Hamiltonian."""

    factors: tuple[PathFactor, ...]
    hamiltonian: Hamiltonian = Hamiltonian.ADJACENCY

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(
            f if isinstance(f, PathFactor) else PathFactor(f) for f in self.factors))
        object.__setattr__(self, "hamiltonian", Hamiltonian(self.hamiltonian))
        if not self.factors:
            raise DomainError("a product needs at least one factor")

    @classmethod
    def of(cls, sizes: Sequence[int], hamiltonian: Hamiltonian | str = Hamiltonian.ADJACENCY):
        return cls(tuple(PathFactor(n) for n in sizes), Hamiltonian(hamiltonian))

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(f.n for f in self.factors)

    @property
    def k(self) -> int:
        return len(self.factors)

    @property
    def vertex_count(self) -> int:
        return math.prod(self.sizes)

    @property
    def corner_count(self) -> int:
        return 2 ** self.k

    @property
    def conductor(self) -> int:
        """Common conductor into which every product eigenvalue is lifted."""
        if self.hamiltonian is Hamiltonian.ADJACENCY:
            return lcm(*(n + 1 for n in self.sizes))
        return lcm(*(2 * n for n in self.sizes))

    def index_ranges(self) -> list[range]:
        return [f.index_range(self.hamiltonian) for f in self.factors]

    def indices(self) -> Iterator[EigenIndex]:
        return itertools.product(*self.index_ranges())

    def check_index(self, idx: Sequence[int]) -> EigenIndex:
        idx = tuple(idx)
        if len(idx) != self.k or any(r not in rg for r, rg in zip(idx, self.index_ranges())):
            raise DomainError(f"eigen index {idx} out of range for {self}")
        return idx

    def __str__(self):
        return "x".join(f"P{n}" for n in self.sizes) + f"[{self.hamiltonian.value}]"


# --------------------------------------------------------------------------
# single path
# --------------------------------------------------------------------------

def _check_r(f: PathFactor, r: int, h: Hamiltonian) -> None:
    if r not in f.index_range(h):
        raise DomainError(f"index r={r} out of range for P{f.n} ({Hamiltonian(h).value})")


def path_eigenvalue(f: PathFactor, r: int, h: Hamiltonian | str = Hamiltonian.ADJACENCY) -> CycloReal:
    h = Hamiltonian(h)
    _check_r(f, r, h)
    if h is Hamiltonian.ADJACENCY:
        return make_cos(r, f.n + 1)
    if r == 0:
        return from_rational(0, f.n)
    return make_cos(r, f.n) + 2


def far_end_sign(f: PathFactor, r: int, h: Hamiltonian | str = Hamiltonian.ADJACENCY) -> int:
    """Sign of ``v(n) / v(1)`` for the ``r``-th unit eigenvector of ``P_n``.

    Adjacency: ``(-1)**(r+1)``. Laplacian: ``+1`` for ``r = 0``; otherwise the
    eigenvalue ``2 + 2cos(r*pi/n)`` equals ``2 - 2cos((n-r)*pi/n)``, whose
    cosine-mode eigenvector has far-end sign ``(-1)**(n-r)``.
    """
    h = Hamiltonian(h)
    _check_r(f, r, h)
    if h is Hamiltonian.ADJACENCY:
        return 1 if r % 2 else -1
    if r == 0:
        return 1
    return -1 if (f.n - r) % 2 else 1


def path_eigenvector_entry(f: PathFactor, r: int, j: int, h: Hamiltonian | str = Hamiltonian.ADJACENCY) -> float:
    """Component at vertex ``j`` of the ``r``-th unit eigenvector (positive at vertex 1)."""
    h = Hamiltonian(h)
    n = f.n
    if h is Hamiltonian.ADJACENCY:
        return math.sqrt(2.0 / (n + 1)) * math.sin(r * j * math.pi / (n + 1))
    if r == 0:
        return 1.0 / math.sqrt(n)
    k = n - r
    return math.sqrt(2.0 / n) * math.cos(k * math.pi * (j - 0.5) / n)


def path_eigenvector_end_values(f: PathFactor, r: int, h: Hamiltonian | str = Hamiltonian.ADJACENCY) -> tuple[float, float]:
    _check_r(f, r, h)
    return path_eigenvector_entry(f, r, 1, h), path_eigenvector_entry(f, r, f.n, h)


def path_eigenvalue_float(f: PathFactor, r: int, h: Hamiltonian | str = Hamiltonian.ADJACENCY) -> float:
    if Hamiltonian(h) is Hamiltonian.ADJACENCY:
        return 2.0 * math.cos(r * math.pi / (f.n + 1))
    if r == 0:
        return 0.0
    return 2.0 + 2.0 * math.cos(r * math.pi / f.n)


# --------------------------------------------------------------------------
# products
# --------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def lifted_path_eigenvalue(f: PathFactor, r: int, h: Hamiltonian, conductor: int) -> CycloReal:
    return lift(path_eigenvalue(f, r, h), conductor)


def product_eigenvalue(G: ProductGraph, idx: Sequence[int]) -> CycloReal:
    idx = G.check_index(idx)
    m = G.conductor
    total = None
    for f, r in zip(G.factors, idx):
        v = lifted_path_eigenvalue(f, r, G.hamiltonian, m)
        total = v if total is None else total + v
    return total


@dataclass(frozen=True)
class EigenGroup:
    """One distinct eigenvalue with every index realising it (lexicographic order)."""

    value: CycloReal
    indices: tuple[EigenIndex, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class SpectrumTable:
    graph: ProductGraph
    groups: tuple[EigenGroup, ...]

    @property
    def distinct_count(self) -> int:
        return len(self.groups)

    @property
    def index_count(self) -> int:
        return sum(g.multiplicity for g in self.groups)

    @property
    def is_simple(self) -> bool:
        return all(g.multiplicity == 1 for g in self.groups)

    def pairs(self) -> list[tuple[EigenIndex, CycloReal]]:
        """Flat ``(index, value)`` list in lexicographic index order."""
        out = [(i, g.value) for g in self.groups for i in g.indices]
        out.sort(key=operator.itemgetter(0))
        return out


def spectrum_table(G: ProductGraph, cap: int = DEFAULT_CAP) -> SpectrumTable:
    """All product eigenvalues, grouped by exact equality.

    Raises :class:`ResourceLimitError` when the vertex count exceeds ``cap``.
    """
    if G.vertex_count > cap:
        raise ResourceLimitError(f"{G} has {G.vertex_count} vertices, above the cap {cap}")
    return _spectrum_table(G)


@lru_cache(maxsize=16)
def _spectrum_table(G: ProductGraph) -> SpectrumTable:
    m = G.conductor
    h = G.hamiltonian
    per_factor = [
        [(r, lifted_path_eigenvalue(f, r, h, m).num) for r in f.index_range(h)]
        for f in G.factors
    ]
    # eigenvalues of paths are algebraic integers, so denominators stay 1
    partial: list[tuple[EigenIndex, tuple[int, ...]]] = [((r,), v) for r, v in per_factor[0]]
    for block in per_factor[1:]:
        partial = [
            (idx + (r,), tuple(map(operator.add, acc, v)))
            for idx, acc in partial
            for r, v in block
        ]
    groups: dict[tuple[int, ...], list[EigenIndex]] = {}
    for idx, vec in partial:  # already lexicographic
        groups.setdefault(vec, []).append(idx)
    out = [EigenGroup(CycloReal(m, vec, 1), tuple(idxs)) for vec, idxs in groups.items()]
    out.sort(key=lambda g: g.indices[0])
    return SpectrumTable(G, tuple(out))
