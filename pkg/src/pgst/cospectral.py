"""Strong cospectrality of corner pairs in path products.

Every tensor eigenvector of a path product is nonzero at every corner, so two
corners are strongly cospectral exactly when, inside each group of equal
eigenvalues, the relative sign between the two corners is the same for every
index in the group. The relative sign of one index is the product of the
per-factor far-end signs over the coordinates where the corners differ.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cyclo import CycloReal
from .errors import DomainError, NotStronglyCospectralError
from .spectra import (
    DEFAULT_CAP,
    EigenIndex,
    ProductGraph,
    SpectrumTable,
    far_end_sign,
    spectrum_table,
)


@dataclass(frozen=True)
class CornerPair:
    """Two corners, each a tuple of 1-indexed coordinates equal to ``1`` or ``n_i``."""

    a: tuple[int, ...]
    b: tuple[int, ...]

    @property
    def differ_mask(self) -> frozenset[int]:
        return frozenset(i for i, (x, y) in enumerate(zip(self.a, self.b)) if x != y)

    def validate(self, G: ProductGraph) -> "CornerPair":
        for c in (self.a, self.b):
            if len(c) != G.k or any(x not in (1, n) for x, n in zip(c, G.sizes)):
                raise DomainError(f"{c} is not a corner of {G}")
        return self

    @classmethod
    def from_bits(cls, G: ProductGraph, a_bits: str, b_bits: str) -> "CornerPair":
        """Build a pair from bit strings: ``0`` is vertex 1, ``1`` is vertex ``n_i``."""
        def corner(bits: str) -> tuple[int, ...]:
            if len(bits) != G.k or set(bits) - {"0", "1"}:
                raise DomainError(f"corner mask {bits!r} does not match {G.k} factors")
            return tuple(n if c == "1" else 1 for c, n in zip(bits, G.sizes))
        return cls(corner(a_bits), corner(b_bits))

    @classmethod
    def adjacent(cls, G: ProductGraph, coord: int) -> "CornerPair":
        """``(1,...,1)`` and the corner differing from it only in ``coord``."""
        if not 0 <= coord < G.k:
            raise DomainError(f"coordinate {coord} out of range")
        a = (1,) * G.k
        b = tuple(G.sizes[i] if i == coord else 1 for i in range(G.k))
        return cls(a, b)

    def bits(self, G: ProductGraph) -> tuple[str, str]:
        def enc(c):
            return "".join("1" if (x == n and n != 1) else "0" for x, n in zip(c, G.sizes))
        return enc(self.a), enc(self.b)

    def reversed(self) -> "CornerPair":
        return CornerPair(self.b, self.a)


def relative_sign(G: ProductGraph, pair: CornerPair, idx: Sequence[int]) -> int:
    """``+1`` if the eigenvector of ``idx`` agrees at both corners, ``-1`` otherwise."""
    idx = G.check_index(idx)
    s = 1
    for i in pair.differ_mask:
        s *= far_end_sign(G.factors[i], idx[i], G.hamiltonian)
    return s


@dataclass(frozen=True)
class CospectralReport:
    strongly_cospectral: bool
    witness: tuple[EigenIndex, EigenIndex] | None = None
    table: SpectrumTable | None = field(default=None, compare=False, repr=False)
    group_signs: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    @property
    def sign_map(self) -> dict[CycloReal, int] | None:
        """Common relative sign per distinct eigenvalue (strongly cospectral only)."""
        if not self.strongly_cospectral:
            return None
        return {g.value: s for g, s in zip(self.table.groups, self.group_signs)}

    def to_dict(self) -> dict:
        return {
            "strongly_cospectral": self.strongly_cospectral,
            "witness": [list(i) for i in self.witness] if self.witness else None,
        }


def strong_cospectrality(
    G: ProductGraph,
    pair: CornerPair,
    table: SpectrumTable | None = None,
    cap: int = DEFAULT_CAP,
) -> CospectralReport:
    pair.validate(G)
    if table is None:
        table = spectrum_table(G, cap)
    best: tuple[EigenIndex, EigenIndex] | None = None
    signs: list[int] = []
    for g in table.groups:
        first = g.indices[0]
        s0 = relative_sign(G, pair, first)
        for idx in g.indices[1:]:
            if relative_sign(G, pair, idx) != s0:
                cand = (first, idx)
                if best is None or cand < best:
                    best = cand
                break
        signs.append(s0)
    if best is not None:
        return CospectralReport(False, best)
    return CospectralReport(True, None, table, tuple(signs))


def phi_minus(
    G: ProductGraph,
    pair: CornerPair,
    table: SpectrumTable | None = None,
    cap: int = DEFAULT_CAP,
) -> frozenset[CycloReal]:
    """Distinct eigenvalues on which the two corners carry opposite signs."""
    rep = strong_cospectrality(G, pair, table, cap)
    if not rep.strongly_cospectral:
        raise NotStronglyCospectralError(
            f"corners {pair.a} and {pair.b} of {G} are not strongly cospectral")
    return frozenset(g.value for g, s in zip(rep.table.groups, rep.group_signs) if s < 0)
