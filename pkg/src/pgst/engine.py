"""Pretty good state transfer between corners, decided exactly.

For a strongly cospectral pair with distinct eigenvalues ``theta_1..theta_N``
PGST fails precisely when some integer vector ``l`` satisfies

* ``sum(l_i * theta_i) == 0``,
* ``sum(l_i) == 0``,
* ``sum(l_i for theta_i in the minus-set)`` is odd.

The first two conditions cut out a saturated lattice; the third is a parity
functional on it, so it suffices to test the functional on a lattice basis.
An odd basis vector is a certificate that PGST fails.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cospectral import CornerPair, relative_sign, strong_cospectrality
from .cyclo import CycloReal, linear_combination
from .errors import DomainError
from .lattice import SparseVec, clear_denominators, integer_kernel_sparse
from .spectra import (
    DEFAULT_CAP,
    EigenIndex,
    Hamiltonian,
    ProductGraph,
    SpectrumTable,
    lifted_path_eigenvalue,
    product_eigenvalue,
    spectrum_table,
)


# --------------------------------------------------------------------------
# certificates
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    """Integer coefficients on eigen indices witnessing that PGST fails."""

    graph: ProductGraph
    pair: CornerPair
    coeffs: Mapping[EigenIndex, int] = field(hash=False)

    def entries(self) -> list[tuple[EigenIndex, int]]:
        return sorted((tuple(i), int(c)) for i, c in self.coeffs.items() if c)

    def to_dict(self) -> dict:
        return {
            "factors": list(self.graph.sizes),
            "hamiltonian": self.graph.hamiltonian.value,
            "pair": [list(self.pair.a), list(self.pair.b)],
            "entries": [[list(i), c] for i, c in self.entries()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: Mapping) -> "Certificate":
        try:
            G = ProductGraph.of([int(n) for n in d["factors"]], d["hamiltonian"])
            a, b = d["pair"]
            pair = CornerPair(tuple(int(x) for x in a), tuple(int(x) for x in b)).validate(G)
            coeffs: dict[EigenIndex, int] = {}
            for idx, c in d["entries"]:
                if not isinstance(c, int) or isinstance(c, bool):
                    raise DomainError(f"coefficient {c!r} is not an integer")
                key = tuple(int(r) for r in idx)
                coeffs[key] = coeffs.get(key, 0) + c
        except DomainError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed certificate: {exc}") from exc
        return cls(G, pair, coeffs)

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"certificate is not valid JSON: {exc}") from exc
        return cls.from_dict(d)


def verify_certificate(cert: Certificate, cap: int = DEFAULT_CAP) -> bool:
    """Check the three no-PGST conditions for ``cert`` with exact arithmetic."""
    G, pair = cert.graph, cert.pair
    try:
        pair.validate(G)
        coeffs = {G.check_index(i): int(c) for i, c in cert.coeffs.items() if c}
    except DomainError:
        return False
    if sum(coeffs.values()) != 0:
        return False
    if not linear_combination((c, product_eigenvalue(G, i)) for i, c in coeffs.items()).is_zero():
        return False
    if not strong_cospectrality(G, pair, cap=cap).strongly_cospectral:
        return False
    # on a strongly cospectral pair an eigenvalue lies in the minus set
    # exactly when any one of its indices has relative sign -1
    odd = sum(c for i, c in coeffs.items() if relative_sign(G, pair, i) < 0)
    return odd % 2 == 1


# --------------------------------------------------------------------------
# the relation lattice
# --------------------------------------------------------------------------

def relation_matrix(values: Sequence[CycloReal]) -> list[list[int]]:
    """Coordinate rows of ``values`` in one power basis, plus the all-ones row.

    Rows that vanish identically are dropped, and each row is scaled to
    integers; neither step changes the kernel.
    """
    from .cyclo import lift
    from ._arith import lcm

    m = lcm(*(v.conductor for v in values))
    vals = [lift(v, m) for v in values]
    d = vals[0].degree
    rows = []
    for k in range(d):
        row = [v.coeffs[k] for v in vals]
        if any(row):
            rows.append(row)
    rows = clear_denominators(rows)
    rows.append([1] * len(vals))
    return rows


def _primitive(row: list[int]) -> list[int] | None:
    g = 0
    for x in row:
        if x:
            g = math.gcd(g, x)
    if not g:
        return None
    lead = next(x for x in row if x)
    if lead < 0:
        g = -g
    return [x // g for x in row]


def _row_space_basis(rows, width: int) -> list[list[int]]:
    """Integer echelon basis of the rational row space spanned by ``rows``."""
    basis: dict[int, list[int]] = {}
    order: list[int] = []
    seen = set()
    for row in rows:
        row = _primitive(list(row))
        if row is None or tuple(row) in seen:
            continue
        seen.add(tuple(row))
        for pc in order:
            x = row[pc]
            if x:
                b = basis[pc]
                g = math.gcd(x, b[pc])
                f1, f2 = b[pc] // g, x // g
                row = [f1 * u - f2 * w for u, w in zip(row, b)]
        row = _primitive(row)
        if row is None:
            continue
        pc = next(k for k, x in enumerate(row) if x)
        basis[pc] = row
        order.append(pc)
        order.sort()
        if len(order) == width:
            break
    return [basis[pc] for pc in order]


@dataclass
class RelationLattice:
    """Integer relations ``l`` with ``sum l_i theta_i = 0`` and ``sum l_i = 0``.

    Coordinates follow ``values`` (one per distinct eigenvalue); ``basis`` holds
    sparse basis vectors of the saturated lattice.
    """

    values: tuple[CycloReal, ...]
    representatives: tuple[EigenIndex, ...]
    basis: list[SparseVec]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def basis_matrix(self) -> list[list[int]]:
        """Dense matrix whose columns are the basis vectors."""
        n = len(self.values)
        return [[v.get(j, 0) for v in self.basis] for j in range(n)]


def relation_lattice(G: ProductGraph, table: SpectrumTable | None = None) -> RelationLattice:
    """Saturated lattice of integer relations among the distinct eigenvalues of ``G``.

    Every product eigenvalue is a sum of one lifted path eigenvalue per factor,
    so the coordinate matrix factors as ``C @ S`` with ``C`` the coordinates of
    the per-factor eigenvalues and ``S`` the 0/1 incidence of factor indices.
    The kernel only depends on the row space of ``C``, which is reduced to an
    independent echelon basis before the Hermite step.
    """
    if table is None:
        table = spectrum_table(G)
    m = G.conductor
    h = G.hamiltonian
    symbols: list[tuple[int, int]] = []
    coords: list[tuple[int, ...]] = []
    for i, f in enumerate(G.factors):
        for r in f.index_range(h):
            symbols.append((i, r))
            coords.append(lifted_path_eigenvalue(f, r, h, m).num)
    col_of = {s: c for c, s in enumerate(symbols)}
    d = len(coords[0])
    R = _row_space_basis((tuple(col[k] for col in coords) for k in range(d)), len(symbols))

    reps = tuple(g.indices[0] for g in table.groups)
    cols = [[col_of[(i, r)] for i, r in enumerate(idx)] for idx in reps]
    rows = [[sum(row[c] for c in cs) for cs in cols] for row in R]
    rows.append([1] * len(reps))
    basis = integer_kernel_sparse(rows, len(reps))
    return RelationLattice(tuple(g.value for g in table.groups), reps, basis)


# --------------------------------------------------------------------------
# decisions
# --------------------------------------------------------------------------

class Verdict(str, enum.Enum):
    PGST = "pgst"
    NO_PGST = "no_pgst"
    NOT_STRONGLY_COSPECTRAL = "not_strongly_cospectral"


@dataclass
class Decision:
    verdict: Verdict
    method: str
    graph: ProductGraph
    pair: CornerPair
    certificate: Certificate | None = None
    witness: tuple[EigenIndex, EigenIndex] | None = None
    lattice_rank: int | None = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "method": self.method,
            "factors": list(self.graph.sizes),
            "hamiltonian": self.graph.hamiltonian.value,
            "pair": [list(self.pair.a), list(self.pair.b)],
            "witness": [list(i) for i in self.witness] if self.witness else None,
            "lattice_rank": self.lattice_rank,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


def minus_parity(vec: SparseVec, minus_cols: set[int]) -> int:
    return sum(x for j, x in vec.items() if j in minus_cols) % 2


def decide_pgst(G: ProductGraph, pair: CornerPair, cap: int = DEFAULT_CAP) -> Decision:
    """Decide PGST between two corners of ``G``.

    Returns ``NOT_STRONGLY_COSPECTRAL`` with a colliding index pair, ``NO_PGST``
    with a certificate, or ``PGST``.
    """
    pair.validate(G)
    table = spectrum_table(G, cap)
    rep = strong_cospectrality(G, pair, table)
    if not rep.strongly_cospectral:
        return Decision(Verdict.NOT_STRONGLY_COSPECTRAL, "lattice", G, pair, witness=rep.witness)
    lat = relation_lattice(G, table)
    minus_cols = {j for j, idx in enumerate(lat.representatives) if relative_sign(G, pair, idx) < 0}
    odd = [
        (sum(abs(x) for x in v.values()), pos, v)
        for pos, v in enumerate(lat.basis)
        if minus_parity(v, minus_cols)
    ]
    if not odd:
        return Decision(Verdict.PGST, "lattice", G, pair, lattice_rank=lat.rank)
    _, _, vec = min(odd, key=lambda t: t[:2])
    coeffs = {lat.representatives[j]: x for j, x in vec.items()}
    cert = Certificate(G, pair, coeffs)
    return Decision(Verdict.NO_PGST, "lattice", G, pair, certificate=cert, lattice_rank=lat.rank)
