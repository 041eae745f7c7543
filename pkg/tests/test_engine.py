import json
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pgst.cospectral import CornerPair, phi_minus
from pgst.cyclo import linear_combination
from pgst.engine import Certificate, Verdict, decide_pgst, relation_lattice, verify_certificate
from pgst.errors import DomainError, ResourceLimitError
from pgst.spectra import Hamiltonian, ProductGraph, product_eigenvalue

from oracles import corners


def _decide(sizes, a, b, h="adjacency"):
    G = ProductGraph.of(sizes, h)
    return decide_pgst(G, CornerPair(a, b))


def test_p2_p3_is_pgst():
    d = _decide([2, 3], (1, 1), (2, 1))
    assert d.verdict is Verdict.PGST and d.certificate is None and d.method == "lattice"


def test_p6_p4_has_certificate():
    d = _decide([6, 4], (1, 1), (6, 1))
    assert d.verdict is Verdict.NO_PGST
    assert verify_certificate(d.certificate)


def test_p16_p9_is_pgst():
    assert _decide([16, 9], (1, 1), (16, 1)).verdict is Verdict.PGST


def test_not_strongly_cospectral_short_circuits():
    d = _decide([4, 4], (1, 1), (4, 1))
    assert d.verdict is Verdict.NOT_STRONGLY_COSPECTRAL
    assert d.witness is not None and d.lattice_rank is None


def test_decision_is_deterministic():
    a = _decide([6, 4], (1, 1), (6, 1)).to_dict()
    b = _decide([6, 4], (1, 1), (6, 1)).to_dict()
    assert json.dumps(a) == json.dumps(b)


def test_resource_cap():
    G = ProductGraph.of([10, 10])
    with pytest.raises(ResourceLimitError):
        decide_pgst(G, CornerPair.adjacent(G, 0), cap=50)


# ------------------------------------------------------------ certificates

def _lemma_block_certificate():
    # [A|B] on P_2 x P_4, moving along the first factor
    G = ProductGraph.of([2, 4])
    L = [[1, 0, 1, -1], [-2, 1, -2, 2]]
    coeffs = {(r + 1, s + 1): L[r][s] for r in range(2) for s in range(4) if L[r][s]}
    return Certificate(G, CornerPair((1, 1), (2, 1)), coeffs)


def test_block_certificate_verifies():
    cert = _lemma_block_certificate()
    assert verify_certificate(cert)
    G = cert.graph
    total = linear_combination((c, product_eigenvalue(G, i)) for i, c in cert.coeffs.items())
    assert total.is_zero() and sum(cert.coeffs.values()) == 0


def test_zero_certificate_fails():
    cert = _lemma_block_certificate()
    assert not verify_certificate(Certificate(cert.graph, cert.pair, {}))


@pytest.mark.parametrize("key", [(1, 1), (1, 3), (2, 2), (2, 4)])
def test_perturbed_certificate_fails(key):
    cert = _lemma_block_certificate()
    coeffs = dict(cert.coeffs)
    coeffs[key] = coeffs.get(key, 0) + 1
    assert not verify_certificate(Certificate(cert.graph, cert.pair, coeffs))


def test_certificate_on_non_cospectral_pair_fails():
    G = ProductGraph.of([4, 4])
    # 2cos(pi/5) + 2cos(2pi/5) appears at (1,2) and (2,1); the pair is not strongly cospectral
    cert = Certificate(G, CornerPair((1, 1), (4, 1)), {(1, 2): 1, (2, 1): -1})
    assert not verify_certificate(cert)


def test_certificate_with_bad_index_fails():
    cert = _lemma_block_certificate()
    assert not verify_certificate(Certificate(cert.graph, cert.pair, {(3, 1): 1, (1, 1): -1}))


def test_certificate_json_round_trip():
    cert = _decide([6, 4], (1, 1), (6, 1)).certificate
    text = cert.to_json()
    back = Certificate.from_json(text)
    assert back.entries() == cert.entries() and back.graph == cert.graph and back.pair == cert.pair
    assert back.to_json() == text
    assert set(json.loads(text)) == {"factors", "hamiltonian", "pair", "entries"}


@pytest.mark.parametrize("text", [
    "not json",
    '{"factors": [2, 4]}',
    '{"factors": [2, 4], "hamiltonian": "adjacency", "pair": [[1, 1], [2, 1]], "entries": [[[1, 1], 1.5]]}',
    '{"factors": [2, 4], "hamiltonian": "adjacency", "pair": [[1, 2], [2, 1]], "entries": []}',
])
def test_malformed_certificate_json(text):
    with pytest.raises(DomainError):
        Certificate.from_json(text)


# ------------------------------------------------------------ the lattice

@pytest.mark.parametrize("sizes, h", [([2, 3], "adjacency"), ([6, 4], "adjacency"),
                                      ([3, 2, 4], "adjacency"), ([4, 2], "laplacian")])
def test_lattice_basis_satisfies_both_conditions(sizes, h):
    G = ProductGraph.of(sizes, h)
    lat = relation_lattice(G)
    assert len(lat.values) == len(lat.representatives)
    B = np.array(lat.basis_matrix)
    assert B.shape == (len(lat.values), lat.rank)
    for v in lat.basis:
        assert sum(v.values()) == 0
        assert linear_combination((x, lat.values[j]) for j, x in v.items()).is_zero()


def test_lattice_rank_matches_float_relations():
    G = ProductGraph.of([2, 3])
    lat = relation_lattice(G)
    assert len(lat.values) == 6
    # values +-1 + {sqrt2, 0, -sqrt2}: the 1-, sqrt2- and sum conditions are independent
    assert lat.rank == 6 - 3


@pytest.mark.parametrize("sizes", [(2, 3), (16, 9), (3, 2), (7, 2), (3, 4)])
def test_parity_soundness_on_pgst_pairs(sizes):
    G = ProductGraph.of(sizes)
    pair = CornerPair.adjacent(G, 0)
    assert decide_pgst(G, pair).verdict is Verdict.PGST
    lat = relation_lattice(G)
    minus = phi_minus(G, pair)
    minus_cols = [j for j, v in enumerate(lat.values) if v in minus]
    rng = random.Random(20261016)
    for _ in range(1000):
        coef = [rng.randint(-5, 5) for _ in lat.basis]
        total = sum(c * v.get(j, 0) for c, v in zip(coef, lat.basis) for j in minus_cols)
        assert total % 2 == 0


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 5, 6, 7, 9]), min_size=1, max_size=2), st.data())
def test_every_no_pgst_ships_a_valid_certificate(sizes, data):
    G = ProductGraph.of(sizes)
    cs = corners(sizes)
    b = data.draw(st.sampled_from(cs[1:]))
    d = decide_pgst(G, CornerPair(cs[0], b))
    if d.verdict is Verdict.NO_PGST:
        assert verify_certificate(d.certificate)
        odd = sum(c for i, c in d.certificate.coeffs.items() if product_eigenvalue(G, i) in phi_minus(G, d.pair))
        assert odd % 2 == 1


def test_laplacian_single_paths():
    for n, expected in [(2, Verdict.PGST), (4, Verdict.PGST), (8, Verdict.PGST)]:
        G = ProductGraph.of([n], Hamiltonian.LAPLACIAN)
        assert decide_pgst(G, CornerPair((1,), (n,))).verdict is expected
    G = ProductGraph.of([3], Hamiltonian.LAPLACIAN)
    assert decide_pgst(G, CornerPair((1,), (3,))).verdict is not Verdict.PGST
