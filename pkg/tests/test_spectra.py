import itertools
import math

import numpy as np
import pytest

from pgst.errors import DomainError, ResourceLimitError
from pgst.spectra import (
    FactorClass,
    Hamiltonian,
    PathFactor,
    ProductGraph,
    far_end_sign,
    path_eigenvalue,
    path_eigenvector_end_values,
    path_eigenvector_entry,
    product_eigenvalue,
    spectrum_table,
)

from oracles import clustered_eigen, distinct_eigenvalue_count, path_matrix, product_matrix

ADJ, LAP = Hamiltonian.ADJACENCY, Hamiltonian.LAPLACIAN


@pytest.mark.parametrize("n, kind, param", [
    (2, FactorClass.PRIME_MINUS_ONE, 3),
    (3, FactorClass.POWER_OF_TWO_MINUS_ONE, 2),
    (1, None, None),
    (4, FactorClass.PRIME_MINUS_ONE, 5),
    (5, FactorClass.TWICE_PRIME_MINUS_ONE, 3),
    (7, FactorClass.POWER_OF_TWO_MINUS_ONE, 3),
    (8, FactorClass.OTHER, None),
    (9, FactorClass.TWICE_PRIME_MINUS_ONE, 5),
    (15, FactorClass.POWER_OF_TWO_MINUS_ONE, 4),
    (20, FactorClass.OTHER, None),
])
def test_factor_classes(n, kind, param):
    if kind is None:
        with pytest.raises(DomainError):
            PathFactor(n)
        return
    f = PathFactor(n)
    assert f.kind is kind and f.param == param


def test_class_round_trip():
    for n in range(2, 300):
        f = PathFactor(n)
        if f.kind is not FactorClass.OTHER:
            assert PathFactor.from_class(f.kind, f.param) == f


def test_product_graph_counts():
    G = ProductGraph.of([3, 4, 5])
    assert G.vertex_count == 60 and G.corner_count == 8 and G.k == 3
    assert G.conductor == 60
    assert ProductGraph.of([3, 4], LAP).conductor == 24


def test_path_eigenvalue_examples():
    assert path_eigenvalue(PathFactor(2), 1) == 1
    assert path_eigenvalue(PathFactor(4), 0, LAP) == 0
    assert path_eigenvalue(PathFactor(4), 2, LAP) == 2
    with pytest.raises(DomainError):
        path_eigenvalue(PathFactor(4), 0, ADJ)
    with pytest.raises(DomainError):
        path_eigenvalue(PathFactor(4), 4, LAP)


def test_end_values_small_path():
    # frozen from numpy.linalg.eigh of [[0, 1], [1, 0]]
    s = 0.7071067811865476
    v1 = path_eigenvector_end_values(PathFactor(2), 1)
    v2 = path_eigenvector_end_values(PathFactor(2), 2)
    assert v1 == pytest.approx((s, s), abs=1e-12)
    assert v2 == pytest.approx((s, -s), abs=1e-12)
    assert far_end_sign(PathFactor(4), 1, LAP) == -1


@pytest.mark.parametrize("h", ["adjacency", "laplacian"])
@pytest.mark.parametrize("n", range(2, 9))
def test_eigenvectors_and_signs_against_dense(n, h):
    f = PathFactor(n)
    M = path_matrix(n, h)
    for r in f.index_range(h):
        lam = path_eigenvalue(f, r, h).float_value()
        v = np.array([path_eigenvector_entry(f, r, j, h) for j in range(1, n + 1)])
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(M @ v, lam * v, atol=1e-12)
        a, b = path_eigenvector_end_values(f, r, h)
        assert abs(a) > 1e-9 and abs(b) > 1e-9
        assert np.sign(b / a) == far_end_sign(f, r, h)


def test_laplacian_sign_rule_differs_from_parity_of_r_for_odd_n():
    # 2+2cos(2pi/3) = 1 has eigenvector (1, 0, -1)/sqrt2 up to sign on P_3
    assert far_end_sign(PathFactor(3), 2, LAP) == -1
    assert far_end_sign(PathFactor(3), 1, LAP) == 1


def test_product_eigenvalue_examples():
    G = ProductGraph.of([2, 3])
    # frozen from 2cos(pi/3) + 2cos(pi/4)
    assert product_eigenvalue(G, (1, 1)).float_value() == pytest.approx(2.4142135623730954, abs=1e-12)
    assert product_eigenvalue(G, (1, 1)) == 1 + path_eigenvalue(PathFactor(3), 1)
    G = ProductGraph.of([4, 4])
    assert product_eigenvalue(G, (1, 2)) == product_eigenvalue(G, (2, 1))
    assert product_eigenvalue(ProductGraph.of([2]), (2,)) == -1


def test_spectrum_table_examples():
    t = spectrum_table(ProductGraph.of([4, 6]))
    assert t.distinct_count == 24 and t.is_simple
    t = spectrum_table(ProductGraph.of([4, 4]))
    assert t.distinct_count < 16
    assert any(g.indices[:2] == ((1, 2), (2, 1)) for g in t.groups)
    t = spectrum_table(ProductGraph.of([3, 2]))
    assert t.distinct_count == 6 and t.is_simple
    assert distinct_eigenvalue_count([3, 2]) == 6


def test_shared_prime_breaks_simplicity():
    # P_4 and P_9 share the prime 5 (5 and 2*5); the dense oracle also finds 174 < 216
    t = spectrum_table(ProductGraph.of([4, 6, 9]))
    assert t.distinct_count == 174
    assert distinct_eigenvalue_count([4, 6, 9]) == 174
    assert ((1, 1, 4), (2, 1, 2)) in [g.indices for g in t.groups]
    assert spectrum_table(ProductGraph.of([4, 6, 12])).is_simple


def test_spectrum_table_cap():
    with pytest.raises(ResourceLimitError):
        spectrum_table(ProductGraph.of([10, 10]), cap=99)


def _small_products(max_vertices=64):
    out = []
    for k in (1, 2, 3):
        for sizes in itertools.product(range(2, 9), repeat=k):
            if math.prod(sizes) <= max_vertices and list(sizes) == sorted(sizes):
                out.append(sizes)
    return out


@pytest.mark.parametrize("h", ["adjacency", "laplacian"])
@pytest.mark.parametrize("sizes", _small_products())
def test_spectrum_matches_dense(sizes, h):
    G = ProductGraph.of(sizes, h)
    t = spectrum_table(G)
    assert t.index_count == G.vertex_count
    assert sorted(i for g in t.groups for i in g.indices) == list(G.indices())
    dense = clustered_eigen(product_matrix(sizes, h))
    assert len(dense) == t.distinct_count
    exact = sorted(g.value.float_value() for g in t.groups)
    assert np.allclose(exact, [th for th, _ in dense], atol=1e-9)
    mult = sorted((round(g.value.float_value(), 6), g.multiplicity) for g in t.groups)
    dmult = sorted((round(th, 6), int(round(np.trace(E)))) for th, E in dense)
    assert mult == dmult


@pytest.mark.parametrize("n", range(2, 30))
def test_adjacency_spectrum_symmetric(n):
    f = PathFactor(n)
    for r in range(1, n + 1):
        assert path_eigenvalue(f, n + 1 - r) == -path_eigenvalue(f, r)


@pytest.mark.parametrize("sizes", [(2,), (5,), (3, 4), (2, 3, 4)])
def test_laplacian_dense_properties(sizes):
    L = product_matrix(sizes, "laplacian")
    assert np.allclose(L.sum(axis=1), 0)
    w, V = np.linalg.eigh(L)
    assert w[0] == pytest.approx(0, abs=1e-12)
    t = spectrum_table(ProductGraph.of(sizes, LAP))
    assert t.groups[0].value == 0 and t.groups[0].indices == ((0,) * len(sizes),)
