
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cgk.chartab import ClassFunction, character_table, trivial_character
from cgk.decomp import corr_graph, skeleton
from cgk.errors import NegativeEntries
from cgk.exact import IntMatrix, rank
from cgk.fingroup import symmetric_group
from cgk.gactgraph import Graph
from cgk.ktheory import (
    KTheory,
    LimitElement,
    dim_group,
    dr_k_theory,
    graph_algebra_props,
    graph_k_theory,
    limit_equal,
    regular_vertices,
    vertex_matrix,
)
from helpers import problem_action

TOEPLITZ = Graph.from_names(["v", "v1", "v2"], [("e1", "v", "v1"), ("e2", "v", "v2"), ("f1", "v1", "v2"), ("f2", "v2", "v1")])


def K(free, tors, k1):
    return KTheory(free, tuple(tors), k1)


def test_vertex_matrix_examples():
    assert vertex_matrix(Graph.from_matrix([[4]])) == [[4]]
    assert vertex_matrix(TOEPLITZ) == [[0, 1, 1], [0, 0, 1], [0, 1, 0]]
    tri = problem_action("triangle_s3").graph
    assert vertex_matrix(tri) == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]


def test_graph_k_theory_examples():
    assert graph_k_theory(TOEPLITZ) == K(1, [2], 0)
    assert graph_k_theory(Graph.from_matrix([[1, 0, 1], [0, 1, 1], [1, 1, 2]])) == K(1, [], 1)
    sk = skeleton(corr_graph(problem_action("toeplitz_z2")))
    assert graph_k_theory(sk) == K(2, [], 0)


def test_cuntz_algebras():
    for n in range(2, 7):
        kt = graph_k_theory(Graph.from_matrix([[n]]))
        assert kt == K(0, [n - 1] if n > 2 else [], 0)


def test_k_theory_json_and_str():
    kt = K(1, [2], 0)
    assert kt.to_json() == {"K0": {"free": 1, "torsion": [2]}, "K1": {"free": 0}}
    assert KTheory.from_json(kt.to_json()) == kt
    assert str(kt) == "K0 = Z ⊕ Z_2, K1 = 0"
    assert str(K(2, [], 3)) == "K0 = Z^2, K1 = Z^3"


def test_dr_k_theory_examples():
    G = symmetric_group(3)
    t = character_table(G)
    assert dr_k_theory(G, ClassFunction(G, [3, 1, 0])) == K(1, [], 1)
    assert dr_k_theory(G, t[2]) == K(0, [2], 0)
    assert dr_k_theory(G, trivial_character(G)) == K(3, [], 3)


def test_props_examples():
    assert graph_algebra_props(Graph.from_matrix([[1, 1], [1, 1]])) == (True, True)
    assert tuple(graph_algebra_props(Graph.from_matrix([[1]]))) == (False, False)
    sk = skeleton(corr_graph(problem_action("toeplitz_z2")))
    assert tuple(graph_algebra_props(sk)) == (False, False)
    assert tuple(graph_algebra_props(TOEPLITZ)) == (False, False)
    assert tuple(graph_algebra_props(Graph.from_matrix([[2]]))) == (True, True)
    # a single vertex without edges is C, simple but not purely infinite
    assert tuple(graph_algebra_props(Graph.from_matrix([[0]]))) == (True, False)


@pytest.mark.parametrize(
    "B, r",
    [([[1, 0, 1], [0, 1, 1], [1, 1, 2]], 2), ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3), ([[0, 0, 1], [0, 0, 1], [1, 1, 1]], 2)],
)
def test_dim_group_examples(B, r):
    p = dim_group(IntMatrix(B))
    assert p.stable_rank == r and p.k == 3
    assert rank(p.B ** (p.k + 1)) == p.stable_rank


def test_dim_group_negative():
    with pytest.raises(NegativeEntries):
        dim_group(IntMatrix([[1, -1], [0, 1]]))


def test_limit_equal_examples():
    p = dim_group(IntMatrix([[2]]))
    x = LimitElement((1,), 0)
    assert limit_equal(p, x, x)
    assert limit_equal(p, LimitElement((2,), 0), LimitElement((2,), 0))
    assert limit_equal(p, LimitElement((1,), 0), LimitElement((2,), 1))
    assert not limit_equal(p, LimitElement((1,), 0), LimitElement((1,), 1))
    nil = dim_group(IntMatrix([[0, 1], [0, 0]]))
    assert limit_equal(nil, LimitElement((5, -3), 2), LimitElement((0, 0), 0))


graphs = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 2), min_size=n, max_size=n), min_size=n, max_size=n)
).map(Graph.from_matrix)


@given(graphs)
def test_rank_identity(E):
    kt = graph_k_theory(E)
    assert kt.k0_free_rank - kt.k1_rank == E.n_vertices - len(regular_vertices(E))


@given(graphs, graphs)
def test_disjoint_union_additive(E, F):
    assert graph_k_theory(E.disjoint_union(F)) == graph_k_theory(E) + graph_k_theory(F)


@given(graphs)
def test_isolated_vertex(E):
    F = Graph(E.vertices + ("isolated",), E.edges)
    a, b = graph_k_theory(E), graph_k_theory(F)
    assert b == K(a.k0_free_rank + 1, a.k0_torsion, a.k1_rank)


@given(graphs)
def test_stable_rank_stabilizes(E):
    p = dim_group(vertex_matrix(E))
    assert rank(p.B ** (p.k + 1)) == p.stable_rank


@given(graphs)
def test_purely_infinite_implies_simple(E):
    p = graph_algebra_props(E)
    assert not p.purely_infinite or p.simple
