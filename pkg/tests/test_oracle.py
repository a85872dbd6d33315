import random

import pytest

from cgk.chartab import character_table
from cgk.decomp import corr_graph
from cgk.errors import BoundExceeded, ValidationFailed
from cgk.exact import CycInt
from cgk.fingroup import dihedral_group, symmetric_group
from cgk.gactgraph import Graph, trivial_action
from cgk.ktheory import vertex_matrix
from cgk.oracle import (
    CentralIdempotent,
    _validate_idempotents,
    build_crossed,
    central_idempotents,
    check_axioms,
    oracle_decomposition,
    oracle_multiplicities,
)
from helpers import SEED, problem_action, random_action

FIXTURES = [
    "s3_three_loops", "toeplitz_z2", "triangle_s3", "cross_d4", "ec_z2", "three_loops_z3_cocycle",
    "s3_dr_2dim", "z2_trivial_loop",
] + [f"cayley_z{n}" for n in range(2, 7)]


def test_build_crossed_dimensions():
    alg, mod = build_crossed(problem_action("toeplitz_z2"))
    assert (alg.dim, mod.dim) == (6, 8)
    alg, mod = build_crossed(problem_action("s3_three_loops"))
    assert (alg.dim, mod.dim) == (6, 18)
    E = problem_action("toeplitz_z2").graph
    alg, mod = build_crossed(trivial_action(E))
    assert (alg.dim, mod.dim) == (3, 4)
    with pytest.raises(BoundExceeded):
        build_crossed(problem_action("cross_d4"), max_dim=30)


def test_unit_and_involution():
    act = problem_action("triangle_s3")
    alg, _ = build_crossed(act)
    one = alg.unit()
    for b in alg.basis():
        v = {b: CycInt.from_int(1)}
        assert alg.mul(one, v) == v and alg.mul(v, one) == v
        assert alg.star(alg.star(v)) == v
    # (fg)* = g* f*
    rng = random.Random(SEED)
    basis = list(alg.basis())
    for _ in range(50):
        f, g = {rng.choice(basis): CycInt.zeta(3)}, {rng.choice(basis): CycInt.from_int(2)}
        assert alg.star(alg.mul(f, g)) == alg.mul(alg.star(g), alg.star(f))


def test_one_point_graph_idempotents_are_classical():
    G = symmetric_group(3)
    act = trivial_action(Graph.from_names(["v"], []), G)
    idems = central_idempotents(act)
    table = character_table(G)
    assert len(idems) == 3
    for z, chi in zip(idems, table.irreducibles):
        assert z.denominator == 6
        for g in range(G.order):
            assert z.kernel.get((0, g), CycInt.from_int(0)) == chi.value_at(g).conj() * chi.degree


def test_idempotent_corner_sizes():
    r = oracle_decomposition(problem_action("toeplitz_z2"))
    assert r.sizes == [1, 1, 2]
    assert [r.algebra_corner_dims[i, i] for i in range(3)] == [1, 1, 4]
    tri = oracle_decomposition(problem_action("triangle_s3"))
    assert [tri.algebra_corner_dims[i, i] for i in range(2)] == [9, 9]


def test_broken_idempotent_is_rejected():
    act = problem_action("toeplitz_z2")
    alg, _ = build_crossed(act)
    idems = central_idempotents(act)
    z = idems[0]
    bad = CentralIdempotent(z.orbit, z.vertex, z.irrep, z.size, {k: v * 2 for k, v in z.kernel.items()}, z.denominator)
    with pytest.raises(ValidationFailed):
        _validate_idempotents(alg, [bad] + idems[1:])
    with pytest.raises(ValidationFailed):
        _validate_idempotents(alg, idems[:-1])


def test_oracle_examples():
    assert oracle_multiplicities(problem_action("s3_three_loops")) == [[1, 0, 1], [0, 1, 1], [1, 1, 2]]
    assert oracle_multiplicities(problem_action("toeplitz_z2")) == [[0, 0, 1], [0, 0, 1], [0, 0, 1]]
    E = problem_action("cross_d4").graph
    assert oracle_multiplicities(trivial_action(E)) == vertex_matrix(E)


@pytest.mark.parametrize("name", FIXTURES)
def test_oracle_matches_decomposition_on_fixtures(name):
    act = problem_action(name)
    r = oracle_decomposition(act)
    cg = corr_graph(act)
    assert r.sizes == cg.sizes
    assert r.multiplicities == cg.A
    assert r.total_corner_dim == act.graph.n_edges * act.group.order
    k = len(r.sizes)
    assert all(r.algebra_corner_dims[i, j] == (r.sizes[i] ** 2 if i == j else 0) for i in range(k) for j in range(k))


@pytest.mark.parametrize("name", ["toeplitz_z2", "s3_three_loops", "triangle_s3", "cross_d4", "cayley_z4"])
def test_axioms(name):
    check_axioms(problem_action(name), samples=400, seed=SEED)


def test_oracle_on_random_actions():
    rng = random.Random(SEED + 7)
    for _ in range(25):
        act = random_action(rng)
        r = oracle_decomposition(act)
        assert r.multiplicities == corr_graph(act).A
        assert r.total_corner_dim == act.graph.n_edges * act.group.order


def test_trivial_action_of_d4():
    E = Graph.from_names(["a"], [("x", "a", "a")])
    act = trivial_action(E, dihedral_group(4))
    assert oracle_multiplicities(act) == corr_graph(act).A
