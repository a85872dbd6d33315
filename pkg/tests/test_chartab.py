import pytest

from cgk.chartab import (
    ClassFunction,
    character_table,
    dixon_primes,
    dr_matrix,
    inner_product,
    perm_character,
    regular_character,
    restrict,
    transport,
    trivial_character,
)
from cgk.errors import NotRational
from cgk.exact import CycInt, IntMatrix
from cgk.fingroup import Perm, abelian_group, close, cyclic_group, dihedral_group, symmetric_group
from helpers import problem_action, quaternion_group


def groups_up_to_24():
    gs = [(f"Z{n}", cyclic_group(n)) for n in range(1, 25)]
    gs += [(f"D{n}", dihedral_group(n)) for n in range(3, 13)]
    gs += [
        ("S3", symmetric_group(3)),
        ("S4", symmetric_group(4)),
        ("A4", close([[1, 2, 0, 3], [0, 2, 3, 1]])),
        ("Q8", quaternion_group()),
        ("Z2xZ2", abelian_group([2, 2])),
        ("Z2xZ4", abelian_group([2, 4])),
        ("Z2^3", abelian_group([2, 2, 2])),
        ("Z3xZ3", abelian_group([3, 3])),
        ("Z2xZ6", abelian_group([2, 6])),
        ("Z2xZ2xZ4", abelian_group([2, 2, 4])),
        ("Z2xS3", close([[1, 0, 2, 3, 4], [1, 2, 0, 3, 4], [0, 1, 2, 4, 3]])),
        ("Z2xA4", close([[1, 2, 0, 3, 4, 5], [0, 2, 3, 1, 4, 5], [0, 1, 2, 3, 5, 4]])),
        ("Z4xS3", close([[1, 0, 2, 3, 4, 5, 6], [1, 2, 0, 3, 4, 5, 6], [0, 1, 2, 4, 5, 6, 3]])),
    ]
    for name in ("s3_three_loops", "triangle_s3", "cross_d4", "ec_z2", "s3_dr_2dim"):
        gs.append((name, problem_action(name).group))
    return gs


GROUPS = groups_up_to_24()


@pytest.mark.parametrize("name, G", GROUPS, ids=[n for n, _ in GROUPS])
def test_orthogonality(name, G):
    assert G.order <= 24
    t = character_table(G)
    cl = G.classes
    irr = t.irreducibles
    assert len(irr) == len(cl)
    assert sum(d * d for d in t.degrees) == G.order
    assert all(G.order % d == 0 for d in t.degrees)
    for i, a in enumerate(irr):
        for j, b in enumerate(irr):
            assert inner_product(a, b) == (i == j)
    # column orthogonality: sum_chi chi(g) conj(chi(h)) = delta |C_G(g)|
    for x in range(len(cl)):
        for y in range(len(cl)):
            s = sum((chi.values[x] * chi.values[y].conj() for chi in irr), CycInt.from_int(0))
            assert s == (G.order // cl.sizes[x] if x == y else 0)
    assert irr[0] == trivial_character(G)
    assert list(t.degrees) == sorted(t.degrees)


def test_z2_table():
    t = character_table(cyclic_group(2))
    assert [[v.to_int() for v in chi.values] for chi in t.irreducibles] == [[1, 1], [1, -1]]


def test_s3_table():
    t = character_table(symmetric_group(3))
    assert t.degrees == (1, 1, 2)
    assert [[v.to_int() for v in chi.values] for chi in t.irreducibles] == [[1, 1, 1], [1, -1, 1], [2, 0, -1]]


def test_z3_table_is_cyclotomic():
    t = character_table(cyclic_group(3))
    assert t.degrees == (1, 1, 1)
    nontrivial = [chi for chi in t.irreducibles[1:]]
    assert all(not chi.values[1].is_rational() for chi in nontrivial)
    assert {chi.values[1] for chi in nontrivial} == {CycInt.zeta(3), CycInt.zeta(3, 2)}


def test_dixon_prime_choice():
    p = next(iter(dixon_primes(6, 6)))
    assert p % 6 == 1 and p > 2 * 36
    assert p == 73


def test_inner_product_examples():
    G = symmetric_group(3)
    t = character_table(G)
    reg = regular_character(G)
    for chi in t.irreducibles:
        assert inner_product(chi, chi) == 1
        assert inner_product(reg, chi) == chi.degree
    half = ClassFunction(G, [1, 0, 0])
    with pytest.raises(NotRational):
        inner_product(half, trivial_character(G))


def test_restrict_examples():
    G = symmetric_group(3)
    t = character_table(G)
    H = G.subgroup([0, G.index(Perm([1, 0, 2]))])
    res = restrict(t[2], H)
    assert [v.to_int() for v in res.values] == [2, 0]
    tH = character_table(H)
    assert tH.decompose(res) == [1, 1]
    assert restrict(trivial_character(G), H) == trivial_character(H)
    W = G.subgroup(range(G.order))
    assert [v.to_int() for v in restrict(t[2], W).values] == [2, 0, -1]


def test_transport_examples():
    G = symmetric_group(3)
    t12 = G.index(Perm([1, 0, 2]))
    t13 = G.index(Perm([2, 1, 0]))
    H = G.subgroup([0, t12])
    sign = character_table(H)[1]
    # a^-1 H a = <(13)> for a = (23)
    a = G.index(Perm([0, 2, 1]))
    moved = transport(sign, a)
    assert set(moved.domain.members) == {0, t13}
    assert moved.value_at(t13) == -1
    assert transport(sign, 0) == sign
    assert transport(moved, G.inv(a)) == sign
    # independent of the coset representative: a and h a give the same result
    assert transport(sign, G.mul(t12, a)) == moved


def test_perm_character_examples():
    act = problem_action("s3_three_loops")
    chi = perm_character(act.group, act.edge_action)
    assert [v.to_int() for v in chi.values] == [3, 1, 0]
    triv = perm_character(act.group, act.vertex_action)
    assert all(v == 1 for v in triv.values)
    cay = problem_action("cayley_z4")
    free = perm_character(cay.group, cay.vertex_action)
    assert [v.to_int() for v in free.values] == [4, 0, 0, 0]


def test_dr_matrix_examples():
    G = symmetric_group(3)
    t = character_table(G)
    perm3 = ClassFunction(G, [3, 1, 0])
    assert dr_matrix(G, perm3) == [[1, 0, 1], [0, 1, 1], [1, 1, 2]]
    assert dr_matrix(G, t[2]) == [[0, 0, 1], [0, 0, 1], [1, 1, 1]]
    assert dr_matrix(G, trivial_character(G)) == IntMatrix.identity(3)


@pytest.mark.parametrize("name, G", GROUPS[:30:3], ids=[n for n, _ in GROUPS[:30:3]])
def test_dr_weighted_row_sums(name, G):
    t = character_table(G)
    rho = regular_character(G) + t.irreducibles[-1]
    B = dr_matrix(G, rho)
    for v in range(B.rows):
        assert sum(B[v, w] * t.degrees[w] for w in range(B.cols)) == t.degrees[v] * rho.degree


def test_multiplicity_symmetry():
    G = dihedral_group(4)
    t = character_table(G)
    H = G.subgroup([0, G.index(Perm([0, 3, 2, 1]))])
    for a in t.irreducibles:
        for b in t.irreducibles:
            ra, rb = restrict(a, H), restrict(b, H)
            assert inner_product(ra, rb) == inner_product(rb, ra)
            assert inner_product(ra + ra, rb) == 2 * inner_product(ra, rb)
