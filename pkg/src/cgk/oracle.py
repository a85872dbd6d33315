"""Brute-force verifier built from the convolution formulas of the crossed product.

``A x| G`` has basis ``(x, g)`` (vertex x, group element g) and product

    (k1 * k2)(x, g) = sum_h k1(x, h) k2(h^-1 . x, h^-1 g).

The bimodule ``H_E x| G`` has basis ``(e, g)`` with

    (xi . f)(e, t) = sum_s xi(e, s) f(s^-1 . src(e), s^-1 t)
    (h . xi)(e, t) = sum_s h(rng(e), s) xi(s^-1 . e, s^-1 t)
    <xi, eta>(v, t) = sum_s sum_{src(e) = s.v} conj(xi(e, s)) eta(e, s t)

Finite sums with counting measure replace the Haar integrals.  Elements are
sparse dicts ``{(point, group index): CycInt}``.  Block sizes and
multiplicities are recomputed as exact traces of corner projections
``xi -> z_i . xi . z_j`` and do not use any of the decomposition code.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Tuple

from .chartab import character_table, transport
from .errors import BoundExceeded, NonIntegralMultiplicity, ValidationFailed
from .exact import CycInt, IntMatrix, lcm
from .fingroup import transporter
from .gactgraph import GroupAction

DEFAULT_MAX_DIM = 5000

Key = Tuple[int, int]
Vec = Dict[Key, CycInt]


def _add_into(out: dict, key, val: CycInt) -> None:
    cur = out.get(key)
    out[key] = val if cur is None else cur + val


def _clean(v: dict) -> Vec:
    return {k: c for k, c in v.items() if not c.is_zero()}


def basis_vector(key: Key) -> Vec:
    return {key: CycInt.from_int(1)}


class CrossedAlgebra:
    """The algebra C(E^0) x| G with its convolution product and involution."""

    def __init__(self, act: GroupAction):
        self.act = act
        self.G = act.group
        self.n_points = act.graph.n_vertices

    @property
    def dim(self) -> int:
        return self.n_points * self.G.order

    def basis(self):
        for x in range(self.n_points):
            for g in range(self.G.order):
                yield (x, g)

    def unit(self) -> Vec:
        return {(x, 0): CycInt.from_int(1) for x in range(self.n_points)}

    def mul(self, k1: Vec, k2: Vec) -> Vec:
        G, act = self.G, self.act
        by_point = defaultdict(list)
        for (y, u), c in k2.items():
            by_point[y].append((u, c))
        out: dict = {}
        for (x, h), a in k1.items():
            y = act.act_vertex(G.inv(h), x)
            for u, b in by_point.get(y, ()):
                _add_into(out, (x, G.mul(h, u)), a * b)
        return _clean(out)

    def star(self, f: Vec) -> Vec:
        G, act = self.G, self.act
        out = {}
        for (y, u), c in f.items():
            ui = G.inv(u)
            out[(act.act_vertex(ui, y), ui)] = c.conj()
        return out


class CrossedBimodule:
    """The correspondence C(E^1) x| G over CrossedAlgebra."""

    def __init__(self, act: GroupAction, algebra: CrossedAlgebra):
        self.act = act
        self.G = act.group
        self.algebra = algebra
        self.edges = act.graph.edges

    @property
    def dim(self) -> int:
        return len(self.edges) * self.G.order

    def basis(self):
        for e in range(len(self.edges)):
            for g in range(self.G.order):
                yield (e, g)

    def right(self, xi: Vec, f: Vec) -> Vec:
        G, act = self.G, self.act
        by_point = defaultdict(list)
        for (y, u), c in f.items():
            by_point[y].append((u, c))
        out: dict = {}
        for (e, s), a in xi.items():
            y = act.act_vertex(G.inv(s), self.edges[e].src)
            for u, b in by_point.get(y, ()):
                _add_into(out, (e, G.mul(s, u)), a * b)
        return _clean(out)

    def left(self, h: Vec, xi: Vec) -> Vec:
        G, act = self.G, self.act
        out: dict = {}
        for (x, s), a in h.items():
            for (e0, u), b in xi.items():
                e = act.act_edge(s, e0)
                if self.edges[e].rng == x:
                    _add_into(out, (e, G.mul(s, u)), a * b)
        return _clean(out)

    def inner(self, xi: Vec, eta: Vec) -> Vec:
        G, act = self.G, self.act
        by_edge = defaultdict(list)
        for (e, w), c in eta.items():
            by_edge[e].append((w, c))
        out: dict = {}
        for (e, s), a in xi.items():
            si = G.inv(s)
            v = act.act_vertex(si, self.edges[e].src)
            ac = a.conj()
            for w, b in by_edge.get(e, ()):
                _add_into(out, (v, G.mul(si, w)), ac * b)
        return _clean(out)


def build_crossed(act: GroupAction, max_dim: int = DEFAULT_MAX_DIM) -> tuple[CrossedAlgebra, CrossedBimodule]:
    alg = CrossedAlgebra(act)
    mod = CrossedBimodule(act, alg)
    if alg.dim > max_dim or mod.dim > max_dim:
        raise BoundExceeded(f"crossed product dimensions {alg.dim}/{mod.dim} exceed {max_dim}")
    return alg, mod


@dataclass(frozen=True)
class CentralIdempotent:
    """Idempotent ``kernel / denominator``; kernel supported on (x, g) with g in G_x."""

    orbit: int
    vertex: int
    irrep: int
    size: int
    kernel: Vec
    denominator: int


def _scale(v: Vec, k: int) -> Vec:
    return {key: c * k for key, c in v.items()} if k else {}


def _vec_eq(a: Vec, b: Vec) -> bool:
    keys = set(a) | set(b)
    zero = CycInt.from_int(0)
    return all(a.get(k, zero) == b.get(k, zero) for k in keys)


def _vec_add(a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for k, c in b.items():
        _add_into(out, k, c)
    return _clean(out)


def central_idempotents(act: GroupAction, max_dim: int = DEFAULT_MAX_DIM) -> list[CentralIdempotent]:
    """One minimal central idempotent of C(E^0) x| G per (vertex orbit, irreducible of the stabilizer)."""
    alg, _ = build_crossed(act, max_dim)
    G = act.group
    out = []
    for k, orb in enumerate(act.vertex_orbits):
        v = orb[0]
        stab = act.vertex_stabilizer(v)
        table = character_table(stab)
        movers = {x: transporter(G, act.vertex_action, x, v)[0] for x in orb}
        for pi, chi in enumerate(table.irreducibles):
            kernel: Vec = {}
            d = chi.degree
            for x in orb:
                chi_x = transport(chi, movers[x])
                for g in chi_x.domain.members:
                    val = chi_x.value_at(g).conj() * d
                    if not val.is_zero():
                        kernel[(x, g)] = val
            out.append(CentralIdempotent(k, v, pi, len(orb) * d, kernel, stab.order))
    _validate_idempotents(alg, out)
    return out


def _validate_idempotents(alg: CrossedAlgebra, idems: list[CentralIdempotent]) -> None:
    for i, zi in enumerate(idems):
        sq = alg.mul(zi.kernel, zi.kernel)
        if not _vec_eq(sq, _scale(zi.kernel, zi.denominator)):
            raise ValidationFailed(f"idempotent {i} does not square to itself")
        for j, zj in enumerate(idems):
            if j != i and alg.mul(zi.kernel, zj.kernel):
                raise ValidationFailed(f"idempotents {i} and {j} are not orthogonal")
        for b in alg.basis():
            bv = basis_vector(b)
            if not _vec_eq(alg.mul(zi.kernel, bv), alg.mul(bv, zi.kernel)):
                raise ValidationFailed(f"idempotent {i} is not central")
    L = 1
    for z in idems:
        L = lcm(L, z.denominator)
    total: Vec = {}
    for z in idems:
        total = _vec_add(total, _scale(z.kernel, L // z.denominator))
    if not _vec_eq(total, _scale(alg.unit(), L)):
        raise ValidationFailed("idempotents do not sum to the unit")


def _columns(apply, basis) -> dict:
    """Sparse matrix of a linear map: basis element -> image vector."""
    return {b: apply(basis_vector(b)) for b in basis}


def _apply_columns(cols: dict, vec: Vec) -> Vec:
    out: dict = {}
    for a, c in vec.items():
        for k, v in cols[a].items():
            _add_into(out, k, c * v)
    return _clean(out)


def _check_projection(cols: dict, scale: int, what: str) -> None:
    """cols / scale must be idempotent."""
    for img in cols.values():
        if img and not _vec_eq(_apply_columns(cols, img), _scale(img, scale)):
            raise ValidationFailed(f"{what} is not idempotent")


def _trace_of_product(P: dict, Q: dict, basis) -> CycInt:
    """trace(P o Q) from column dictionaries."""
    total = CycInt.from_int(0)
    for b in basis:
        for a, q in Q[b].items():
            p = P[a].get(b)
            if p is not None:
                total = total + p * q
    return total


def _corner_dim(P: dict, Q: dict, basis, scale: int, what: str) -> int:
    t = _trace_of_product(P, Q, basis).to_int()
    if t % scale:
        raise NonIntegralMultiplicity(f"{what}: trace {t} not divisible by {scale}")
    return t // scale


@dataclass
class OracleResult:
    sizes: list[int]
    corner_dims: IntMatrix
    algebra_corner_dims: IntMatrix
    multiplicities: IntMatrix

    @property
    def total_corner_dim(self) -> int:
        return sum(sum(r) for r in self.corner_dims.entries)


def oracle_decomposition(act: GroupAction, max_dim: int = DEFAULT_MAX_DIM) -> OracleResult:
    """Corner dimensions ``dim(z_i M z_j)`` and multiplicities, indexed [source block][range block]."""
    alg, mod = build_crossed(act, max_dim)
    idems = central_idempotents(act, max_dim)
    k = len(idems)
    sizes = [z.size for z in idems]
    mod_basis = list(mod.basis())
    alg_basis = list(alg.basis())

    # left and right multiplication by each idempotent, as sparse matrices
    left = [_columns(lambda xi, z=z: mod.left(z.kernel, xi), mod_basis) for z in idems]
    right = [_columns(lambda xi, z=z: mod.right(xi, z.kernel), mod_basis) for z in idems]
    for i, z in enumerate(idems):
        _check_projection(left[i], z.denominator, f"left multiplication by idempotent {i}")
        _check_projection(right[i], z.denominator, f"right multiplication by idempotent {i}")

    corner = [[0] * k for _ in range(k)]
    mult = [[0] * k for _ in range(k)]
    for i, zi in enumerate(idems):  # range side, acts on the left
        for j, zj in enumerate(idems):  # source side, acts on the right
            scale = zi.denominator * zj.denominator
            # the corner map xi -> z_i xi z_j is left o right; both orders must agree
            for b in mod_basis:
                if not _vec_eq(_apply_columns(left[i], right[j][b]), _apply_columns(right[j], left[i][b])):
                    raise ValidationFailed(f"corner map ({i},{j}) depends on the order of multiplication")
            dim = _corner_dim(left[i], right[j], mod_basis, scale, f"corner ({i},{j})")
            corner[j][i] = dim
            q, r = divmod(dim, sizes[i] * sizes[j])
            if r:
                raise NonIntegralMultiplicity(
                    f"corner ({i},{j}) has dimension {dim}, not a multiple of {sizes[i]}*{sizes[j]}"
                )
            mult[j][i] = q

    alg_left = [_columns(lambda f, z=z: alg.mul(z.kernel, f), alg_basis) for z in idems]
    alg_right = [_columns(lambda f, z=z: alg.mul(f, z.kernel), alg_basis) for z in idems]
    alg_corner = [[0] * k for _ in range(k)]
    for i, zi in enumerate(idems):
        for j, zj in enumerate(idems):
            alg_corner[j][i] = _corner_dim(
                alg_left[i], alg_right[j], alg_basis, zi.denominator * zj.denominator, f"algebra corner ({i},{j})"
            )
    return OracleResult(sizes, IntMatrix(corner, k, k), IntMatrix(alg_corner, k, k), IntMatrix(mult, k, k))


def oracle_multiplicities(act: GroupAction, max_dim: int = DEFAULT_MAX_DIM) -> IntMatrix:
    """Multiplicity matrix in canonical block order, oriented [from block][to block]."""
    return oracle_decomposition(act, max_dim).multiplicities


def check_axioms(act: GroupAction, samples: int | None = None, seed: int = 0) -> None:
    """Associativity, bimodule and inner-product compatibility on basis triples.

    Exhaustive when the number of triples is at most 10^5, otherwise
    ``samples`` (default 2000) random triples.
    """
    alg, mod = build_crossed(act, max_dim=10**9)
    ab, mb = list(alg.basis()), list(mod.basis())
    rng = random.Random(seed)
    exhaustive = len(ab) ** 3 <= 10**5 and len(ab) ** 2 * len(mb) <= 10**5
    n = samples or 2000

    def triples(pool1, pool2, pool3):
        if exhaustive:
            for a in pool1:
                for b in pool2:
                    for c in pool3:
                        yield a, b, c
        else:
            for _ in range(n):
                yield rng.choice(pool1), rng.choice(pool2), rng.choice(pool3)

    one = basis_vector
    for a, b, c in triples(ab, ab, ab):
        if not _vec_eq(alg.mul(alg.mul(one(a), one(b)), one(c)), alg.mul(one(a), alg.mul(one(b), one(c)))):
            raise ValidationFailed(f"algebra product not associative at {a}, {b}, {c}")
    for h, xi, f in triples(ab, mb, ab):
        if not _vec_eq(mod.right(mod.left(one(h), one(xi)), one(f)), mod.left(one(h), mod.right(one(xi), one(f)))):
            raise ValidationFailed(f"left and right actions do not commute at {h}, {xi}, {f}")
    for xi, eta, f in triples(mb, mb, ab):
        lhs = mod.inner(one(xi), mod.right(one(eta), one(f)))
        rhs = alg.mul(mod.inner(one(xi), one(eta)), one(f))
        if not _vec_eq(lhs, rhs):
            raise ValidationFailed(f"inner product is not right-linear at {xi}, {eta}, {f}")
    for h, h2, xi in triples(ab, ab, mb):
        lhs = mod.left(alg.mul(one(h), one(h2)), one(xi))
        rhs = mod.left(one(h), mod.left(one(h2), one(xi)))
        if not _vec_eq(lhs, rhs):
            raise ValidationFailed(f"left action is not multiplicative at {h}, {h2}, {xi}")
