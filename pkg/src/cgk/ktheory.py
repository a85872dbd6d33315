"""K-theory of finite graph algebras and stationary dimension groups.

Graph conventions: ``A[x][w]`` counts edges with source x and range w, and
the regular vertices are the ones receiving at least one edge.  Paths are
read against the edge direction (a vertex "sees" the sources of the edges it
receives), which is the convention under which the one-vertex-per-source
examples are ideals isomorphic to the compacts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .chartab import ClassFunction, dr_matrix
from .errors import NegativeEntries
from .exact import IntMatrix, coker_ker, rank, snf
from .gactgraph import Graph


@dataclass(frozen=True)
class KTheory:
    k0_free_rank: int
    k0_torsion: tuple[int, ...]
    k1_rank: int

    def to_json(self) -> dict:
        return {"K0": {"free": self.k0_free_rank, "torsion": list(self.k0_torsion)}, "K1": {"free": self.k1_rank}}

    @classmethod
    def from_json(cls, d: dict) -> KTheory:
        return cls(d["K0"]["free"], tuple(d["K0"]["torsion"]), d["K1"]["free"])

    def __add__(self, other: KTheory) -> KTheory:
        # Z_2 + Z_3 = Z_6: renormalize the torsion to invariant factors
        tors = self.k0_torsion + other.k0_torsion
        D = IntMatrix([[tors[i] if i == j else 0 for j in range(len(tors))] for i in range(len(tors))], len(tors), len(tors))
        factors = tuple(f for f in snf(D).invariant_factors if f > 1)
        return KTheory(self.k0_free_rank + other.k0_free_rank, factors, self.k1_rank + other.k1_rank)

    @staticmethod
    def _group(free: int, torsion: Sequence[int]) -> str:
        parts = []
        if free == 1:
            parts.append("Z")
        elif free > 1:
            parts.append(f"Z^{free}")
        parts.extend(f"Z_{d}" for d in torsion)
        return " ⊕ ".join(parts) if parts else "0"

    @property
    def k0_str(self) -> str:
        return self._group(self.k0_free_rank, self.k0_torsion)

    @property
    def k1_str(self) -> str:
        return self._group(self.k1_rank, ())

    def __str__(self) -> str:
        return f"K0 = {self.k0_str}, K1 = {self.k1_str}"


def vertex_matrix(E: Graph) -> IntMatrix:
    n = E.n_vertices
    A = [[0] * n for _ in range(n)]
    for e in E.edges:
        A[e.src][e.rng] += 1
    return IntMatrix(A, n, n)


def regular_vertices(E: Graph) -> list[int]:
    receivers = {e.rng for e in E.edges}
    return [v for v in range(E.n_vertices) if v in receivers]


def k_theory_matrix(E: Graph) -> IntMatrix:
    """Rows: all vertices; columns: receiving vertices; entry delta(x,w) - A[x][w]."""
    A = vertex_matrix(E)
    reg = regular_vertices(E)
    return IntMatrix(
        [[int(x == w) - A[x, w] for w in reg] for x in range(E.n_vertices)], E.n_vertices, len(reg)
    )


def graph_k_theory(E: Graph) -> KTheory:
    free, torsion, ker = coker_ker(k_theory_matrix(E))
    return KTheory(free, tuple(torsion), ker)


def dr_graph(G, chi_rho: ClassFunction) -> Graph:
    B = dr_matrix(G, chi_rho)
    return Graph.from_matrix(B, [f"irr{i}" for i in range(B.rows)])


def dr_k_theory(G, chi_rho: ClassFunction) -> KTheory:
    return graph_k_theory(dr_graph(G, chi_rho))


def _predecessors(E: Graph) -> list[set[int]]:
    pred = [set() for _ in range(E.n_vertices)]
    for e in E.edges:
        pred[e.rng].add(e.src)
    return pred


def hereditary_saturated_closure(E: Graph, seed: Sequence[int]) -> frozenset[int]:
    """Smallest hereditary saturated vertex set containing ``seed``.

    Hereditary: closed under passing from a vertex to the sources of the
    edges it receives.  Saturated: a vertex receiving edges only from the
    set belongs to the set.
    """
    pred = _predecessors(E)
    H = set(seed)
    changed = True
    while changed:
        changed = False
        stack = list(H)
        while stack:
            v = stack.pop()
            for u in pred[v]:
                if u not in H:
                    H.add(u)
                    stack.append(u)
        for v in range(E.n_vertices):
            if v not in H and pred[v] and pred[v] <= H:
                H.add(v)
                changed = True
    return frozenset(H)


def condition_l(E: Graph) -> bool:
    """Every cycle has an exit, i.e. no cycle whose vertices each receive exactly one edge."""
    indeg = [0] * E.n_vertices
    unique_in = [-1] * E.n_vertices
    for e in E.edges:
        indeg[e.rng] += 1
        unique_in[e.rng] = e.src
    for v in range(E.n_vertices):
        if indeg[v] != 1:
            continue
        u = v
        for _ in range(E.n_vertices):
            u = unique_in[u]
            if indeg[u] != 1:
                break
            if u == v:
                return False
    return True


def has_cycle(E: Graph) -> bool:
    n = E.n_vertices
    succ = [[] for _ in range(n)]
    for e in E.edges:
        succ[e.src].append(e.rng)
    state = [0] * n
    for s in range(n):
        if state[s]:
            continue
        stack = [(s, iter(succ[s]))]
        state[s] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[v] = 2
                stack.pop()
            elif state[nxt] == 1:
                return True
            elif state[nxt] == 0:
                state[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
    return False


class GraphProps(NamedTuple):
    simple: bool
    purely_infinite: bool


def graph_algebra_props(E: Graph) -> GraphProps:
    n = E.n_vertices
    if n == 0:
        return GraphProps(False, False)
    simple = condition_l(E) and all(len(hereditary_saturated_closure(E, [v])) == n for v in range(n))
    return GraphProps(simple, simple and has_cycle(E))


@dataclass(frozen=True)
class DimGroupPresentation:
    k: int
    B: IntMatrix
    stable_rank: int

    def to_json(self) -> dict:
        return {"k": self.k, "B": self.B.tolist(), "stable_rank": self.stable_rank}


@dataclass(frozen=True)
class LimitElement:
    vector: tuple[int, ...]
    stage: int


def dim_group(B: IntMatrix) -> DimGroupPresentation:
    """Presentation of lim(Z^k, B); connecting maps x -> B x."""
    if B.rows != B.cols:
        raise ValueError("connecting matrix must be square")
    if any(x < 0 for r in B.entries for x in r):
        raise NegativeEntries("connecting matrix has negative entries")
    k = B.rows
    return DimGroupPresentation(k, B, rank(B ** k))


def limit_equal(p: DimGroupPresentation, x: LimitElement, y: LimitElement) -> bool:
    t = max(x.stage, y.stage)
    xv = (p.B ** (t - x.stage)).apply(x.vector)
    yv = (p.B ** (t - y.stage)).apply(y.vector)
    diff = tuple(a - b for a, b in zip(xv, yv))
    return not any((p.B ** p.k).apply(diff))
