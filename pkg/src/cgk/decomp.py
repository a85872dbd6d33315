"""Graph of minimal correspondences for a finite group acting on a finite graph.

Stage one groups vertices and edges into orbits; stage two splits every
vertex orbit by the irreducible characters of its stabilizer.  A block
``(v, pi)`` carries the matrix algebra ``M_n`` with ``n = |Gv| * deg(pi)``.
For an edge orbit with representative ``e`` the number of minimal
correspondences from block ``(w, sigma)`` to block ``(v, pi)`` is the
multiplicity shared by ``pi`` and ``sigma`` after both are moved to the
endpoints of ``e`` and restricted to the edge stabilizer ``G_e``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .chartab import character_table, inner_product, restrict, transport
from .exact import IntMatrix
from .fingroup import transporter
from .gactgraph import Edge, Graph, GroupAction


@dataclass(frozen=True)
class Block:
    orbit: int
    vertex: int
    vertex_name: str
    orbit_size: int
    stabilizer: tuple[int, ...]
    irrep: int
    degree: int

    @property
    def size(self) -> int:
        return self.orbit_size * self.degree

    def to_json(self) -> dict:
        return {
            "orbit": self.orbit,
            "vertex": self.vertex_name,
            "vertex_index": self.vertex,
            "orbit_size": self.orbit_size,
            "stabilizer_order": len(self.stabilizer),
            "stabilizer": list(self.stabilizer),
            "irrep": self.irrep,
            "degree": self.degree,
            "size": self.size,
        }

    @classmethod
    def from_json(cls, d: dict) -> Block:
        return cls(d["orbit"], d["vertex_index"], d["vertex"], d["orbit_size"], tuple(d["stabilizer"]), d["irrep"], d["degree"])


@dataclass(frozen=True)
class CorrEdge:
    source: int
    target: int
    multiplicity: int
    orbit: int


@dataclass(frozen=True)
class EdgeOrbit:
    representative: str
    size: int
    stabilizer_order: int


@dataclass(frozen=True)
class CorrGraph:
    blocks: tuple[Block, ...]
    edges: tuple[CorrEdge, ...]
    edge_orbits: tuple[EdgeOrbit, ...]
    group_order: int
    n_vertices: int
    n_edges: int

    @property
    def sizes(self) -> list[int]:
        return [b.size for b in self.blocks]

    @property
    def A(self) -> IntMatrix:
        """A[j][i] = number of minimal correspondences from block j to block i."""
        k = len(self.blocks)
        A = [[0] * k for _ in range(k)]
        for e in self.edges:
            A[e.source][e.target] += e.multiplicity
        return IntMatrix(A, k, k)

    def to_json(self) -> dict:
        return {
            "group_order": self.group_order,
            "n_vertices": self.n_vertices,
            "n_edges": self.n_edges,
            "blocks": [b.to_json() for b in self.blocks],
            "edge_orbits": [
                {"representative": o.representative, "size": o.size, "stabilizer_order": o.stabilizer_order}
                for o in self.edge_orbits
            ],
            "edges": [
                {"source": e.source, "target": e.target, "multiplicity": e.multiplicity, "orbit": e.orbit}
                for e in self.edges
            ],
            "sizes": self.sizes,
            "matrix": self.A.tolist(),
        }

    @classmethod
    def from_json(cls, d: dict) -> CorrGraph:
        return cls(
            tuple(Block.from_json(b) for b in d["blocks"]),
            tuple(CorrEdge(e["source"], e["target"], e["multiplicity"], e["orbit"]) for e in d["edges"]),
            tuple(EdgeOrbit(o["representative"], o["size"], o["stabilizer_order"]) for o in d["edge_orbits"]),
            d["group_order"],
            d["n_vertices"],
            d["n_edges"],
        )


def vertex_algebra_summary(act: GroupAction) -> list[list[Block]]:
    """Blocks of C0(E^0) x| G, one list per vertex orbit."""
    out = []
    for k, orb in enumerate(act.vertex_orbits):
        v = orb[0]
        stab = act.vertex_stabilizer(v)
        table = character_table(stab)
        out.append(
            [
                Block(k, v, act.graph.vertices[v], len(orb), stab.members, i, d)
                for i, d in enumerate(table.degrees)
            ]
        )
    return out


def blocks_label(blocks: Sequence[Block]) -> str:
    return " ⊕ ".join("C" if b.size == 1 else f"M_{b.size}" for b in blocks)


def corr_graph(act: GroupAction, rng: random.Random | None = None) -> CorrGraph:
    """Decompose the crossed-product correspondence into minimal pieces.

    With ``rng`` the edge-orbit representatives and transport elements are
    drawn at random; the result must not depend on those choices.
    """
    G = act.group
    graph = act.graph
    grouped = vertex_algebra_summary(act)
    blocks = [b for grp in grouped for b in grp]
    first_block = []
    pos = 0
    for grp in grouped:
        first_block.append(pos)
        pos += len(grp)
    vorb = act.vertex_orbit_of
    edges: list[CorrEdge] = []
    orbit_info = []
    for k, orb in enumerate(act.edge_orbits):
        e = rng.choice(orb) if rng else orb[0]
        edge = graph.edges[e]
        ow, ov = vorb[edge.src], vorb[edge.rng]
        w, v = act.vertex_orbits[ow][0], act.vertex_orbits[ov][0]
        a_s_all = transporter(G, act.vertex_action, edge.src, w)
        a_r_all = transporter(G, act.vertex_action, edge.rng, v)
        a_s = rng.choice(a_s_all) if rng else a_s_all[0]
        a_r = rng.choice(a_r_all) if rng else a_r_all[0]
        G_e = act.edge_stabilizer(e)
        orbit_info.append(EdgeOrbit(graph.edges[orb[0]].name, len(orb), G_e.order))
        src_table = character_table(G.subgroup(grouped[ow][0].stabilizer))
        rng_table = character_table(G.subgroup(grouped[ov][0].stabilizer))
        src_res = [restrict(transport(s, a_s), G_e) for s in src_table.irreducibles]
        rng_res = [restrict(transport(p, a_r), G_e) for p in rng_table.irreducibles]
        for si, sig in enumerate(src_res):
            for pi, pch in enumerate(rng_res):
                m = inner_product(pch, sig)
                if m:
                    edges.append(CorrEdge(first_block[ow] + si, first_block[ov] + pi, m, k))
    return CorrGraph(tuple(blocks), tuple(edges), tuple(orbit_info), G.order, graph.n_vertices, graph.n_edges)


def skeleton(cg: CorrGraph) -> Graph:
    """Ordinary multigraph: one vertex per block, one edge per minimal correspondence."""
    verts = tuple(f"{b.vertex_name}.{b.irrep}" for b in cg.blocks)
    edges = []
    for ce in cg.edges:
        for t in range(ce.multiplicity):
            edges.append(Edge(f"orb{ce.orbit}_{ce.source}to{ce.target}_{t}", ce.source, ce.target))
    return Graph(verts, tuple(edges))


@dataclass
class AuditReport:
    ok: bool
    vertex_total: tuple[int, int]
    edge_total: tuple[int, int]
    orbit_totals: list[tuple[int, int]] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)


def dimension_audit(cg: CorrGraph) -> AuditReport:
    n = cg.sizes
    g = cg.group_order
    vt = (sum(x * x for x in n), g * cg.n_vertices)
    et = (sum(ce.multiplicity * n[ce.source] * n[ce.target] for ce in cg.edges), g * cg.n_edges)
    failures = []
    if vt[0] != vt[1]:
        failures.append(f"vertex dimensions {vt[0]} != {vt[1]}")
    if et[0] != et[1]:
        failures.append(f"edge dimensions {et[0]} != {et[1]}")
    per_orbit = []
    for k, orb in enumerate(cg.edge_orbits):
        got = sum(ce.multiplicity * n[ce.source] * n[ce.target] for ce in cg.edges if ce.orbit == k)
        want = (g // orb.stabilizer_order) * g
        per_orbit.append((got, want))
        if got != want:
            failures.append(f"edge orbit {k} ({orb.representative}): {got} != {want}")
    return AuditReport(not failures, vt, et, per_orbit, failures)


def match_up_to_permutation(
    A: IntMatrix, B: IntMatrix | Sequence[Sequence[int]], sizes_a=None, sizes_b=None
) -> tuple[int, ...] | None:
    """Find perm with A.permuted(perm) == B (and matching block sizes), else None."""
    B = B if isinstance(B, IntMatrix) else IntMatrix(B)
    k = A.rows
    if B.shape != A.shape:
        return None
    sa = list(sizes_a) if sizes_a is not None else [0] * k
    sb = list(sizes_b) if sizes_b is not None else [0] * k
    perm: list[int] = []
    used = [False] * k

    def extend(i: int) -> bool:
        if i == k:
            return True
        for c in range(k):
            if used[c] or sa[c] != sb[i]:
                continue
            perm.append(c)
            if all(A[perm[x], perm[y]] == B[x, y] for x in range(i + 1) for y in range(i + 1) if x == i or y == i):
                used[c] = True
                if extend(i + 1):
                    return True
                used[c] = False
            perm.pop()
        return False

    return tuple(perm) if extend(0) else None


def graphs_isomorphic(E: Graph, F: Graph) -> bool:
    from .ktheory import vertex_matrix

    return match_up_to_permutation(vertex_matrix(E), vertex_matrix(F)) is not None


__all__ = [
    "AuditReport",
    "Block",
    "CorrEdge",
    "CorrGraph",
    "EdgeOrbit",
    "blocks_label",
    "corr_graph",
    "dimension_audit",
    "graphs_isomorphic",
    "match_up_to_permutation",
    "skeleton",
    "vertex_algebra_summary",
]
