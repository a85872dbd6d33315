"""Finite directed multigraphs, group actions on them, quotients and skew products.

Edges go from ``src`` to ``rng``.  Edge identity is by name, so parallel
edges and loops are first-class.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .errors import BoundExceeded, NotCompatible, NotWellDefined
from .fingroup import DEFAULT_BOUND, Perm, PermGroup, Subgroup, close, orbits, stabilizer


@dataclass(frozen=True)
class Edge:
    name: str
    src: int
    rng: int


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex names must be unique")
        if len({e.name for e in self.edges}) != len(self.edges):
            raise ValueError("edge names must be unique")
        n = len(self.vertices)
        for e in self.edges:
            if not (0 <= e.src < n and 0 <= e.rng < n):
                raise ValueError(f"edge {e.name} has an endpoint out of range")

    @classmethod
    def from_names(cls, vertices: Sequence[str], edges: Sequence[tuple[str, str, str]]) -> Graph:
        """Build from (name, src name, rng name) triples."""
        idx = {v: i for i, v in enumerate(vertices)}
        try:
            es = tuple(Edge(n, idx[s], idx[r]) for n, s, r in edges)
        except KeyError as exc:
            raise ValueError(f"unknown vertex {exc.args[0]!r}") from None
        return cls(tuple(vertices), es)

    @classmethod
    def from_matrix(cls, A, vertex_names: Sequence[str] | None = None) -> Graph:
        """A[x][w] parallel edges from x to w."""
        rows = A.tolist() if hasattr(A, "tolist") else [list(r) for r in A]
        n = len(rows)
        names = tuple(vertex_names) if vertex_names else tuple(f"v{i}" for i in range(n))
        edges = []
        for x in range(n):
            for w in range(n):
                for t in range(rows[x][w]):
                    edges.append(Edge(f"e{x}_{w}_{t}", x, w))
        return cls(names, tuple(edges))

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertex_index(self, name: str) -> int:
        return self.vertices.index(name)

    @cached_property
    def edge_index(self) -> dict[str, int]:
        return {e.name: i for i, e in enumerate(self.edges)}

    def in_edges(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e.rng == v]

    def out_edges(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e.src == v]

    def disjoint_union(self, other: Graph, tags: tuple[str, str] = ("a", "b")) -> Graph:
        n = self.n_vertices
        verts = tuple(f"{tags[0]}.{v}" for v in self.vertices) + tuple(f"{tags[1]}.{v}" for v in other.vertices)
        edges = tuple(Edge(f"{tags[0]}.{e.name}", e.src, e.rng) for e in self.edges) + tuple(
            Edge(f"{tags[1]}.{e.name}", e.src + n, e.rng + n) for e in other.edges
        )
        return Graph(verts, edges)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"name": e.name, "src": self.vertices[e.src], "rng": self.vertices[e.rng]} for e in self.edges],
        }


def _is_automorphism(graph: Graph, vp: Sequence[int], ep: Sequence[int]) -> bool:
    return all(
        graph.edges[ep[i]].src == vp[e.src] and graph.edges[ep[i]].rng == vp[e.rng]
        for i, e in enumerate(graph.edges)
    )


@dataclass
class GroupAction:
    """A finite group acting on a graph by (vertex perm, edge perm) pairs.

    ``vertex_perms[g]`` and ``edge_perms[g]`` are the images of group element
    index ``g``; the map g -> (vertex perm, edge perm) is a homomorphism.
    """

    group: PermGroup
    graph: Graph
    vertex_perms: tuple[Perm, ...]
    edge_perms: tuple[Perm, ...]
    generator_names: tuple[str, ...] = field(default=())

    def vertex_action(self, g: int) -> Perm:
        return self.vertex_perms[g]

    def edge_action(self, g: int) -> Perm:
        return self.edge_perms[g]

    def act_vertex(self, g: int, v: int) -> int:
        return self.vertex_perms[g][v]

    def act_edge(self, g: int, e: int) -> int:
        return self.edge_perms[g][e]

    @cached_property
    def vertex_orbits(self) -> list[list[int]]:
        return orbits(self.group, self.vertex_action, self.graph.n_vertices)

    @cached_property
    def edge_orbits(self) -> list[list[int]]:
        return orbits(self.group, self.edge_action, self.graph.n_edges)

    @cached_property
    def vertex_orbit_of(self) -> tuple[int, ...]:
        out = [0] * self.graph.n_vertices
        for k, orb in enumerate(self.vertex_orbits):
            for v in orb:
                out[v] = k
        return tuple(out)

    @cached_property
    def edge_orbit_of(self) -> tuple[int, ...]:
        out = [0] * self.graph.n_edges
        for k, orb in enumerate(self.edge_orbits):
            for e in orb:
                out[e] = k
        return tuple(out)

    def vertex_stabilizer(self, v: int) -> Subgroup:
        return stabilizer(self.group, self.vertex_action, v)

    def edge_stabilizer(self, e: int) -> Subgroup:
        return stabilizer(self.group, self.edge_action, e)

    def check(self) -> None:
        """Re-verify automorphism and homomorphism properties for every element."""
        G = self.group
        for g in range(G.order):
            if not _is_automorphism(self.graph, self.vertex_perms[g], self.edge_perms[g]):
                raise NotCompatible(f"element {g} does not preserve incidences")
        for s in G.generator_indices:
            for g in range(G.order):
                h = G.mul(g, s)
                if (
                    self.vertex_perms[h] != self.vertex_perms[g] * self.vertex_perms[s]
                    or self.edge_perms[h] != self.edge_perms[g] * self.edge_perms[s]
                ):
                    raise NotWellDefined("images do not form a homomorphism")


def _check_generator(graph: Graph, name: str, vp: Perm, ep: Perm) -> None:
    for i, e in enumerate(graph.edges):
        f = graph.edges[ep[i]]
        if f.src != vp[e.src] or f.rng != vp[e.rng]:
            raise NotCompatible(
                f"generator {name}: edge {e.name} ({graph.vertices[e.src]}->{graph.vertices[e.rng]}) maps to "
                f"{f.name} ({graph.vertices[f.src]}->{graph.vertices[f.rng]}), expected "
                f"{graph.vertices[vp[e.src]]}->{graph.vertices[vp[e.rng]]}"
            )


def _as_perm(m: Mapping[str, str] | Sequence[int], names: Sequence[str], what: str) -> Perm:
    if isinstance(m, Mapping):
        idx = {v: i for i, v in enumerate(names)}
        images = list(range(len(names)))
        for k, v in m.items():
            if k not in idx or v not in idx:
                raise ValueError(f"unknown {what} {k if k not in idx else v!r}")
            images[idx[k]] = idx[v]
    else:
        images = list(m)
    try:
        return Perm(images)
    except ValueError:
        raise ValueError(f"{what} map is not a bijection") from None


def validate_action(
    graph: Graph,
    generator_maps: Sequence[tuple[Mapping | Sequence[int], Mapping | Sequence[int]]],
    abstract_generators: Sequence[Sequence[int]] | None = None,
    abstract_degree: int | None = None,
    bound: int = DEFAULT_BOUND,
    names: Sequence[str] | None = None,
) -> GroupAction:
    """Build a validated GroupAction.

    Without ``abstract_generators`` the group is the closure of the
    (vertex perm, edge perm) pairs, hence acts faithfully.  With them, the
    abstract group is enumerated and each element's image is obtained by
    tracking words; an element reached with two different images raises
    NotWellDefined.
    """
    nv, ne = graph.n_vertices, graph.n_edges
    names = tuple(names) if names else tuple(f"g{i}" for i in range(len(generator_maps)))
    gens = []
    for name, (vm, em) in zip(names, generator_maps):
        vp = _as_perm(vm, graph.vertices, "vertex")
        ep = _as_perm(em, [e.name for e in graph.edges], "edge")
        if len(vp) != nv or len(ep) != ne:
            raise ValueError(f"generator {name}: wrong map size")
        _check_generator(graph, name, vp, ep)
        gens.append((vp, ep))

    if abstract_generators is None:
        combined = [Perm(tuple(vp) + tuple(nv + j for j in ep)) for vp, ep in gens]
        G = close(combined, bound=bound, degree=max(nv + ne, 1))
        vperms = tuple(Perm._trusted(p[:nv]) for p in G.elements)
        eperms = tuple(Perm._trusted(x - nv for x in p[nv:nv + ne]) for p in G.elements)
        return GroupAction(G, graph, vperms, eperms, names)

    if len(abstract_generators) != len(gens):
        raise ValueError("abstract group needs one generator per generator map")
    agens = [Perm(g) for g in abstract_generators]
    degree = abstract_degree if abstract_degree is not None else (len(agens[0]) if agens else 1)
    if any(len(g) != degree for g in agens):
        raise ValueError("abstract generators do not match the declared degree")
    ident = Perm.identity(degree)
    image = {ident: (Perm.identity(nv), Perm.identity(ne))}
    order = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        ix = image[x]
        for s, (vp, ep) in zip(agens, gens):
            y = x * s
            iy = (ix[0] * vp, ix[1] * ep)
            prev = image.get(y)
            if prev is None:
                image[y] = iy
                order.append(y)
                if len(order) > bound:
                    raise BoundExceeded(f"group order exceeds bound {bound}")
                queue.append(y)
            elif prev != iy:
                raise NotWellDefined(f"element {list(y)} receives two different graph images")
    G = PermGroup(degree, agens, order)
    return GroupAction(G, graph, tuple(image[p][0] for p in order), tuple(image[p][1] for p in order), names)


def trivial_action(graph: Graph, group: PermGroup | None = None) -> GroupAction:
    """The given group (default: trivial) acting trivially on the graph."""
    G = group if group is not None else close([], degree=1)
    vp, ep = Perm.identity(graph.n_vertices), Perm.identity(graph.n_edges)
    return GroupAction(G, graph, (vp,) * G.order, (ep,) * G.order)


def quotient_graph(act: GroupAction) -> Graph:
    """Vertex orbits and edge orbits, named after their minimal representatives."""
    g = act.graph
    vo = act.vertex_orbit_of
    verts = tuple(g.vertices[orb[0]] for orb in act.vertex_orbits)
    edges = []
    for orb in act.edge_orbits:
        e = g.edges[orb[0]]
        edges.append(Edge(e.name, vo[e.src], vo[e.rng]))
    return Graph(verts, tuple(edges))


def is_free(act: GroupAction) -> bool:
    for g in range(1, act.group.order):
        if act.vertex_perms[g].fixed_points() or act.edge_perms[g].fixed_points():
            return False
    return True


@dataclass(frozen=True)
class Cocycle:
    """Edge labels in the dual of Z_{m1} x ... x Z_{mr}, as residue tuples."""

    abelian: tuple[int, ...]
    assignment: Mapping[str, tuple[int, ...]]

    def __post_init__(self):
        if any(m < 1 for m in self.abelian):
            raise ValueError("abelian invariant factors must be positive")
        for name, k in self.assignment.items():
            if len(k) != len(self.abelian) or any(not 0 <= x < m for x, m in zip(k, self.abelian)):
                raise ValueError(f"cocycle value for {name!r} out of range")

    def value(self, edge_name: str) -> tuple[int, ...]:
        return tuple(self.assignment.get(edge_name, (0,) * len(self.abelian)))

    def characters(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(m) for m in self.abelian)))


def _chi_label(chi: Sequence[int]) -> str:
    return ",".join(map(str, chi))


def skew_product(E: Graph, c: Cocycle) -> Graph:
    """Vertices (chi, v); edge (chi, e) runs from (chi, s(e)) to (chi + c(e), r(e))."""
    chars = c.characters()
    pos = {chi: i for i, chi in enumerate(chars)}
    n = E.n_vertices
    verts = tuple(f"{v}@{_chi_label(chi)}" for chi in chars for v in E.vertices)
    edges = []
    for chi in chars:
        for e in E.edges:
            shift = tuple((a + b) % m for a, b, m in zip(chi, c.value(e.name), c.abelian))
            edges.append(Edge(f"{e.name}@{_chi_label(chi)}", pos[chi] * n + e.src, pos[shift] * n + e.rng))
    return Graph(verts, tuple(edges))


def cycle_graph(n: int) -> Graph:
    """Cyclic Cayley graph of Z_n: edge i -> i+1."""
    return Graph.from_names([f"v{i}" for i in range(n)], [(f"e{i}", f"v{i}", f"v{(i + 1) % n}") for i in range(n)])


def cayley_action(n: int) -> GroupAction:
    """Z_n rotating its cyclic Cayley graph."""
    g = cycle_graph(n)
    rot = [(i + 1) % n for i in range(n)]
    return validate_action(g, [(rot, rot)], names=["r"])
