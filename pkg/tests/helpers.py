"""Shared fixtures: bundled problems and random small group actions."""

from __future__ import annotations

import os
import random
from itertools import combinations
from pathlib import Path

from cgk.fingroup import PermGroup, abelian_group, close, cyclic_group, dihedral_group, symmetric_group
from cgk.gactgraph import Graph, GroupAction, validate_action
from cgk.problem import load_problem

ROOT = Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"
SEED = int(os.environ.get("CGK_SEED", "20240611"))

# one "PASS/FAIL criterion N" line per acceptance criterion, printed in the summary
ACCEPTANCE_LINES: list[str] = []


def problem_action(name: str) -> GroupAction:
    return load_problem(PROBLEMS / f"{name}.json").action()


def quaternion_group() -> PermGroup:
    # left-regular representation on {±1, ±i, ±j, ±k} encoded 0..7
    i = [2, 3, 1, 0, 6, 7, 5, 4]
    j = [4, 5, 7, 6, 1, 0, 2, 3]
    return close([i, j])


def small_groups() -> list[tuple[str, PermGroup]]:
    out = [(f"Z{n}", cyclic_group(n)) for n in range(1, 9)]
    out += [
        ("Z2xZ2", abelian_group([2, 2])),
        ("Z2xZ4", abelian_group([2, 4])),
        ("Z2^3", abelian_group([2, 2, 2])),
        ("S3", symmetric_group(3)),
        ("D4", dihedral_group(4)),
        ("Q8", quaternion_group()),
    ]
    return out


def subgroups(G: PermGroup) -> list[tuple[int, ...]]:
    """All subgroups (as sorted member tuples) of a group of order <= 8."""
    found = {tuple(range(G.order)), (0,)}
    elems = range(G.order)
    for a, b in combinations(elems, 2):
        found.add(_generated(G, [a, b]))
    for a in elems:
        found.add(_generated(G, [a]))
    return sorted(found, key=lambda s: (len(s), s))


def _generated(G: PermGroup, gens) -> tuple[int, ...]:
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = G.mul(x, s)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return tuple(sorted(seen))


def _cosets(G: PermGroup, H: tuple[int, ...]):
    cos, where = [], {}
    for g in range(G.order):
        if g in where:
            continue
        c = tuple(sorted(G.mul(g, h) for h in H))
        for x in c:
            where[x] = len(cos)
        cos.append(c)
    return cos, where


def random_action(rng: random.Random, max_v: int = 5, max_e: int = 8, free: bool = False) -> GroupAction:
    """A random action of a group of order <= 8 built from coset spaces."""
    while True:
        name, G = rng.choice(small_groups())
        subs = subgroups(G)
        vsubs = [(0,)] if free else [H for H in subs if G.order // len(H) <= max_v]
        # vertex orbits: G/H; point (k, c) = coset c of the k-th orbit
        vorbs = []
        nv = 0
        for _ in range(rng.randint(1, 3)):
            H = rng.choice(vsubs)
            cos, where = _cosets(G, H)
            if nv + len(cos) > max_v:
                continue
            vorbs.append((nv, cos, where))
            nv += len(cos)
        if not vorbs:
            continue
        stab = {}
        for base, cos, _ in vorbs:
            for c, members in enumerate(cos):
                g0 = members[0]
                stab[base + c] = {G.mul(G.mul(g0, h), G.inv(g0)) for h in _coset_subgroup(G, members)}
        def act_v(g, p):
            for base, cos, where in vorbs:
                if base <= p < base + len(cos):
                    return base + where[G.mul(g, cos[p - base][0])]
            raise AssertionError
        edges = []  # (src, rng) per edge, plus per-edge action table
        eorbs = []
        for _ in range(rng.randint(1, 3)):
            x, y = rng.randrange(nv), rng.randrange(nv)
            common = tuple(sorted(stab[x] & stab[y]))
            if free:
                K = (0,)
            else:
                K = rng.choice([H for H in subs if set(H) <= set(common)])
            cos, where = _cosets(G, K)
            if len(edges) + len(cos) > max_e:
                continue
            base = len(edges)
            for members in cos:
                g = members[0]
                edges.append((act_v(g, x), act_v(g, y)))
            eorbs.append((base, cos, where))
        if not edges:
            continue
        def act_e(g, e):
            for base, cos, where in eorbs:
                if base <= e < base + len(cos):
                    return base + where[G.mul(g, cos[e - base][0])]
            raise AssertionError
        graph = Graph.from_names(
            [f"v{p}" for p in range(nv)], [(f"e{i}", f"v{s}", f"v{r}") for i, (s, r) in enumerate(edges)]
        )
        gens = G.generator_indices
        maps = [([act_v(s, p) for p in range(nv)], [act_e(s, e) for e in range(len(edges))]) for s in gens]
        return validate_action(
            graph, maps, abstract_generators=[G.elements[s] for s in gens], abstract_degree=G.degree,
            names=[f"{name}.{i}" for i in range(len(gens))],
        )


def _coset_subgroup(G: PermGroup, coset: tuple[int, ...]) -> tuple[int, ...]:
    """H from the coset g0 H (g0 = first member)."""
    g0i = G.inv(coset[0])
    return tuple(G.mul(g0i, x) for x in coset)
