"""Finite permutation groups by full element enumeration.

Composition convention: ``(p * q)(i) == p[q[i]]`` (apply q first), so
``g.act(h.act(x)) == (g * h).act(x)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Callable, Iterable, Sequence

from .errors import BoundExceeded
from .exact import lcm

DEFAULT_BOUND = 20000


class Perm(tuple):
    """A permutation of {0..d-1} in one-line notation."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        p = super().__new__(cls, images)
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"not a permutation: {list(p)}")
        return p

    @classmethod
    def _trusted(cls, images: Iterable[int]) -> Perm:
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, d: int) -> Perm:
        return cls._trusted(range(d))

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: Perm) -> Perm:
        return Perm._trusted(self[i] for i in other)

    def inverse(self) -> Perm:
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Perm._trusted(inv)

    __invert__ = inverse

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self)
        out = []
        for s in range(len(self)):
            if seen[s]:
                continue
            cyc = []
            i = s
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self[i]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return reduce(lcm, (len(c) for c in self.cycles()), 1)

    def fixed_points(self) -> int:
        return sum(1 for i, j in enumerate(self) if i == j)

    def __pow__(self, k: int) -> Perm:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Perm.identity(len(self)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self) -> str:
        return f"Perm({list(self)})"


class PermGroup:
    """A finite group given by the complete list of its elements.

    Element 0 is always the identity.  Elements are addressed by index.
    """

    def __init__(self, degree: int, generators: Sequence[Perm], elements: Sequence[Perm]):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self._index = {p: i for i, p in enumerate(self.elements)}
        self._subgroups: dict[tuple[int, ...], Subgroup] = {}

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"

    def index(self, p: Sequence[int]) -> int:
        return self._index[p if isinstance(p, Perm) else Perm(p)]

    def __contains__(self, p) -> bool:
        return tuple(p) in self._index

    @cached_property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(self._index[g] for g in self.generators)

    @cached_property
    def _table(self) -> list[list[int]] | None:
        if self.order > 2048:
            return None
        idx, els = self._index, self.elements
        return [[idx[a * b] for b in els] for a in els]

    def mul(self, i: int, j: int) -> int:
        t = self._table
        if t is not None:
            return t[i][j]
        return self._index[self.elements[i] * self.elements[j]]

    @cached_property
    def _inverses(self) -> tuple[int, ...]:
        return tuple(self._index[p.inverse()] for p in self.elements)

    def inv(self, i: int) -> int:
        return self._inverses[i]

    def conj(self, a: int, x: int) -> int:
        """a * x * a^-1."""
        return self.mul(self.mul(a, x), self.inv(a))

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        return tuple(p.order() for p in self.elements)

    def power(self, i: int, k: int) -> int:
        return self._index[self.elements[i] ** k]

    @cached_property
    def exponent(self) -> int:
        return reduce(lcm, self.element_orders, 1)

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    @cached_property
    def classes(self) -> ConjClasses:
        return conjugacy_classes(self)

    # local/parent index protocol shared with Subgroup
    @property
    def root(self) -> PermGroup:
        return self

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(range(self.order))

    def as_group(self) -> PermGroup:
        return self

    def local_index(self, parent_index: int) -> int:
        return parent_index

    def subgroup(self, members: Iterable[int]) -> Subgroup:
        key = tuple(sorted(set(members)))
        sub = self._subgroups.get(key)
        if sub is None:
            sub = Subgroup(self, key)
            self._subgroups[key] = sub
        return sub

    def whole(self) -> Subgroup:
        return self.subgroup(range(self.order))


def close(generators: Sequence[Sequence[int]], bound: int = DEFAULT_BOUND, degree: int | None = None) -> PermGroup:
    """Enumerate the group generated by ``generators`` (breadth-first)."""
    gens = [g if isinstance(g, Perm) else Perm(g) for g in generators]
    if degree is None:
        if not gens:
            raise ValueError("degree is required when there are no generators")
        degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise ValueError("generators have different degrees")
    ident = Perm.identity(degree)
    elements = [ident]
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = x * s
            if y not in seen:
                seen.add(y)
                elements.append(y)
                if len(elements) > bound:
                    raise BoundExceeded(f"group order exceeds bound {bound}")
                queue.append(y)
    return PermGroup(degree, gens, elements)


class Subgroup:
    """A subgroup stored as sorted member indices into the parent enumeration."""

    def __init__(self, parent: PermGroup, members: tuple[int, ...]):
        self.parent = parent
        self.members = members
        self._local = {p: i for i, p in enumerate(members)}

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, parent_index: int) -> bool:
        return parent_index in self._local

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and other.parent is self.parent and other.members == self.members

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, members={list(self.members)})"

    @property
    def root(self) -> PermGroup:
        return self.parent

    def local_index(self, parent_index: int) -> int:
        return self._local[parent_index]

    @cached_property
    def _group(self) -> PermGroup:
        els = [self.parent.elements[i] for i in self.members]
        gens = els[1:] if len(els) > 1 else []
        return PermGroup(self.parent.degree, gens, els)

    def as_group(self) -> PermGroup:
        """The subgroup as a standalone PermGroup (same element order as ``members``)."""
        return self._group

    @property
    def classes(self) -> ConjClasses:
        return self._group.classes

    def is_subgroup_of(self, other: Subgroup | PermGroup) -> bool:
        if isinstance(other, PermGroup):
            return other is self.parent
        return all(i in other for i in self.members)

    def conjugate(self, a: int) -> Subgroup:
        """a^-1 H a."""
        ai = self.parent.inv(a)
        return self.parent.subgroup(self.parent.conj(ai, h) for h in self.members)

    def is_closed(self) -> bool:
        P = self.parent
        return 0 in self and all(P.mul(a, b) in self for a in self.members for b in self.members)


@dataclass(frozen=True)
class ConjClasses:
    group: PermGroup
    class_of: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def __len__(self) -> int:
        return len(self.classes)


def conjugacy_classes(G: PermGroup) -> ConjClasses:
    n = G.order
    class_of = [-1] * n
    raw = []
    for x in range(n):
        if class_of[x] >= 0:
            continue
        cls = sorted({G.conj(a, x) for a in range(n)})
        for y in cls:
            class_of[y] = len(raw)
        raw.append(tuple(cls))
    orders = G.element_orders
    order = sorted(range(len(raw)), key=lambda c: (orders[raw[c][0]], len(raw[c]), raw[c][0]))
    relabel = {old: new for new, old in enumerate(order)}
    return ConjClasses(G, tuple(relabel[c] for c in class_of), tuple(raw[c] for c in order))


Action = Callable[[int], Sequence[int]]


def orbits(G: PermGroup, action: Action, n_points: int) -> list[list[int]]:
    """Orbit partition of {0..n_points-1}; each orbit sorted, orbits ordered by minimum."""
    gens = [action(i) for i in G.generator_indices]
    orbit_of = [-1] * n_points
    out = []
    for s in range(n_points):
        if orbit_of[s] >= 0:
            continue
        orb = [s]
        orbit_of[s] = len(out)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = g[x]
                if orbit_of[y] < 0:
                    orbit_of[y] = len(out)
                    orb.append(y)
                    queue.append(y)
        out.append(sorted(orb))
    return out


def stabilizer(G: PermGroup, action: Action, point: int) -> Subgroup:
    return G.subgroup(g for g in range(G.order) if action(g)[point] == point)


def transporter(G: PermGroup, action: Action, src: int, dst: int) -> list[int]:
    """All group elements g with g . src == dst."""
    return [g for g in range(G.order) if action(g)[src] == dst]


@dataclass(frozen=True)
class GroupMeta:
    order: int
    exponent: int
    is_abelian: bool
    element_orders: tuple[int, ...]


def group_meta(G: PermGroup) -> GroupMeta:
    return GroupMeta(G.order, G.exponent, G.is_abelian, G.element_orders)


def cyclic_group(n: int) -> PermGroup:
    return close([[(i + 1) % n for i in range(n)]], degree=n)


def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return close([], degree=max(n, 1))
    gens = [[1, 0] + list(range(2, n)), list(range(1, n)) + [0]]
    return close(gens)


def dihedral_group(n: int) -> PermGroup:
    """Symmetries of the regular n-gon (order 2n)."""
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return close([rot, ref])


def abelian_group(factors: Sequence[int]) -> PermGroup:
    """Z_{m1} x ... x Z_{mr} acting on a disjoint union of cycles."""
    gens, off = [], 0
    total = sum(factors)
    for m in factors:
        g = list(range(total))
        for i in range(m):
            g[off + i] = off + (i + 1) % m
        gens.append(g)
        off += m
    return close(gens, degree=max(total, 1)) if gens else close([], degree=1)
