"""Exact character tables (Burnside-Dixon) and class-function operations."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt
from typing import Sequence

from .errors import InternalSplitFailure, NotRational
from .exact import CycInt, IntMatrix
from .fingroup import PermGroup, Subgroup

Domain = PermGroup | Subgroup

MAX_PRIME_ATTEMPTS = 10


# ---------------------------------------------------------------------------
# arithmetic modulo a prime


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def dixon_primes(order: int, exponent: int):
    """Primes p = 1 (mod exponent) with p > 2*order^2, ascending."""
    t = (2 * order * order - 1) // exponent + 1
    while True:
        p = exponent * t + 1
        if _is_prime(p):
            yield p
        t += 1


def _prime_factors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def _primitive_root(p: int) -> int:
    qs = _prime_factors(p - 1)
    g = 2
    while any(pow(g, (p - 1) // q, p) == 1 for q in qs):
        g += 1
    return g


def _poly_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _poly_trim(out)


def _poly_divmod(f, g, p):
    f = list(f)
    inv = pow(g[-1], p - 2, p)
    dg = len(g) - 1
    q = [0] * max(len(f) - dg, 0)
    for k in range(len(f) - 1 - dg, -1, -1):
        c = f[k + dg] * inv % p
        q[k] = c
        if c:
            for i, b in enumerate(g):
                f[k + i] = (f[k + i] - c * b) % p
    return _poly_trim(q), _poly_trim(f[:dg])


def _poly_gcd(f, g, p):
    f, g = _poly_trim(list(f)), _poly_trim(list(g))
    while g:
        f, g = g, _poly_divmod(f, g, p)[1]
    if f:
        inv = pow(f[-1], p - 2, p)
        f = [c * inv % p for c in f]
    return f


def _poly_powmod(base, e, mod, p):
    result = [1]
    base = _poly_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _poly_divmod(_poly_mul(result, base, p), mod, p)[1]
        base = _poly_divmod(_poly_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _roots_mod_p(f: list[int], p: int, rng: random.Random) -> list[int]:
    """Distinct roots in F_p of f (ascending coefficients)."""
    f = _poly_trim([c % p for c in f])
    xp = _poly_powmod([0, 1], p, f, p)
    xp = xp + [0] * (2 - len(xp))
    xp[1] = (xp[1] - 1) % p
    g = _poly_gcd(f, _poly_trim(xp), p)  # product of (x - r) over distinct roots
    roots: list[int] = []
    stack = [g]
    while stack:
        h = stack.pop()
        if len(h) <= 1:
            continue
        if len(h) == 2:
            roots.append((-h[0]) * pow(h[1], p - 2, p) % p)
            continue
        if p == 2:
            raise InternalSplitFailure("characteristic 2 splitting not supported")
        while True:
            a = rng.randrange(p)
            w = _poly_powmod([a, 1], (p - 1) // 2, h, p)
            w = (w or [0]) + [0]
            w[0] = (w[0] - 1) % p
            d = _poly_gcd(h, _poly_trim(w), p)
            if 1 < len(d) < len(h):
                stack.append(d)
                stack.append(_poly_divmod(h, d, p)[0])
                break
    return sorted(roots)


def _charpoly(X: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial det(xI - X) mod p (Faddeev-LeVerrier)."""
    n = len(X)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = X M_{k-1} + c_{n-k+1} I
        XM = [[sum(X[i][t] * M[t][j] for t in range(n)) % p for j in range(n)] for i in range(n)]
        c = coeffs[n - k + 1]
        for i in range(n):
            XM[i][i] = (XM[i][i] + c) % p
        M = XM
        tr = sum(sum(X[i][t] * M[t][i] for t in range(n)) for i in range(n)) % p
        coeffs[n - k] = (-tr * pow(k, p - 2, p)) % p
    return coeffs


def _rref(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _nullspace(A: list[list[int]], p: int) -> list[list[int]]:
    n = len(A[0])
    R, pivots = _rref(A, p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(R, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# class functions


class ClassFunction:
    """Values (CycInt) per conjugacy class of a group or subgroup."""

    __slots__ = ("domain", "values")

    def __init__(self, domain: Domain, values: Sequence[CycInt | int]):
        self.domain = domain
        vals = tuple(v if isinstance(v, CycInt) else CycInt.from_int(v) for v in values)
        if len(vals) != len(domain.classes):
            raise ValueError("one value per conjugacy class required")
        self.values = vals

    def value_at(self, parent_index: int) -> CycInt:
        """Value at an element given by its index in the root group."""
        local = self.domain.local_index(parent_index)
        return self.values[self.domain.classes.class_of[local]]

    def value_at_local(self, local_index: int) -> CycInt:
        return self.values[self.domain.classes.class_of[local_index]]

    @property
    def degree(self) -> int:
        return self.values[0].to_int()

    def _check(self, other: ClassFunction) -> None:
        if not same_domain(self.domain, other.domain):
            raise ValueError("class functions live on different groups")

    def __mul__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.domain, [a * b for a, b in zip(self.values, other.values)])

    def __add__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.domain, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.domain, [a - b for a, b in zip(self.values, other.values)])

    def conj(self) -> ClassFunction:
        return ClassFunction(self.domain, [v.conj() for v in self.values])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ClassFunction)
            and same_domain(self.domain, other.domain)
            and all(a == b for a, b in zip(self.values, other.values))
        )

    def __hash__(self):
        return hash(self.values)

    def __repr__(self) -> str:
        return f"ClassFunction([{', '.join(str(v) for v in self.values)}])"


def same_domain(a: Domain, b: Domain) -> bool:
    if a is b:
        return True
    ma = a.members if isinstance(a, Subgroup) else tuple(range(a.order))
    mb = b.members if isinstance(b, Subgroup) else tuple(range(b.order))
    return a.root is b.root and ma == mb


def trivial_character(domain: Domain) -> ClassFunction:
    return ClassFunction(domain, [1] * len(domain.classes))


def inner_product(alpha: ClassFunction, beta: ClassFunction) -> int:
    """(1/|H|) sum_h alpha(h) conj(beta(h)); must be a rational integer."""
    alpha._check(beta)
    dom = alpha.domain
    total = CycInt.from_int(0)
    for size, a, b in zip(dom.classes.sizes, alpha.values, beta.values):
        total = total + (a * b.conj()) * size
    n = total.to_int()
    q, r = divmod(n, dom.order)
    if r:
        raise NotRational(f"inner product {n}/{dom.order} is not an integer")
    return q


def restrict(chi: ClassFunction, H: Subgroup) -> ClassFunction:
    dom = chi.domain
    if isinstance(dom, Subgroup) and not H.is_subgroup_of(dom):
        raise ValueError("restriction target is not a subgroup of the domain")
    if H.parent is not dom.root:
        raise ValueError("restriction target lives in a different group")
    reps = H.classes.representatives
    return ClassFunction(H, [chi.value_at(H.members[r]) for r in reps])


def transport(chi: ClassFunction, a: int) -> ClassFunction:
    """Move chi from H to a^-1 H a via x -> chi(a x a^-1)."""
    dom = chi.domain
    if isinstance(dom, PermGroup):
        return chi
    G = dom.parent
    K = dom.conjugate(a)
    reps = K.classes.representatives
    return ClassFunction(K, [chi.value_at(G.conj(a, K.members[r])) for r in reps])


def perm_character(domain: Domain, action) -> ClassFunction:
    """Fixed-point counts; ``action`` maps a root-group element index to a Perm."""
    members = domain.members
    reps = domain.classes.representatives
    return ClassFunction(domain, [sum(1 for i, j in enumerate(action(members[r])) if i == j) for r in reps])


# ---------------------------------------------------------------------------
# character tables


@dataclass(frozen=True)
class CharTable:
    domain: Domain
    irreducibles: tuple[ClassFunction, ...]
    prime: int

    @property
    def classes(self):
        return self.domain.classes

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(c.degree for c in self.irreducibles)

    def __len__(self) -> int:
        return len(self.irreducibles)

    def __getitem__(self, i: int) -> ClassFunction:
        return self.irreducibles[i]

    def decompose(self, chi: ClassFunction) -> list[int]:
        return [inner_product(chi, irr) for irr in self.irreducibles]


def _structure_matrices(G: PermGroup) -> list[list[list[int]]]:
    cl = G.classes
    k = len(cl)
    reps = cl.representatives
    mats = []
    for j in range(k):
        M = [[0] * k for _ in range(k)]
        for l in range(k):
            g = reps[l]
            for x in cl.classes[j]:
                M[cl.class_of[G.mul(G.inv(x), g)]][l] += 1
        mats.append(M)
    return mats


def _split_eigenvectors(mats, k: int, p: int, rng: random.Random) -> list[list[int]]:
    spaces = [_rref([[int(i == j) for j in range(k)] for i in range(k)], p)]
    for M in mats[1:]:
        if all(len(b) == 1 for b, _ in spaces):
            break
        nxt = []
        for basis, pivots in spaces:
            r = len(basis)
            if r == 1:
                nxt.append((basis, pivots))
                continue
            images = [[sum(M[i][l] * b[l] for l in range(k)) % p for i in range(k)] for b in basis]
            X = [[images[s][pivots[t]] for s in range(r)] for t in range(r)]
            roots = _roots_mod_p(_charpoly(X, p), p, rng)
            total = 0
            for lam in roots:
                XL = [[(X[t][s] - (lam if s == t else 0)) % p for s in range(r)] for t in range(r)]
                null = _nullspace(XL, p)
                total += len(null)
                vecs = [[sum(c[s] * basis[s][l] for s in range(r)) % p for l in range(k)] for c in null]
                nxt.append(_rref(vecs, p))
            if total != r:
                raise InternalSplitFailure("class matrices did not diagonalize")
        spaces = nxt
    if any(len(b) != 1 for b, _ in spaces):
        raise InternalSplitFailure("common eigenspaces are not one-dimensional")
    return [b[0] for b, _ in spaces]


def _dixon_mod_p(G: PermGroup, mats, p: int) -> list[ClassFunction]:
    cl = G.classes
    k, order, e = len(cl), G.order, G.exponent
    sizes = cl.sizes
    reps = cl.representatives
    inv_class = [cl.class_of[G.inv(r)] for r in reps]
    rng = random.Random(p)
    vectors = _split_eigenvectors(mats, k, p, rng)

    z = pow(_primitive_root(p), (p - 1) // e, p)
    chars = []
    for w in vectors:
        if w[0] % p == 0:
            raise InternalSplitFailure("eigenvector vanishes at the identity class")
        s = pow(w[0], p - 2, p)
        w = [x * s % p for x in w]
        norm = sum(w[j] * w[inv_class[j]] * pow(sizes[j], p - 2, p) for j in range(k)) % p
        if norm == 0:
            raise InternalSplitFailure("degenerate eigenvector")
        d2 = order * pow(norm, p - 2, p) % p
        d = next((d for d in range(1, isqrt(order) + 1) if d * d % p == d2), None)
        if d is None:
            raise InternalSplitFailure("no admissible degree")
        chi_p = [d * w[j] * pow(sizes[j], p - 2, p) % p for j in range(k)]
        values = []
        for j in range(k):
            g = reps[j]
            n = G.element_orders[g]
            zn = pow(z, e // n, p)
            powers = [chi_p[cl.class_of[G.power(g, l)]] for l in range(n)]
            inv_n = pow(n, p - 2, p)
            mult = []
            for kk in range(n):
                acc = sum(powers[l] * pow(zn, (-kk * l) % n, p) for l in range(n)) * inv_n % p
                if acc > d:
                    raise InternalSplitFailure("eigenvalue multiplicity out of range")
                mult.append(acc)
            if sum(mult) != d:
                raise InternalSplitFailure("eigenvalue multiplicities do not sum to the degree")
            values.append(CycInt.from_powers(n, mult).lift(e))
        chars.append(ClassFunction(G, values))
    if sum(c.degree ** 2 for c in chars) != order:
        raise InternalSplitFailure("sum of squared degrees differs from the group order")
    return chars


def _sort_key(chi: ClassFunction):
    trivial = all(v == 1 for v in chi.values)
    return (chi.degree, 0 if trivial else 1, tuple(c for v in chi.values for c in v.coeffs))


def character_table(domain: Domain) -> CharTable:
    """Irreducible characters, sorted by degree (trivial first, then lexicographic)."""
    cached = getattr(domain, "_chartab", None)
    if cached is not None:
        return cached
    G = domain.as_group()
    base = getattr(G, "_chartab", None)
    if base is None:
        mats = _structure_matrices(G)
        last_error = None
        for attempt, p in enumerate(dixon_primes(G.order, G.exponent)):
            if attempt >= MAX_PRIME_ATTEMPTS:
                raise InternalSplitFailure(f"gave up after {MAX_PRIME_ATTEMPTS} primes: {last_error}")
            try:
                chars = _dixon_mod_p(G, mats, p)
                break
            except InternalSplitFailure as exc:
                last_error = exc
        chars.sort(key=_sort_key)
        base = CharTable(G, tuple(chars), p)
        G._chartab = base
    if domain is G:
        return base
    table = CharTable(domain, tuple(ClassFunction(domain, c.values) for c in base.irreducibles), base.prime)
    domain._chartab = table
    return table


def dr_matrix(G: Domain, chi_rho: ClassFunction) -> IntMatrix:
    """B[v][w] = multiplicity of irreducible w in v (x) rho."""
    irr = character_table(G).irreducibles
    return IntMatrix([[inner_product(v * chi_rho, w) for w in irr] for v in irr])


def regular_character(domain: Domain) -> ClassFunction:
    vals = [0] * len(domain.classes)
    vals[0] = domain.order
    return ClassFunction(domain, vals)
