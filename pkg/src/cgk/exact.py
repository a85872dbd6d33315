"""Exact arithmetic: cyclotomic integers, integer matrices, Smith normal form.

Integers are plain Python ``int`` (arbitrary precision).  Cyclotomic integers
live in ``Z[zeta_m]`` and are stored in the power basis
``1, zeta, ..., zeta^(phi(m)-1)`` after reduction modulo the m-th cyclotomic
polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .errors import NotRational

__all__ = [
    "CycInt",
    "IntMatrix",
    "SnfResult",
    "coker_ker",
    "cyc_arith",
    "cyc_conj",
    "cyc_to_int",
    "cyclotomic_poly",
    "euler_phi",
    "lcm",
    "rank",
    "snf",
]


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic; coefficients ascending
    num = list(num)
    dq = len(den) - 1
    quot = [0] * (len(num) - dq)
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + dq]
        quot[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num[:dq]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, lowest degree first.

    >>> cyclotomic_poly(6)
    (1, -1, 1)
    """
    if m < 1:
        raise ValueError(f"cyclotomic_poly needs m >= 1, got {m}")
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, cyclotomic_poly(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds the power-basis coefficients of zeta_m^k, for 0 <= k < m."""
    phi = euler_phi(m)
    cp = cyclotomic_poly(m)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by x, then reduce x^phi = -sum cp[i] x^i
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * cp[i]
    return tuple(rows)


def _reduce(m: int, vec: Sequence[int]) -> tuple[int, ...]:
    """Reduce coefficients of powers of zeta_m (any length) to the power basis."""
    phi = euler_phi(m)
    folded = [0] * m
    for k, c in enumerate(vec):
        if c:
            folded[k % m] += c
    out = folded[:phi]
    table = _reduction_table(m)
    for k in range(phi, m):
        c = folded[k]
        if c:
            row = table[k]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


@lru_cache(maxsize=None)
def _normalized_trace_weights(m: int) -> tuple[Fraction, ...]:
    # Tr(zeta_m^k) / phi(m) = mu(m/g) / phi(m/g), g = gcd(k, m)
    return tuple(
        Fraction(_mobius(m // gcd(k, m)), euler_phi(m // gcd(k, m)))
        for k in range(euler_phi(m))
    )


class CycInt:
    """An element of the ring of cyclotomic integers Z[zeta_m].

    Values with different moduli compare equal when they agree after lifting
    to the least common multiple of the moduli.
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable[int] = ()):
        if m < 1:
            raise ValueError("modulus must be positive")
        coeffs = tuple(coeffs)
        phi = euler_phi(m)
        if len(coeffs) != phi:
            coeffs = _reduce(m, coeffs)
        self.m = m
        self.coeffs = coeffs

    @classmethod
    def _raw(cls, m: int, coeffs: tuple[int, ...]) -> CycInt:
        # trusted: coeffs already reduced to length phi(m)
        obj = object.__new__(cls)
        obj.m = m
        obj.coeffs = coeffs
        return obj

    @classmethod
    def from_int(cls, n: int, m: int = 1) -> CycInt:
        c = [0] * euler_phi(m)
        c[0] = n
        return cls(m, c)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> CycInt:
        return cls(m, _reduction_table(m)[k % m])

    @classmethod
    def from_powers(cls, m: int, multiplicities: Sequence[int]) -> CycInt:
        """Sum of multiplicities[k] * zeta_m^k."""
        return cls(m, _reduce(m, multiplicities))

    def lift(self, M: int) -> CycInt:
        """Re-express in Z[zeta_M]; requires m | M."""
        if M == self.m:
            return self
        if M % self.m:
            raise ValueError(f"cannot lift modulus {self.m} to {M}")
        step = M // self.m
        vec = [0] * M
        for k, c in enumerate(self.coeffs):
            vec[k * step] = c
        return CycInt(M, _reduce(M, vec))

    def _common(self, other: CycInt) -> tuple[CycInt, CycInt]:
        if self.m == other.m:
            return self, other
        M = lcm(self.m, other.m)
        return self.lift(M), other.lift(M)

    @staticmethod
    def _coerce(other) -> CycInt | None:
        if isinstance(other, CycInt):
            return other
        if isinstance(other, int):
            return CycInt.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        return CycInt._raw(a.m, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt._raw(self.m, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt._raw(self.m, tuple(other * x for x in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not any(o.coeffs[1:]):
            return self * o.coeffs[0]
        if not any(self.coeffs[1:]):
            return o * self.coeffs[0]
        a, b = self._common(o)
        ac, bc = a.coeffs, b.coeffs
        prod = [0] * (len(ac) + len(bc) - 1)
        for i, x in enumerate(ac):
            if x:
                for j, y in enumerate(bc):
                    if y:
                        prod[i + j] += x * y
        return CycInt._raw(a.m, _reduce(a.m, prod))

    __rmul__ = __mul__

    def conj(self) -> CycInt:
        """Complex conjugation zeta -> zeta^(m-1)."""
        m = self.m
        vec = [0] * m
        for k, c in enumerate(self.coeffs):
            vec[(-k) % m] += c
        return CycInt._raw(m, _reduce(m, vec))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise NotRational(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def normalized_trace(self) -> Fraction:
        """Trace to Q divided by the degree; invariant under lifting."""
        w = _normalized_trace_weights(self.m)
        return sum((c * w[k] for k, c in enumerate(self.coeffs) if c), Fraction(0))

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._common(o)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        return hash(self.normalized_trace())

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"CycInt({self.m}, {list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            z = f"z{self.m}" if k == 1 else f"z{self.m}^{k}"
            terms.append(z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


def cyc_arith(a: CycInt, b: CycInt, op: str) -> CycInt:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def cyc_conj(a: CycInt) -> CycInt:
    return a.conj()


def cyc_to_int(a: CycInt) -> int:
    return a.to_int()


class IntMatrix:
    """Immutable rectangular integer matrix with explicit shape (0-sized allowed)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]] = (), rows: int | None = None, cols: int | None = None):
        data = tuple(tuple(int(x) for x in r) for r in entries)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if not data:
            data = tuple(() for _ in range(rows)) if cols == 0 else tuple((0,) * cols for _ in range(rows))
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("matrix is not rectangular or does not match the given shape")
        self.rows = rows
        self.cols = cols
        self.entries = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> IntMatrix:
        return IntMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)], self.cols, self.rows)

    @property
    def T(self) -> IntMatrix:
        return self.transpose()

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ot = other.transpose().entries
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in ot] for r in self.entries],
            self.rows,
            other.cols,
        )

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.rows, self.cols
        )

    def __pow__(self, k: int) -> IntMatrix:
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        result, base = IntMatrix.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self.entries)

    def permuted(self, perm: Sequence[int]) -> IntMatrix:
        """Simultaneous row/column permutation: result[i][j] = self[perm[i]][perm[j]]."""
        return IntMatrix([[self.entries[p][q] for q in perm] for p in perm], self.rows, self.cols)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntMatrix):
            return self.shape == other.shape and self.entries == other.entries
        if isinstance(other, (list, tuple)):
            return self.entries == tuple(tuple(r) for r in other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, rows={self.rows}, cols={self.cols})"

    def det(self) -> int:
        """Exact determinant (Bareiss fraction-free elimination)."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self.entries]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SnfResult:
    invariant_factors: tuple[int, ...]
    U: IntMatrix
    V: IntMatrix
    D: IntMatrix

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def snf(M: IntMatrix) -> SnfResult:
    """Smith normal form with unimodular transforms: ``U @ M @ V == D``.

    Pivot is always the smallest nonzero entry (in absolute value) of the
    remaining submatrix.
    """
    m, n = M.rows, M.cols
    A = [list(r) for r in M.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst += q * row src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in A:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if not dirty:
                bad = next(
                    (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                add_row(t, bad, 1)
            # move the new smallest entry of row/column t into the pivot slot
            best = (abs(A[t][t]), t, t)
            for i in range(t + 1, m):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, n):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    factors = tuple(A[i][i] for i in range(t))
    return SnfResult(factors, IntMatrix(U, m, m), IntMatrix(V, n, n), IntMatrix(A, m, n))


def rank(M: IntMatrix) -> int:
    """Rank over the rationals."""
    a = [[Fraction(x) for x in r] for r in M.entries]
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, M.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, M.rows):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def coker_ker(M: IntMatrix) -> tuple[int, list[int], int]:
    """For M: Z^cols -> Z^rows return (coker free rank, coker torsion, ker rank)."""
    factors = snf(M).invariant_factors
    r = len(factors)
    return M.rows - r, [d for d in factors if d > 1], M.cols - r
