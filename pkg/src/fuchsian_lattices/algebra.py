"""Exact arithmetic: prime fields, small matrices over them, permutations, rationals.

Permutations compose right-to-left everywhere in this package:
``compose(g, h)`` applies ``h`` first, then ``g``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Rational = Fraction


class FieldError(ArithmeticError):
    pass


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"modulus {p!r} is not prime")
    return p


@dataclass(frozen=True)
class FieldElem:
    """An element of the prime field F_p."""

    value: int
    p: int

    def __post_init__(self):
        check_prime(self.p)
        object.__setattr__(self, "value", self.value % self.p)

    def _other(self, other):
        if isinstance(other, int):
            return FieldElem(other, self.p)
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.p != self.p:
            raise FieldError(f"mixed moduli {self.p} and {other.p}")
        return other

    def __add__(self, other):
        other = self._other(other)
        return FieldElem(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        return FieldElem(self.value - other.value, self.p)

    def __mul__(self, other):
        other = self._other(other)
        return FieldElem(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(-self.value, self.p)

    def inverse(self) -> FieldElem:
        if self.value == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return FieldElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        other = self._other(other)
        return self * other.inverse()

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def field_arith(a: FieldElem, b: FieldElem | None, op: str) -> FieldElem:
    """Apply ``op`` in {add, mul, inv, neg}; ``b`` is ignored by the unary ops."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    raise ValueError(f"unknown field op {op!r}")


def rref(rows: Sequence[Sequence[int]], p: int) -> tuple[tuple[int, ...], ...]:
    """Reduced row echelon form over F_p with zero rows dropped."""
    m = [[x % p for x in r] for r in rows]
    ncols = len(m[0]) if m else 0
    out = []
    col = 0
    while m and col < ncols:
        piv = next((r for r in m if r[col]), None)
        if piv is None:
            col += 1
            continue
        m.remove(piv)
        s = pow(piv[col], -1, p)
        piv = [(x * s) % p for x in piv]
        m = [[(x - r[col] * y) % p for x, y in zip(r, piv)] for r in m]
        out = [[(x - r[col] * y) % p for x, y in zip(r, piv)] for r in out]
        out.append(piv)
        m = [r for r in m if any(r)]
        col += 1
    return tuple(tuple(r) for r in out)


@dataclass(frozen=True)
class Matrix:
    """Square matrix over F_p, rows stored as reduced integer tuples."""

    rows: tuple[tuple[int, ...], ...]
    p: int

    def __post_init__(self):
        check_prime(self.p)
        rows = tuple(tuple(x % self.p for x in r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, dim: int, p: int) -> Matrix:
        return cls(tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)), p)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _check(self, other: Matrix):
        if other.p != self.p:
            raise FieldError(f"mixed moduli {self.p} and {other.p}")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch {self.dim} vs {other.dim}")

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        cols = list(zip(*other.rows))
        return Matrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows),
            self.p,
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        return tuple(sum(a * b for a, b in zip(r, v)) % self.p for r in self.rows)

    def det(self) -> int:
        p = self.p
        m = [list(r) for r in self.rows]
        n = len(m)
        d = 1
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = -d
            d = d * m[c][c] % p
            s = pow(m[c][c], -1, p)
            for i in range(c + 1, n):
                f = m[i][c] * s % p
                if f:
                    m[i] = [(x - f * y) % p for x, y in zip(m[i], m[c])]
        return d % p

    def inverse(self) -> Matrix:
        n, p = self.dim, self.p
        if self.det() == 0:
            raise ZeroDivisionError("singular matrix")
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self.rows)]
        red = rref(aug, p)
        return Matrix(tuple(r[n:] for r in red), p)

    def transpose(self) -> Matrix:
        return Matrix(tuple(zip(*self.rows)), self.p)


def mat_ops(a: Matrix, b: Matrix | None, op: str):
    """Apply ``op`` in {mul, inv, det}; ``b`` is only used by mul."""
    if op == "mul":
        return a @ b
    if op == "inv":
        return a.inverse()
    if op == "det":
        return FieldElem(a.det(), a.p)
    raise ValueError(f"unknown matrix op {op!r}")


class Permutation(tuple):
    """A bijection of {0..N-1}, stored as its image array."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        self = tuple.__new__(cls, images)
        if sorted(self) != list(range(len(self))):
            raise ValueError(f"not a permutation: {tuple(self)!r}")
        return self

    @classmethod
    def _raw(cls, images: Iterable[int]) -> Permutation:
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls._raw(range(n))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> Permutation:
        img = list(range(n))
        for c in cycles:
            for i, x in enumerate(c):
                img[x] = c[(i + 1) % len(c)]
        return cls(img)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def size(self) -> int:
        return len(self)

    def __mul__(self, other):
        return compose(self, other)

    def __call__(self, x: int) -> int:
        return self[x]

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def inverse(self) -> Permutation:
        inv = [0] * len(self)
        for i, x in enumerate(self):
            inv[x] = i
        return Permutation._raw(inv)

    def order(self) -> int:
        n = 1
        seen = [False] * len(self)
        for i in range(len(self)):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self[j]
                length += 1
            n = n * length // _gcd(n, length)
        return n

    def __repr__(self):
        return f"Permutation({list(self)})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def compose(g: Permutation, h: Permutation) -> Permutation:
    """``g ∘ h``: apply h, then g."""
    if len(g) != len(h):
        raise ValueError(f"permutation size mismatch {len(g)} vs {len(h)}")
    return Permutation._raw(map(g.__getitem__, h))


def perm_ops(g: Permutation, h: Permutation | None, op: str):
    """Apply ``op`` in {compose, inverse, order}."""
    if op == "compose":
        return compose(g, h)
    if op == "inverse":
        return g.inverse()
    if op == "order":
        return g.order()
    raise ValueError(f"unknown permutation op {op!r}")


def rational_sum(terms: Iterable[Rational]) -> Rational:
    return sum(terms, Fraction(0))


def format_rational(x: Rational) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def parse_rational(s: str) -> Rational:
    return Fraction(s)
