"""Abstract finite groups with structured element labels.

Local groups of the complexes of groups are built from subgroups of one
ambient parabolic by semidirect powers and direct products.  Elements are
plain tuples, so canonical injections and projections are label maps.
"""

from __future__ import annotations

import itertools
from typing import Callable, Hashable, Iterator, Sequence

from .groups import FiniteGroup, IndexedGroup

Label = Hashable


class AbstractGroup:
    """Interface: ``order``, ``identity``, ``mul``, ``inv``, ``elements``, ``generators``."""

    name = "G"

    @property
    def order(self) -> int:
        raise NotImplementedError

    @property
    def identity(self) -> Label:
        raise NotImplementedError

    def mul(self, a: Label, b: Label) -> Label:
        raise NotImplementedError

    def inv(self, a: Label) -> Label:
        raise NotImplementedError

    def iter_elements(self) -> Iterator[Label]:
        raise NotImplementedError

    def generators(self) -> list[Label]:
        raise NotImplementedError

    def contains(self, x: Label) -> bool:
        raise NotImplementedError

    def elements(self) -> list[Label]:
        cached = getattr(self, "_elements", None)
        if cached is None:
            cached = list(self.iter_elements())
            self._elements = cached
        return cached

    def power(self, a: Label, n: int) -> Label:
        out = self.identity
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def element_order(self, a: Label) -> int:
        x, n = a, 1
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    def is_abelian(self) -> bool:
        gens = self.generators()
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def check_axioms(self) -> bool:
        """Exhaustive associativity, identity and inverse check; small groups only."""
        els = self.elements()
        e = self.identity
        for a in els:
            if self.mul(a, e) != a or self.mul(e, a) != a or self.mul(a, self.inv(a)) != e:
                return False
            for b in els:
                ab = self.mul(a, b)
                if not self.contains(ab):
                    return False
                for c in els:
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)):
                        return False
        return True

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"<{self.name}, order {self.order}>"


class Cyclic(AbstractGroup):
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("cyclic group order must be positive")
        self.n = n
        self.name = f"Z{n}"

    @property
    def order(self):
        return self.n

    @property
    def identity(self):
        return 0

    def mul(self, a, b):
        return (a + b) % self.n

    def inv(self, a):
        return (-a) % self.n

    def iter_elements(self):
        return iter(range(self.n))

    def generators(self):
        return [1] if self.n > 1 else []

    def contains(self, x):
        return isinstance(x, int) and 0 <= x < self.n

    @property
    def generator(self):
        return 1 % self.n


class Dihedral(AbstractGroup):
    """Dihedral group of order k (not 2k), generated by reflections r1, r2.

    Elements are pairs ``(i, s)`` meaning rho^i sigma^s with rho = r2 r1 of
    order k/2.  For k = 2 the two reflections coincide and the group is Z2.
    """

    def __init__(self, k: int):
        if k < 2 or k % 2:
            raise ValueError(f"dihedral group order must be even and >= 2, got {k}")
        self.k = k
        self.half = k // 2
        self.name = f"D{k}"

    @property
    def order(self):
        return self.k

    @property
    def identity(self):
        return (0, 0)

    def mul(self, a, b):
        i, s = a
        j, t = b
        return ((i + (-j if s else j)) % self.half, (s + t) % 2)

    def inv(self, a):
        i, s = a
        return (a if s else ((-i) % self.half, 0))

    def iter_elements(self):
        return ((i, s) for s in (0, 1) for i in range(self.half))

    def contains(self, x):
        return isinstance(x, tuple) and len(x) == 2 and 0 <= x[0] < self.half and x[1] in (0, 1)

    @property
    def r1(self):
        return (0, 1)

    @property
    def r2(self):
        return (1 % self.half, 1)

    def generators(self):
        return [self.r1] if self.k == 2 else [self.r1, self.r2]

    def reflections(self) -> list:
        return [(i, 1) for i in range(self.half)]


def dihedral(k: int) -> Dihedral:
    return Dihedral(k)


class AmbientSubgroup(AbstractGroup):
    """A subgroup of an :class:`IndexedGroup`, on its index labels."""

    def __init__(self, ambient: IndexedGroup, members: frozenset[int], gens: Sequence[int],
                 name: str = "Q"):
        self.ambient = ambient
        self.members = frozenset(members)
        self.gens = list(gens)
        self.name = name

    @classmethod
    def of(cls, ambient: IndexedGroup, sub: FiniteGroup, name: str) -> AmbientSubgroup:
        return cls(ambient, ambient.indices(sub), ambient.generators_of(sub), name)

    @property
    def order(self):
        return len(self.members)

    @property
    def identity(self):
        return self.ambient.identity

    def mul(self, a, b):
        return self.ambient.mul(a, b)

    def inv(self, a):
        return self.ambient.inv[a]

    def iter_elements(self):
        return iter(sorted(self.members))

    def generators(self):
        return list(self.gens)

    def contains(self, x):
        return x in self.members


class SemidirectPower(AbstractGroup):
    """U^n ⋊ Q for U, Q subgroups of one ambient group with Q normalising U.

    Elements are tuples ``(u_1, ..., u_n, q)`` of ambient indices; Q acts on
    every copy of U by conjugation.  ``n = 0`` gives Q itself.
    """

    def __init__(self, U: AmbientSubgroup, Q: AmbientSubgroup, n: int):
        if U.ambient is not Q.ambient:
            raise ValueError("U and Q must lie in the same ambient group")
        if n < 0:
            raise ValueError("n must be non-negative")
        amb = U.ambient
        for q in Q.gens:
            cr = amb.conj_row(q)
            if any(cr[u] not in U.members for u in U.gens):
                raise ValueError(f"{Q.name} does not normalise {U.name}")
        self.U, self.Q, self.n = U, Q, n
        self.ambient = amb
        self.name = Q.name if n == 0 else f"{U.name}^{n} ⋊ {Q.name}"

    @property
    def order(self):
        return self.U.order ** self.n * self.Q.order

    @property
    def identity(self):
        return (self.ambient.identity,) * (self.n + 1)

    def mul(self, a, b):
        amb = self.ambient
        q = a[-1]
        cr = amb.conj_row(q)
        return tuple(amb.row(x)[cr[y]] for x, y in zip(a[:-1], b[:-1])) + (amb.row(q)[b[-1]],)

    def inv(self, a):
        amb = self.ambient
        qi = amb.inv[a[-1]]
        cr = amb.conj_row(qi)
        # (u, q)^-1 = (q^-1 u^-1 q, q^-1)
        return tuple(cr[amb.inv[u]] for u in a[:-1]) + (qi,)

    def iter_elements(self):
        us = sorted(self.U.members)
        qs = sorted(self.Q.members)
        return (tuple(t) for t in itertools.product(*([us] * self.n), qs))

    def contains(self, x):
        return (isinstance(x, tuple) and len(x) == self.n + 1
                and all(u in self.U.members for u in x[:-1]) and x[-1] in self.Q.members)

    def generators(self):
        out = [self.injection(i)(u) for i in range(self.n) for u in self.U.gens]
        out += [self.q_injection(q) for q in self.Q.gens]
        return out

    def injection(self, i: int) -> Callable:
        """Canonical map of U onto the i-th copy (0-based)."""
        e = self.ambient.identity
        n = self.n

        def inj(u):
            t = [e] * (n + 1)
            t[i] = u
            return tuple(t)
        return inj

    def q_injection(self, q: int) -> tuple:
        return (self.ambient.identity,) * self.n + (q,)

    def projection(self, x: tuple) -> int:
        return x[-1]


def semidirect_power(U: AmbientSubgroup, Q: AmbientSubgroup, n: int) -> SemidirectPower:
    return SemidirectPower(U, Q, n)


class DirectProduct(AbstractGroup):
    """G × H on pairs."""

    def __init__(self, left: AbstractGroup, right: AbstractGroup):
        self.left, self.right = left, right
        self.name = f"({left.name}) × {right.name}"

    @property
    def order(self):
        return self.left.order * self.right.order

    @property
    def identity(self):
        return (self.left.identity, self.right.identity)

    def mul(self, a, b):
        return (self.left.mul(a[0], b[0]), self.right.mul(a[1], b[1]))

    def inv(self, a):
        return (self.left.inv(a[0]), self.right.inv(a[1]))

    def iter_elements(self):
        return itertools.product(self.left.elements(), self.right.elements())

    def contains(self, x):
        return (isinstance(x, tuple) and len(x) == 2
                and self.left.contains(x[0]) and self.right.contains(x[1]))

    def generators(self):
        return ([self.inject_left(g) for g in self.left.generators()]
                + [self.inject_right(h) for h in self.right.generators()])

    def inject_left(self, g):
        return (g, self.right.identity)

    def inject_right(self, h):
        return (self.left.identity, h)

    @staticmethod
    def project_left(x):
        return x[0]

    @staticmethod
    def project_right(x):
        return x[1]


def direct_product(G: AbstractGroup, H: AbstractGroup) -> DirectProduct:
    return DirectProduct(G, H)


def generated_subgroup(G: AbstractGroup, gens: Sequence[Label]) -> set:
    """Closure of ``gens`` inside G."""
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def to_json_label(x):
    """Nested tuples to nested lists for JSON output."""
    if isinstance(x, tuple):
        return [to_json_label(y) for y in x]
    return x
