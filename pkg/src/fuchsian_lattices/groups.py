"""Finite permutation groups by exhaustive enumeration.

Everything here works on fully enumerated element sets; the groups met in
practice have at most a few times 10^4 elements.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import Permutation, compose, is_prime

DEFAULT_CAP = 10**7
CAP_ENV = "FUCHSIAN_LATTICES_GROUP_CAP"


class GroupTooLarge(RuntimeError):
    pass


def enumeration_cap() -> int:
    return int(os.environ.get(CAP_ENV, DEFAULT_CAP))


def _closure(gens: Sequence[Permutation], n: int, cap: int) -> set[Permutation]:
    ident = Permutation.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise GroupTooLarge(f"group enumeration exceeded cap of {cap} elements")
        frontier = nxt
    return seen


def _greedy_generators(elements: Iterable[Permutation], n: int) -> list[Permutation]:
    """A small generating set, picked deterministically from sorted elements."""
    gens: list[Permutation] = []
    span = {Permutation.identity(n)}
    for g in sorted(elements):
        if g not in span:
            gens.append(g)
            span = _closure(gens, n, 10**9)
    return gens


class FiniteGroup:
    """A permutation group on ``point_count`` points with enumerated elements."""

    def __init__(self, generators: Sequence[Permutation], point_count: int,
                 elements: Iterable[Permutation] | None = None, char_p: int | None = None,
                 cap: int | None = None):
        self.point_count = point_count
        self.char_p = char_p
        gens = [Permutation(g) for g in generators]
        for g in gens:
            if len(g) != point_count:
                raise ValueError(f"generator acts on {len(g)} points, expected {point_count}")
        self._gens = [g for g in gens if not g.is_identity()]
        if elements is None:
            elements = _closure(self._gens, point_count, cap or enumeration_cap())
            self._gens_given = True
        else:
            self._gens_given = bool(generators)
        self.elements = frozenset(elements)
        self._sorted = None
        self._indexed = None

    @property
    def generators(self) -> list[Permutation]:
        if not self._gens_given:
            self._gens = _greedy_generators(self.elements, self.point_count)
            self._gens_given = True
        return self._gens

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.elements

    def __iter__(self):
        return iter(self.sorted_elements())

    def sorted_elements(self) -> list[Permutation]:
        if self._sorted is None:
            self._sorted = sorted(self.elements)
        return self._sorted

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.point_count)

    def subgroup(self, elements: Iterable[Permutation]) -> Subgroup:
        return Subgroup(self, elements)

    def is_subgroup_of(self, other: FiniteGroup) -> bool:
        return self.elements <= other.elements

    def indexed(self) -> IndexedGroup:
        if self._indexed is None:
            self._indexed = IndexedGroup(self)
        return self._indexed

    def __repr__(self):
        return f"<{type(self).__name__} of order {self.order} on {self.point_count} points>"


class Subgroup(FiniteGroup):
    """A subgroup given by its element set inside ``parent``."""

    def __init__(self, parent: FiniteGroup, elements: Iterable[Permutation],
                 generators: Sequence[Permutation] = ()):
        elements = frozenset(elements)
        if not elements <= parent.elements:
            raise ValueError("subgroup elements are not all in the parent group")
        super().__init__(generators, parent.point_count, elements=elements, char_p=parent.char_p)
        self.parent = parent

    def check_closed(self) -> bool:
        if self.identity not in self.elements:
            return False
        gens = self.generators
        return all(compose(g, x) in self.elements for g in gens for x in self.elements) and \
            all(g.inverse() in self.elements for g in gens)


def generate_group(gens: Sequence[Permutation], point_count: int | None = None,
                   char_p: int | None = None, cap: int | None = None) -> FiniteGroup:
    if point_count is None:
        if not gens:
            raise ValueError("point_count is required without generators")
        point_count = len(gens[0])
    return FiniteGroup(gens, point_count, char_p=char_p, cap=cap)


def act(g: Permutation, x):
    """Image of a point, or of an unordered pair/set of points."""
    if isinstance(x, int):
        return g[x]
    return frozenset(g[y] for y in x)


def _point(x):
    return x if isinstance(x, int) else frozenset(x)


def orbit(G: FiniteGroup, x) -> set:
    x = _point(x)
    seen = {x}
    frontier = [x]
    gens = G.generators
    while frontier:
        nxt = []
        for y in frontier:
            for g in gens:
                z = act(g, y)
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    return seen


def orbits(G: FiniteGroup, points: Iterable) -> list[set]:
    """Orbit partition of ``points``, ordered by least member."""
    out = []
    done = set()
    for x in sorted(points, key=_sort_key):
        x = _point(x)
        if x in done:
            continue
        o = orbit(G, x)
        done |= o
        out.append(o)
    return out


def _sort_key(x):
    return (0, x) if isinstance(x, int) else (1, tuple(sorted(x)))


def stabilizer(G: FiniteGroup, x) -> Subgroup:
    x = _point(x)
    return Subgroup(G, (g for g in G.elements if act(g, x) == x))


def is_normal(G: FiniteGroup, N: FiniteGroup) -> bool:
    els = N.elements
    for g in G.generators:
        gi = g.inverse()
        for n in N.generators:
            if compose(compose(g, n), gi) not in els:
                return False
    return True


def normalizer(G: FiniteGroup, S: FiniteGroup) -> Subgroup:
    els = S.elements
    gens = S.generators
    keep = []
    for g in G.elements:
        gi = g.inverse()
        if all(compose(compose(g, s), gi) in els for s in gens):
            keep.append(g)
    return Subgroup(G, keep)


def _p_power_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _is_p_power(n: int, p: int) -> bool:
    return _p_power_part(n, p) == n


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """One Sylow p-subgroup, grown one p-element at a time inside normalizers."""
    target = _p_power_part(G.order, p)
    n = G.point_count
    S = Subgroup(G, [G.identity])
    while S.order < target:
        N = normalizer(G, S)
        for g in N.sorted_elements():
            if g in S.elements or not _is_p_power(g.order(), p):
                continue
            els = _closure(S.generators + [g], n, G.order)
            S = Subgroup(G, els, S.generators + [g])
            break
        else:  # pragma: no cover - excluded by Sylow's theorems
            raise RuntimeError("no p-element extends the p-subgroup")
    return S


def p_core(G: FiniteGroup, p: int) -> Subgroup:
    """O_p(G): the intersection of all Sylow p-subgroups of G."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if G.order % p:
        return Subgroup(G, [G.identity])
    S = sylow_subgroup(G, p)
    core = set(S.elements)
    for g in G.elements:
        gi = g.inverse()
        # g^-1 c g in S  <=>  c in g S g^-1
        core = {c for c in core if compose(compose(gi, c), g) in S.elements}
        if len(core) == 1:
            break
    return Subgroup(G, core)


@dataclass(frozen=True)
class SemidirectWitness:
    normal: bool
    trivial_intersection: bool
    order_product: bool
    orders: tuple[int, int, int]

    def __bool__(self):
        return self.normal and self.trivial_intersection and self.order_product

    @property
    def failed_clause(self) -> str | None:
        if not self.normal:
            return "N is not normal in G"
        if not self.trivial_intersection:
            return "N ∩ H is not trivial"
        if not self.order_product:
            return "|N|·|H| != |G|"
        return None

    def to_json(self) -> dict:
        g, n, h = self.orders
        return {"holds": bool(self), "normal": self.normal,
                "trivial_intersection": self.trivial_intersection,
                "order_product": self.order_product,
                "orders": {"G": g, "N": n, "H": h}, "failed_clause": self.failed_clause}


def is_semidirect(G: FiniteGroup, N: FiniteGroup, H: FiniteGroup) -> SemidirectWitness:
    """Check G = N ⋊ H for subgroups N, H of G."""
    inside = N.elements <= G.elements and H.elements <= G.elements
    return SemidirectWitness(
        normal=inside and is_normal(G, N),
        trivial_intersection=len(N.elements & H.elements) == 1,
        order_product=N.order * H.order == G.order,
        orders=(G.order, N.order, H.order),
    )


def cosets(G: FiniteGroup, H: FiniteGroup) -> list[frozenset]:
    """Left cosets gH, ordered by their least element."""
    if not H.elements <= G.elements:
        raise ValueError("H is not a subgroup of G")
    hs = list(H.elements)
    left = set(G.elements)
    out = []
    for g in G.sorted_elements():
        if g not in left:
            continue
        c = frozenset(compose(g, h) for h in hs)
        left -= c
        out.append(c)
    return out


def index(G: FiniteGroup, H: FiniteGroup) -> int:
    return len(cosets(G, H))


class IndexedGroup:
    """A finite group re-encoded on 0..n-1 with a multiplication table.

    Products of copies of subgroups of the same ambient group (semidirect
    powers in particular) multiply through these tables.
    """

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.elements = group.sorted_elements()
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.identity = self.index[group.identity]
        self.inv = [self.index[g.inverse()] for g in self.elements]
        self._rows: dict[int, list[int]] = {}
        self._conj: dict[int, list[int]] = {}

    def __len__(self):
        return len(self.elements)

    def row(self, a: int) -> list[int]:
        r = self._rows.get(a)
        if r is None:
            ga = self.elements[a]
            idx = self.index
            r = [idx[Permutation._raw(map(ga.__getitem__, h))] for h in self.elements]
            self._rows[a] = r
        return r

    def mul(self, a: int, b: int) -> int:
        return self.row(a)[b]

    def conj_row(self, a: int) -> list[int]:
        """x -> a x a^-1 as a lookup list."""
        r = self._conj.get(a)
        if r is None:
            ra = self.row(a)
            ai = self.inv[a]
            r = [self.row(ra[x])[ai] for x in range(len(self.elements))]
            self._conj[a] = r
        return r

    def indices(self, sub: FiniteGroup) -> frozenset[int]:
        return frozenset(self.index[g] for g in sub.elements)

    def generators_of(self, sub: FiniteGroup) -> list[int]:
        return [self.index[g] for g in sub.generators]
