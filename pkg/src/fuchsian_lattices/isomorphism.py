"""Small undirected (multi)graphs and exact isomorphism testing.

The test is individualisation-refinement: colour refinement run jointly on
both graphs, then backtracking over individualised vertex pairs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

MAX_VERTICES = 5000


class GraphTooLarge(ValueError):
    pass


@dataclass
class Graph:
    nodes: list[Hashable]
    edges: list[tuple[Hashable, Hashable]] = field(default_factory=list)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], nodes: Iterable | None = None) -> Graph:
        edges = [tuple(e) for e in edges]
        if nodes is None:
            nodes = sorted({x for e in edges for x in e}, key=repr)
        return cls(list(nodes), edges)

    @property
    def n_vertices(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def is_simple(self) -> bool:
        keys = [frozenset(e) for e in self.edges]
        return all(len(k) == 2 for k in keys) and len(set(keys)) == len(keys)

    def index_adjacency(self) -> tuple[dict, list[list[int]]]:
        pos = {v: i for i, v in enumerate(self.nodes)}
        adj = [[] for _ in self.nodes]
        for a, b in self.edges:
            i, j = pos[a], pos[b]
            adj[i].append(j)
            adj[j].append(i)
        return pos, adj

    def degrees(self) -> list[int]:
        return [len(a) for a in self.index_adjacency()[1]]

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        _, adj = self.index_adjacency()
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.nodes)

    def is_bipartite_with(self, left: set) -> bool:
        return all((a in left) != (b in left) for a, b in self.edges)

    def relabel(self, mapping: dict) -> Graph:
        return Graph([mapping[v] for v in self.nodes],
                     [(mapping[a], mapping[b]) for a, b in self.edges])

    def to_json(self) -> dict:
        pos = {v: i for i, v in enumerate(self.nodes)}
        return {"n_vertices": self.n_vertices,
                "edges": sorted(sorted((pos[a], pos[b])) for a, b in self.edges)}


def cycle_graph(n: int) -> Graph:
    return Graph(list(range(n)), [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    left = [("L", i) for i in range(a)]
    right = [("R", j) for j in range(b)]
    return Graph(left + right, [(x, y) for x in left for y in right])


@dataclass
class IsomorphismResult:
    isomorphic: bool
    mapping: dict | None = None
    reason: str | None = None

    def __bool__(self):
        return self.isomorphic


def _refine(adjs: Sequence[list[list[int]]], cols: list[list[int]]) -> list[list[int]] | None:
    """Joint colour refinement to a stable partition; None if the histograms diverge."""
    n_classes = len(set(cols[0]))
    while True:
        sigs = [[(c[v], tuple(sorted(c[w] for w in adj[v]))) for v in range(len(adj))]
                for adj, c in zip(adjs, cols)]
        table = {s: i for i, s in enumerate(sorted(set(sigs[0]) | set(sigs[1])))}
        cols = [[table[s] for s in sg] for sg in sigs]
        if Counter(cols[0]) != Counter(cols[1]):
            return None
        k = len(set(cols[0]))
        if k == n_classes:
            return cols
        n_classes = k


def _search(adjs, cols, target_edges: Counter):
    cols = _refine(adjs, cols)
    if cols is None:
        return None
    c1, c2 = cols
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(c1):
        classes.setdefault(c, []).append(v)
    open_classes = [(len(vs), c) for c, vs in classes.items() if len(vs) > 1]
    if not open_classes:
        where = {c: v for v, c in enumerate(c2)}
        mapping = [where[c] for c in c1]
        image = Counter(frozenset((mapping[a], mapping[b])) if a != b else frozenset((mapping[a],))
                        for a, b in _edge_list(adjs[0]))
        return mapping if image == target_edges else None
    _, target = min(open_classes)
    a = classes[target][0]
    fresh = max(max(c1), max(c2)) + 1
    for b in (v for v, c in enumerate(c2) if c == target):
        n1, n2 = list(c1), list(c2)
        n1[a] = fresh
        n2[b] = fresh
        found = _search(adjs, [n1, n2], target_edges)
        if found is not None:
            return found
    return None


def _edge_list(adj: list[list[int]]):
    for a, ns in enumerate(adj):
        for b in ns:
            if a < b or (a == b):
                yield a, b


def graph_isomorphic(g1: Graph, g2: Graph) -> IsomorphismResult:
    """Exact isomorphism test; on success ``mapping`` sends g1 nodes to g2 nodes."""
    for g in (g1, g2):
        if g.n_vertices > MAX_VERTICES:
            raise GraphTooLarge(f"graph has {g.n_vertices} vertices, cap is {MAX_VERTICES}")
    if g1.n_vertices != g2.n_vertices:
        return IsomorphismResult(False, reason="vertex counts differ")
    if g1.n_edges != g2.n_edges:
        return IsomorphismResult(False, reason="edge counts differ")
    _, adj1 = g1.index_adjacency()
    _, adj2 = g2.index_adjacency()
    if sorted(map(len, adj1)) != sorted(map(len, adj2)):
        return IsomorphismResult(False, reason="degree sequences differ")
    if g1.n_vertices == 0:
        return IsomorphismResult(True, {})
    edges2 = Counter(frozenset(e) for e in _edge_list(adj2))
    found = _search([adj1, adj2], [[0] * len(adj1), [0] * len(adj2)], edges2)
    if found is None:
        return IsomorphismResult(False, reason="no colour-compatible bijection preserves edges")
    return IsomorphismResult(True, {g1.nodes[i]: g2.nodes[j] for i, j in enumerate(found)})
