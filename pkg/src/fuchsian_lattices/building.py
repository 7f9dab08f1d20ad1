"""Rank-2 spherical buildings as bipartite incidence graphs.

Two coordinatised families are built directly: the projective plane PG(2, q)
acted on by SL_3(F_q), and the symplectic quadrangle W(q) acted on by
Sp_4(F_q).  Anything else comes in through the JSON building schema.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Matrix, Permutation, check_prime, rref

POINT, LINE = "point", "line"
MAX_Q = 7
GONALITIES = (3, 4, 6, 8)


class BuildingError(ValueError):
    """Malformed building data; ``record`` names the offending entry."""

    def __init__(self, message: str, record=None):
        super().__init__(message if record is None else f"{message}: {record!r}")
        self.reason = message
        self.record = record


@dataclass
class IncidenceGraph:
    """A graph with typed vertices; edges are sorted id pairs."""

    types: list[str]
    edges: list[tuple[int, int]]
    char_p: int | None = None
    m: int | None = None
    labels: list | None = field(default=None, repr=False)

    def __post_init__(self):
        self.edges = sorted(tuple(sorted(e)) for e in self.edges)
        self._adj = None

    @property
    def n_vertices(self) -> int:
        return len(self.types)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def adjacency(self) -> list[list[int]]:
        if self._adj is None:
            adj = [[] for _ in self.types]
            for a, b in self.edges:
                adj[a].append(b)
                adj[b].append(a)
            self._adj = [sorted(x) for x in adj]
        return self._adj

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def distances_from(self, s: int) -> list[int]:
        dist = [-1] * self.n_vertices
        dist[s] = 0
        queue = deque([s])
        adj = self.adjacency
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def validate(self):
        """Type-bipartite and simple; raises :class:`BuildingError` otherwise."""
        seen = set()
        n = self.n_vertices
        for e in self.edges:
            a, b = e
            if not (0 <= a < n and 0 <= b < n):
                raise BuildingError("edge endpoint out of range", list(e))
            if a == b:
                raise BuildingError("loop edge", list(e))
            if self.types[a] == self.types[b]:
                raise BuildingError("edge within one part", list(e))
            if e in seen:
                raise BuildingError("duplicate edge", list(e))
            seen.add(e)
        return self

    def is_automorphism(self, g: Sequence[int], preserve_types: bool = True) -> bool:
        if len(g) != self.n_vertices:
            return False
        es = set(self.edges)
        if preserve_types and any(self.types[g[v]] != self.types[v] for v in range(len(g))):
            return False
        return all(tuple(sorted((g[a], g[b]))) in es for a, b in self.edges)


def _points(q: int, dim: int) -> list[tuple[int, ...]]:
    """Normalised representatives of the 1-spaces of F_q^dim, sorted."""
    out = []
    for v in itertools.product(range(q), repeat=dim):
        if any(v):
            lead = next(x for x in v if x)
            if lead == 1:
                out.append(v)
    return sorted(out)


def _planes(q: int, dim: int, pts: list[tuple[int, ...]], keep=lambda basis: True):
    """2-spaces of F_q^dim as RREF bases, sorted."""
    found = set()
    for a, b in itertools.combinations(pts, 2):
        basis = rref([a, b], q)
        if len(basis) == 2 and basis not in found and keep(basis):
            found.add(basis)
    return sorted(found)


def _span_contains(basis, v, q) -> bool:
    return len(rref(list(basis) + [v], q)) == len(basis)


def _subspace_building(q: int, dim: int, matrices: Sequence[Matrix], keep_plane=lambda b: True):
    pts = _points(q, dim)
    planes = _planes(q, dim, pts, keep_plane)
    labels = [(x,) for x in pts] + list(planes)
    index = {lab: i for i, lab in enumerate(labels)}
    types = [POINT] * len(pts) + [LINE] * len(planes)
    edges = []
    for j, basis in enumerate(planes):
        for i, v in enumerate(pts):
            if _span_contains(basis, v, q):
                edges.append((i, len(pts) + j))
    graph = IncidenceGraph(types, edges, char_p=q, labels=labels).validate()
    gens = []
    for A in matrices:
        img = [index[rref([A.apply(v) for v in lab], q)] for lab in labels]
        p = Permutation(img)
        if not p.is_identity():
            gens.append(p)
    return graph, gens


def _check_q(q: int, cap: int):
    check_prime(q)
    if q > cap:
        raise BuildingError(f"q = {q} exceeds the configured cap {cap}")


def sl3_generators(q: int) -> list[Matrix]:
    """Elementary transvections I + E_ij; they generate SL_3(F_q) for q prime."""
    out = []
    for i, j in itertools.permutations(range(3), 2):
        rows = [[int(a == b) for b in range(3)] for a in range(3)]
        rows[i][j] = 1
        out.append(Matrix(tuple(map(tuple, rows)), q))
    return out


# Standard antidiagonal alternating form: w(x, y) = x0 y3 + x1 y2 - x2 y1 - x3 y0.
SYMPLECTIC_FORM = ((0, 0, 0, 1), (0, 0, 1, 0), (0, -1, 0, 0), (-1, 0, 0, 0))


def symplectic_pairing(x, y, q: int) -> int:
    return sum(x[i] * SYMPLECTIC_FORM[i][j] * y[j] for i in range(4) for j in range(4)) % q


def transvection(v: Sequence[int], q: int) -> Matrix:
    """x -> x + w(x, v) v, a symplectic transvection."""
    jv = [sum(SYMPLECTIC_FORM[i][j] * v[j] for j in range(4)) for i in range(4)]
    return Matrix(tuple(tuple(int(i == j) + v[i] * jv[j] for j in range(4)) for i in range(4)), q)


def sp4_generators(q: int) -> list[Matrix]:
    vecs = [tuple(int(i == j) for j in range(4)) for i in range(4)]
    vecs += [tuple(int(j in (i, i + 1)) for j in range(4)) for i in range(3)]
    return [transvection(v, q) for v in vecs]


def build_projective_plane(q: int, cap: int = MAX_Q):
    """PG(2, q): points and lines of F_q^3 with SL_3(F_q) generators."""
    _check_q(q, cap)
    graph, gens = _subspace_building(q, 3, sl3_generators(q))
    graph.m = 3
    return graph, gens


def build_symplectic_quadrangle(q: int, cap: int = MAX_Q):
    """W(q): all points of PG(3, q) and the totally isotropic lines, with Sp_4(F_q)."""
    _check_q(q, cap)
    graph, gens = _subspace_building(
        q, 4, sp4_generators(q),
        keep_plane=lambda b: symplectic_pairing(b[0], b[1], q) == 0)
    graph.m = 4
    return graph, gens


def cycle_polygon(m: int) -> IncidenceGraph:
    """The thin generalised m-gon: a 2m-cycle with alternating types."""
    n = 2 * m
    return IncidenceGraph([POINT if i % 2 == 0 else LINE for i in range(n)],
                          [(i, (i + 1) % n) for i in range(n)])


def building_to_json(graph: IncidenceGraph, generators: Sequence[Sequence[int]]) -> dict:
    return {
        "char_p": graph.char_p,
        "vertices": [{"id": i, "type": t} for i, t in enumerate(graph.types)],
        "edges": [list(e) for e in graph.edges],
        "generators": [list(g) for g in generators],
    }


def export_building(graph: IncidenceGraph, generators, path=None) -> str:
    text = json.dumps(building_to_json(graph, generators), sort_keys=True, indent=1) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    return text


def building_from_json(data) -> tuple[IncidenceGraph, list[Permutation]]:
    if not isinstance(data, dict):
        raise BuildingError("building file must be a JSON object")
    for key in ("char_p", "vertices", "edges", "generators"):
        if key not in data:
            raise BuildingError("missing key", key)
    char_p = data["char_p"]
    if not isinstance(char_p, int):
        raise BuildingError("char_p must be an integer", char_p)
    verts = data["vertices"]
    if not isinstance(verts, list):
        raise BuildingError("vertices must be a list")
    n = len(verts)
    types: list[str | None] = [None] * n
    for rec in verts:
        if not isinstance(rec, dict) or set(rec) != {"id", "type"}:
            raise BuildingError("malformed vertex record", rec)
        i, t = rec["id"], rec["type"]
        if not isinstance(i, int) or not 0 <= i < n or types[i] is not None:
            raise BuildingError("vertex ids must be 0..N-1 without repeats", rec)
        if t not in (POINT, LINE):
            raise BuildingError("vertex type must be 'point' or 'line'", rec)
        types[i] = t
    edges = []
    for rec in data["edges"]:
        if (not isinstance(rec, list) or len(rec) != 2
                or not all(isinstance(x, int) for x in rec)):
            raise BuildingError("malformed edge record", rec)
        edges.append(tuple(rec))
    graph = IncidenceGraph(types, edges, char_p=char_p)
    graph.validate()
    gens = []
    for i, rec in enumerate(data["generators"]):
        if not isinstance(rec, list) or not all(isinstance(x, int) for x in rec):
            raise BuildingError("malformed generator record", i)
        if len(rec) != n:
            raise BuildingError("permutation length mismatch", i)
        if sorted(rec) != list(range(n)):
            raise BuildingError("generator is not a bijection", i)
        if not graph.is_automorphism(rec):
            raise BuildingError("generator is not a type-preserving automorphism", i)
        gens.append(Permutation(rec))
    return graph, gens


def import_building(path) -> tuple[IncidenceGraph, list[Permutation]]:
    with open(path, encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise BuildingError(f"invalid JSON: {exc}") from exc
    return building_from_json(data)


@dataclass
class PolygonCertificate:
    m: int
    diameter: int
    girth: int | None
    valences: tuple[int | None, int | None]
    thick: bool
    bipartite: bool
    n_vertices: int
    n_edges: int
    opposite_valence_identity: bool

    @property
    def valid(self) -> bool:
        return (self.bipartite and self.girth is not None and self.m in GONALITIES
                and self.diameter == self.m and self.girth == 2 * self.m
                and self.opposite_valence_identity)

    def to_json(self) -> dict:
        return {
            "m": self.m, "diameter": self.diameter, "girth": self.girth,
            "valences": {"point": self.valences[0], "line": self.valences[1]},
            "thick": self.thick, "bipartite": self.bipartite,
            "n_vertices": self.n_vertices, "n_edges": self.n_edges,
            "opposite_valence_identity": self.opposite_valence_identity,
            "valid": self.valid,
        }


def _girth(graph: IncidenceGraph) -> int | None:
    best = None
    adj = graph.adjacency
    for s in range(graph.n_vertices):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    c = dist[u] + dist[w] + 1
                    if best is None or c < best:
                        best = c
    return best


class DisconnectedGraph(ValueError):
    pass


def verify_generalized_polygon(graph: IncidenceGraph) -> PolygonCertificate:
    """Diameter and girth by BFS from every vertex, plus valence data."""
    n = graph.n_vertices
    if n == 0:
        raise DisconnectedGraph("empty graph")
    diameter = 0
    all_dist = []
    for s in range(n):
        d = graph.distances_from(s)
        if min(d) < 0:
            raise DisconnectedGraph(f"graph is disconnected (vertex {d.index(-1)} unreachable from {s})")
        diameter = max(diameter, max(d))
        all_dist.append(d)
    girth = _girth(graph)
    bipartite = all(graph.types[a] != graph.types[b] for a, b in graph.edges)
    degs = {POINT: set(), LINE: set()}
    for v, t in enumerate(graph.types):
        degs.setdefault(t, set()).add(graph.degree(v))
    valences = tuple(next(iter(degs[t])) if len(degs[t]) == 1 else None for t in (POINT, LINE))
    thick = all(graph.degree(v) >= 3 for v in range(n))
    opposite_ok = all(graph.degree(u) == graph.degree(w)
                      for u in range(n) for w in range(n) if all_dist[u][w] == diameter)
    return PolygonCertificate(
        m=diameter, diameter=diameter, girth=girth, valences=valences, thick=thick,
        bipartite=bipartite, n_vertices=n, n_edges=graph.n_edges,
        opposite_valence_identity=opposite_ok)


def barycentric_subdivision(graph: IncidenceGraph) -> IncidenceGraph:
    """One new vertex per edge (type ``flag``); old vertices keep their ids."""
    n = graph.n_vertices
    types = list(graph.types) + ["flag"] * graph.n_edges
    edges = []
    for i, (a, b) in enumerate(graph.edges):
        edges.append((a, n + i))
        edges.append((b, n + i))
    return IncidenceGraph(types, edges, char_p=graph.char_p)

