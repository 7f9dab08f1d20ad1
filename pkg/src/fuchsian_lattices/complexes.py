"""Complexes of groups over {0,1,2}-coloured 2-complexes.

G(Y_1) is the cone over the barycentric subdivision of the ray P\\Δ: a cone
point c (colour 0) with group P, ray vertices r_0..r_m (colour 1) with
groups V_j × Z2 and ray-edge midpoints e_1..e_m (colour 2) with groups
E_j × D_k.  Cells are

    c–r_j : V_j          c–e_j : E_j          r_{j-1}–e_j, r_j–e_j : E_j × Z2
    c–r_{j-1}–e_j, c–r_j–e_j : E_j

where the Z2 on r_{j-1}–e_j goes to the reflection r1 of D_k and the one on
r_j–e_j to r2.  In piece n every P-subgroup Q is replaced by U_P^{n-1} ⋊ Q,
which is U_P^n ⋊ L_P at the cone point.  Gluing piece n to piece n+1
identifies the r_0 end of piece n with the r_m end of piece n+1; the glued
cells drop their Z2 and the glued midpoint carries D_{k/2}.  Groups of piece
n+1 enter the glued cells through the fold isomorphism
U_P^n ⋊ Q -> U_P^{n-1} ⋊ (U_P Q).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .building import IncidenceGraph, barycentric_subdivision
from .graph_of_groups import LeviData
from .isomorphism import Graph, complete_bipartite, cycle_graph, graph_isomorphic
from .products import (AbstractGroup, AmbientSubgroup, Cyclic, Dihedral, DirectProduct,
                       SemidirectPower, generated_subgroup, to_json_label)

EXHAUSTIVE_CAP = 20000


class ComplexError(ValueError):
    pass


class InconsistentMonomorphisms(ComplexError):
    pass


@dataclass
class CellSpec:
    """Declarative description of one cell and its local group.

    The group is (U_P^{owner-1} ⋊ core) × factor, where ``factor`` is None,
    ``"Z2"`` or ``"D"`` (dihedral of order ``dihedral_order``).  ``side`` says
    which reflection of the adjacent dihedral group a Z2 on a 1–2 edge maps to.
    """

    id: str
    vertices: tuple[str, ...]
    owner: int
    core: str
    factor: str | None = None
    dihedral_order: int | None = None
    side: str | None = None
    color: int | None = None
    meta: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


class Mono:
    """An injective homomorphism between local groups, as a label map."""

    def __init__(self, source: AbstractGroup, target: AbstractGroup,
                 fn: Callable, description: str):
        self.source = source
        self.target = target
        self.fn = fn
        self.description = description

    def __call__(self, x):
        return self.fn(x)

    def __repr__(self):
        return f"<Mono {self.source.name} -> {self.target.name}: {self.description}>"


@dataclass
class Blueprint:
    """Cells of a complex of groups before their groups are materialised."""

    levi: LeviData
    k: int
    cells: dict[str, CellSpec]
    kind: str
    pieces: int

    def vertex_ids(self, color: int | None = None) -> list[str]:
        return [c.id for c in self.cells.values()
                if c.dim == 0 and (color is None or c.color == color)]

    def drop_reflection(self, vertex_id: str) -> Blueprint:
        """Remove the Z2 factor at a 1-vertex and on its edges to 2-vertices."""
        cell = self.cells[vertex_id]
        if cell.color != 1 or cell.factor != "Z2":
            raise ComplexError(f"{vertex_id} carries no Z2 factor")
        cell.factor = None
        for c in self.cells.values():
            if c.dim == 1 and vertex_id in c.vertices and c.factor == "Z2":
                c.factor = None
                c.side = None
        return self

    def materialize(self) -> ComplexOfGroups:
        return ComplexOfGroups(self)


def _display_names(m: int) -> dict[str, str]:
    names = {"V0": "P", "V1": "B", f"V{m}": "L_P", "E1": "B", f"E{m}": "K_P"}
    for j in range(2, m):
        names[f"V{j}"] = names[f"E{j}"] = f"H{m - j}"
    return names


class _Ambient:
    """P re-indexed, with the ray subgroups as ambient subgroups."""

    def __init__(self, levi: LeviData):
        ray = levi.ray
        m = ray.m
        self.indexed = levi.P.indexed()
        self.names = _display_names(m)
        self.sub: dict[str, AmbientSubgroup] = {}
        for j, g in enumerate(ray.vertex_groups):
            self.sub[f"V{j}"] = AmbientSubgroup.of(self.indexed, g, self.names[f"V{j}"])
        for j, g in enumerate(ray.edge_groups, start=1):
            self.sub[f"E{j}"] = AmbientSubgroup.of(self.indexed, g, self.names[f"E{j}"])
        self.U = AmbientSubgroup.of(self.indexed, levi.U, "U_P")
        self._powers: dict = {}

    def power(self, owner: int, core: str) -> SemidirectPower:
        key = (owner, core)
        if key not in self._powers:
            self._powers[key] = SemidirectPower(self.U, self.sub[core], owner - 1)
        return self._powers[key]


def _fold(amb, src_len: int) -> Callable:
    """(y_1..y_n, g) -> (y_1 y_n^-1, .., y_{n-1} y_n^-1, y_n g)."""
    row, inv = amb.row, amb.inv

    def fold(x):
        yn = x[-2]
        yi = inv[yn]
        return tuple(row(y)[yi] for y in x[:-2]) + (row(yn)[x[-1]],)
    return fold


class ComplexOfGroups:
    """A simple (twist-free) complex of groups materialised from a blueprint."""

    def __init__(self, blueprint: Blueprint):
        self.blueprint = blueprint
        self.levi = blueprint.levi
        self.k = blueprint.k
        self.kind = blueprint.kind
        self.pieces = blueprint.pieces
        self.cells = blueprint.cells
        self.ambient = _Ambient(self.levi)
        self.groups: dict[str, AbstractGroup] = {}
        for c in self.cells.values():
            self.groups[c.id] = self._group_for(c)
        self._by_vertices = {frozenset(c.vertices): c.id for c in self.cells.values()}
        if len(self._by_vertices) != len(self.cells):
            raise ComplexError("multi-cells are not supported by the simplicial builders")
        self._check_coloring()
        self.monos: dict[tuple[str, str], Mono] = {}
        for c in self.cells.values():
            for face in self.faces(c.id):
                self.monos[(c.id, face)] = self._mono(c, self.cells[face])
        self.reflection_marks = {}
        for c in self.cells.values():
            if c.dim == 0 and c.color == 1 and c.factor == "Z2":
                G = self.groups[c.id]
                self.reflection_marks[c.id] = G.inject_right(1)

    # -- structure -------------------------------------------------------

    def _group_for(self, c: CellSpec) -> AbstractGroup:
        base = self.ambient.power(c.owner, c.core)
        if c.factor is None:
            return base
        if c.factor == "Z2":
            return DirectProduct(base, Cyclic(2))
        if c.factor == "D":
            return DirectProduct(base, Dihedral(c.dihedral_order))
        raise ComplexError(f"unknown factor {c.factor!r} on {c.id}")

    def _check_coloring(self):
        for c in self.cells.values():
            if c.dim == 2:
                colors = sorted(self.cells[v].color for v in c.vertices)
                if colors != [0, 1, 2]:
                    raise ComplexError(f"triangle {c.id} has colours {colors}")
        for c in self.cells.values():
            if c.dim == 1 and not any(set(c.vertices) <= set(t.vertices)
                                      for t in self.cells.values() if t.dim == 2):
                raise ComplexError(f"edge {c.id} lies in no triangle")

    def faces(self, cell_id: str) -> list[str]:
        verts = self.cells[cell_id].vertices
        out = []
        if len(verts) == 3:
            for i in range(3):
                out.append(self._by_vertices[frozenset(verts[:i] + verts[i + 1:])])
        if len(verts) >= 2:
            out.extend(verts)
        return out

    def vertices(self, color: int | None = None) -> list[str]:
        return [c.id for c in self.cells.values()
                if c.dim == 0 and (color is None or c.color == color)]

    def cells_of_dim(self, dim: int) -> list[str]:
        return [c.id for c in self.cells.values() if c.dim == dim]

    def incident(self, v: str, dim: int) -> list[str]:
        return [c.id for c in self.cells.values() if c.dim == dim and v in c.vertices]

    def _mono(self, src: CellSpec, tgt: CellSpec) -> Mono:
        amb = self.ambient
        S, T = self.groups[src.id], self.groups[tgt.id]
        src_core = amb.sub[src.core].members
        tgt_core = amb.sub[tgt.core].members
        if src.owner == tgt.owner:
            if not src_core <= tgt_core:
                raise ComplexError(f"{src.core} is not contained in {tgt.core} ({src.id} -> {tgt.id})")
            base, desc = (lambda x: x), "inclusion"
        elif src.owner == tgt.owner + 1 and src.owner >= 2:
            ind = amb.indexed
            uq = {ind.mul(u, q) for u in amb.U.members for q in src_core}
            if not src_core <= amb.sub[f"V{self.levi.m}"].members or not uq <= tgt_core:
                raise ComplexError(f"fold from {src.id} into {tgt.id} is not defined")
            base, desc = _fold(ind, src.owner), "fold"
        else:
            raise ComplexError(f"no map from piece {src.owner} into piece {tgt.owner}")

        if src.factor is None and tgt.factor is None:
            fn = base
        elif src.factor is None:
            e = T.right.identity
            fn = (lambda x, b=base, e=e: (b(x), e))
            desc += " × 1"
        elif src.factor == "Z2" and tgt.factor == "Z2":
            fn = (lambda x, b=base: (b(x[0]), x[1]))
            desc += " × id_Z2"
        elif src.factor == "Z2" and tgt.factor == "D":
            D = T.right
            refl = D.r1 if src.side == "r1" else D.r2
            fn = (lambda x, b=base, r=refl, e=D.identity: (b(x[0]), r if x[1] else e))
            desc += f" × (Z2 -> <{src.side}>)"
        else:
            raise ComplexError(f"cannot map factor {src.factor} of {src.id} into {tgt.id}")
        return Mono(S, T, fn, desc)

    def covers(self, v: str) -> int | None:
        return self.cells[v].meta.get("covers")

    def zero_vertex_orders(self) -> list[int]:
        vs = sorted(self.vertices(0), key=lambda v: self.cells[v].owner)
        return [self.groups[v].order for v in vs]

    def group_label(self, cell_id: str) -> str:
        c = self.cells[cell_id]
        core = self.ambient.names[c.core]
        n = c.owner - 1
        label = core if n == 0 else f"U_P^{n} ⋊ {core}"
        if c.factor == "Z2":
            label = f"({label}) × Z2"
        elif c.factor == "D":
            label = f"({label}) × D{c.dihedral_order}"
        return label

    def to_json(self, generator_images: bool = True) -> dict:
        cells = []
        for c in self.cells.values():
            entry = {"id": c.id, "dim": c.dim, "vertices": list(c.vertices),
                     "group": {"label": self.group_label(c.id), "order": self.groups[c.id].order},
                     "piece": c.owner, "meta": c.meta}
            if c.dim == 0:
                entry["color"] = c.color
            cells.append(entry)
        monos = []
        for (s, t), f in self.monos.items():
            rec = {"source": s, "target": t, "map": f.description}
            if generator_images:
                rec["generator_images"] = [[to_json_label(g), to_json_label(f(g))]
                                           for g in f.source.generators()]
            monos.append(rec)
        return {
            "kind": self.kind,
            "k": self.k,
            "m": self.levi.m,
            "pieces": self.pieces,
            "ambient": {"group": "P", "order": self.levi.P.order,
                        "elements": [list(g) for g in self.ambient.indexed.elements]},
            "cells": cells,
            "monomorphisms": monos,
            "reflection_marks": {v: to_json_label(x) for v, x in self.reflection_marks.items()},
            "zero_vertex_orders": self.zero_vertex_orders(),
        }


# -- builders ------------------------------------------------------------

def _edge_id(*vs: str) -> str:
    return "|".join(vs)


def _piece_cells(levi: LeviData, k: int, n: int, near_glued: bool, far_glued: bool,
                 open_end: bool = False) -> list[CellSpec]:
    """Cells owned by piece n; the far end is omitted when glued to piece n-1."""
    m = levi.m
    path = levi.ray.path
    c = f"c{n}"

    def r(j):
        return f"r{n - 1}.0" if far_glued and j == m else f"r{n}.{j}"

    def e(j):
        return f"e{n - 1}.1" if far_glued and j == m else f"e{n}.{j}"

    def owned(j):
        return not (far_glued and j == m)

    glued_near = {"glued": True} if near_glued else ({"open_end": True} if open_end else {})
    out = [CellSpec(c, (c,), n, "V0", color=0, meta={"role": "cone", "piece": n})]
    for j in range(m + 1):
        if not owned(j):
            continue
        meta = {"role": "ray_vertex", "j": j, "covers": path[j], "piece": n}
        if j == 0 and near_glued:
            out.append(CellSpec(r(0), (r(0),), n, "V0", color=1, meta={**meta, **glued_near}))
        else:
            if j == 0:
                meta.update(glued_near)
            out.append(CellSpec(r(j), (r(j),), n, f"V{j}", "Z2", color=1, meta=meta))
    for j in range(1, m + 1):
        if not owned(j):
            continue
        meta = {"role": "ray_edge", "j": j, "piece": n}
        if j == 1 and near_glued:
            out.append(CellSpec(e(1), (e(1),), n, "E1", "D", dihedral_order=k // 2, color=2,
                                meta={**meta, **glued_near}))
        else:
            if j == 1:
                meta.update(glued_near)
            out.append(CellSpec(e(j), (e(j),), n, f"E{j}", "D", dihedral_order=k, color=2,
                                meta=meta))
    for j in range(m + 1):
        out.append(CellSpec(_edge_id(c, r(j)), (c, r(j)), n, f"V{j}"))
    for j in range(1, m + 1):
        out.append(CellSpec(_edge_id(c, e(j)), (c, e(j)), n, f"E{j}"))
        for i, side in ((j - 1, "r1"), (j, "r2")):
            eid = _edge_id(r(i), e(j))
            if not owned(j) and i == m:
                pass  # the glued r_m–e_m edge belongs to piece n-1
            elif i == 0 and j == 1 and near_glued:
                out.append(CellSpec(eid, (r(i), e(j)), n, "E1", meta={"glued": True}))
            else:
                out.append(CellSpec(eid, (r(i), e(j)), n, f"E{j}", "Z2", side=side))
            out.append(CellSpec(_edge_id(c, r(i), e(j)), (c, r(i), e(j)), n, f"E{j}"))
    return out


def _check_k(k: int, glue: bool = False):
    if not isinstance(k, int) or k < 4 or k % 2:
        raise ComplexError(f"k must be an even integer >= 4, got {k!r}")
    if glue and k % 4:
        raise ComplexError(f"k must be divisible by 4 for gluing, got {k}")


def gy_blueprint(levi: LeviData, k: int, n: int = 1) -> Blueprint:
    _check_k(k)
    if n < 1:
        raise ComplexError("n must be >= 1")
    cells = _piece_cells(levi, k, n, near_glued=False, far_glued=False)
    return Blueprint(levi, k, {c.id: c for c in cells}, kind=f"G(Y_{n})", pieces=1)


def glue_blueprint(levi: LeviData, k: int, N: int) -> Blueprint:
    _check_k(k, glue=True)
    if N < 1:
        raise ComplexError("N must be >= 1")
    if N == 1:
        return gy_blueprint(levi, k, 1)
    cells = []
    for n in range(1, N + 1):
        cells += _piece_cells(levi, k, n, near_glued=n < N, far_glued=n > 1, open_end=n == N)
    return Blueprint(levi, k, {c.id: c for c in cells},
                     kind=f"G(Y_1) ∪ ... ∪ G(Y_{N})", pieces=N)


def build_gy1(levi: LeviData, k: int) -> ComplexOfGroups:
    """The cone over the subdivided ray with P at the cone point."""
    return gy_blueprint(levi, k, 1).materialize()


def build_gyn(levi: LeviData, k: int, n: int) -> ComplexOfGroups:
    """G(Y_n): G(Y_1) with each P-subgroup Q replaced by U_P^{n-1} ⋊ Q."""
    return gy_blueprint(levi, k, n).materialize()


def glue_complexes(levi: LeviData, k: int, N: int) -> ComplexOfGroups:
    """G(Y_1), ..., G(Y_N) glued in sequence; a truncation of G(Y_∞)."""
    return glue_blueprint(levi, k, N).materialize()


# -- local developments ----------------------------------------------------

def _coset_ids(G: AbstractGroup, pos: dict, els: list, H: list) -> list[int]:
    cid = [-1] * len(els)
    nxt = 0
    for i, g in enumerate(els):
        if cid[i] >= 0:
            continue
        for h in H:
            cid[pos[G.mul(g, h)]] = nxt
        nxt += 1
    return cid


def local_development_link(c: ComplexOfGroups, v: str) -> Graph:
    """Link of v in its local development, built from cosets of the images of
    incident edge groups (link vertices) and triangle groups (link edges)."""
    G = c.groups[v]
    els = G.elements()
    pos = {x: i for i, x in enumerate(els)}
    edge_cosets = {}
    nodes = []
    for e in c.incident(v, 1):
        f = c.monos[(e, v)]
        image = list({f(x) for x in f.source.elements()})
        cid = _coset_ids(G, pos, els, image)
        edge_cosets[e] = cid
        nodes += [(e, i) for i in range(max(cid) + 1)]
    edges = []
    for t in c.incident(v, 2):
        f = c.monos[(t, v)]
        image = list({f(x) for x in f.source.elements()})
        e1, e2 = [e for e in c.faces(t) if c.cells[e].dim == 1 and v in c.cells[e].vertices]
        a, b = edge_cosets[e1], edge_cosets[e2]
        tid = _coset_ids(G, pos, els, image)
        seen = {}
        for i, t_i in enumerate(tid):
            pair = (a[i], b[i])
            prev = seen.setdefault(t_i, pair)
            if prev != pair:
                raise InconsistentMonomorphisms(
                    f"triangle {t} group is not inside the edge groups at {v}")
        for t_i in sorted(seen):
            x, y = seen[t_i]
            edges.append(((e1, x), (e2, y)))
    return Graph(nodes, edges)


@dataclass
class LinkEntry:
    vertex: str
    color: int
    expected: str
    isomorphic: bool
    n_vertices: int
    n_edges: int
    reason: str | None = None
    open_end: bool = False
    link: Graph | None = None

    def to_json(self, with_link: bool = False) -> dict:
        out = {"vertex": self.vertex, "color": self.color, "expected": self.expected,
               "isomorphic": self.isomorphic, "n_vertices": self.n_vertices,
               "n_edges": self.n_edges, "reason": self.reason, "open_end": self.open_end}
        if with_link and self.link is not None:
            out["link"] = self.link.to_json()
        return out


@dataclass
class LinkReport:
    entries: list[LinkEntry]

    @property
    def passed(self) -> bool:
        return all(e.isomorphic for e in self.entries)

    def failures(self) -> list[LinkEntry]:
        return [e for e in self.entries if not e.isomorphic]

    def by_vertex(self) -> dict[str, LinkEntry]:
        return {e.vertex: e for e in self.entries}

    def color_types(self) -> dict[int, list[str]]:
        """Per colour, the sorted multiset of matched link types."""
        out: dict[int, list[str]] = {}
        for e in self.entries:
            out.setdefault(e.color, []).append(e.expected if e.isomorphic else "mismatch")
        return {c: sorted(set(v)) for c, v in sorted(out.items())}

    def to_json(self, with_links: bool = False) -> dict:
        return {"passed": self.passed,
                "entries": [e.to_json(with_links) for e in self.entries],
                "color_types": {str(c): t for c, t in self.color_types().items()}}


def expected_link(c: ComplexOfGroups, v: str, delta: IncidenceGraph, k: int) -> tuple[str, Graph]:
    color = c.cells[v].color
    if color == 0:
        sub = barycentric_subdivision(delta)
        return "barycentric subdivision of Δ", Graph(list(range(sub.n_vertices)), sub.edges)
    if color == 1:
        s = delta.degree(c.covers(v))
        return f"K_(2,{s})", complete_bipartite(2, s)
    return f"C_{2 * k}", cycle_graph(2 * k)


def verify_theorem_local(c: ComplexOfGroups, delta: IncidenceGraph, k: int | None = None,
                         keep_links: bool = False) -> LinkReport:
    """Compare every vertex link with Δ', K_(2,s) or the 2k-cycle."""
    k = k or c.k
    entries = []
    for v in c.vertices():
        color = c.cells[v].color
        name, model = expected_link(c, v, delta, k)
        try:
            link = local_development_link(c, v)
        except InconsistentMonomorphisms as exc:
            entries.append(LinkEntry(v, color, name, False, 0, 0, reason=str(exc),
                                     open_end=bool(c.cells[v].meta.get("open_end"))))
            continue
        if not link.is_simple():
            ok, reason = False, "link has repeated edges"
        else:
            res = graph_isomorphic(link, model)
            ok, reason = res.isomorphic, res.reason
        entries.append(LinkEntry(v, color, name, ok, link.n_vertices, link.n_edges, reason,
                                 bool(c.cells[v].meta.get("open_end")),
                                 link if keep_links else None))
    return LinkReport(entries)


# -- monomorphism and reflection checks -------------------------------------

@dataclass
class Failure:
    cell: str
    check: str
    detail: str

    def to_json(self) -> dict:
        return {"cell": self.cell, "check": self.check, "detail": self.detail}


def _sample(G: AbstractGroup, cap: int) -> list:
    return G.elements() if G.order <= cap else G.generators()


def check_monomorphisms(c: ComplexOfGroups, cap: int = EXHAUSTIVE_CAP) -> list[Failure]:
    """Each map is an injective homomorphism and the maps commute along every
    triangle -> edge -> vertex chain.  Exhaustive up to ``cap`` elements."""
    out = []
    for (s, t), f in c.monos.items():
        S, T = f.source, f.target
        where = f"{s}->{t}"
        if f(S.identity) != T.identity:
            out.append(Failure(s, "homomorphism", f"{where} does not preserve the identity"))
            continue
        xs = _sample(S, cap)
        images = [f(x) for x in xs]
        if not all(T.contains(y) for y in images):
            out.append(Failure(s, "homomorphism", f"{where} leaves the target group"))
            continue
        gens = S.generators()
        if any(f(S.mul(g, x)) != T.mul(f(g), y) for g in gens for x, y in zip(xs, images)):
            out.append(Failure(s, "homomorphism", f"{where} is not multiplicative"))
        if S.order <= cap and len(set(images)) != S.order:
            out.append(Failure(s, "injective", f"{where} is not injective"))
        elif S.order > cap and len(set(images)) != len(xs):
            out.append(Failure(s, "injective", f"{where} collapses generators"))
    for t in c.cells_of_dim(2):
        G_t = c.groups[t]
        xs = _sample(G_t, cap)
        for e in c.faces(t):
            if c.cells[e].dim != 1:
                continue
            for v in c.cells[e].vertices:
                direct, via_e, e_to_v = c.monos[(t, v)], c.monos[(t, e)], c.monos[(e, v)]
                if any(direct(x) != e_to_v(via_e(x)) for x in xs):
                    out.append(Failure(t, "coherence",
                                       f"{t}->{v} differs from {t}->{e}->{v}"))
    return out


def check_reflections(c: ComplexOfGroups) -> tuple[list[Failure], dict]:
    """Marks are central Z2 direct factors; each dihedral factor is generated
    by the images of the adjacent edge reflections."""
    fails = []
    info = {}
    for v, mark in c.reflection_marks.items():
        G = c.groups[v]
        if not (isinstance(G, DirectProduct) and G.right.order == 2 and mark == G.inject_right(1)):
            fails.append(Failure(v, "reflection", "mark is not the Z2 direct factor"))
        elif any(G.mul(mark, g) != G.mul(g, mark) for g in G.generators()):
            fails.append(Failure(v, "reflection", "mark is not central"))
    for v in c.vertices(2):
        G = c.groups[v]
        if not (isinstance(G, DirectProduct) and isinstance(G.right, Dihedral)):
            continue
        D = G.right
        images = []
        for e in c.incident(v, 1):
            spec = c.cells[e]
            if spec.factor != "Z2":
                continue
            src = c.groups[e]
            refl = src.inject_right(1)
            other = next(u for u in spec.vertices if u != v)
            if c.reflection_marks.get(other) != c.monos[(e, other)](refl):
                fails.append(Failure(e, "reflection", f"edge reflection does not map to the mark of {other}"))
            img = c.monos[(e, v)](refl)
            if img[0] != G.left.identity:
                fails.append(Failure(e, "reflection", f"reflection image leaves the D factor of {v}"))
            images.append(img[1])
        span = generated_subgroup(D, images)
        coincide = len(images) == 2 and images[0] == images[1]
        info[v] = {"dihedral_order": D.order, "reflection_images": [list(x) for x in images],
                   "coincide": coincide}
        if len(span) != D.order:
            fails.append(Failure(v, "reflection",
                                 f"adjacent reflections generate {len(span)} of D{D.order}"))
    return fails, info


@dataclass
class ComplexVerification:
    complex: ComplexOfGroups
    links: LinkReport
    mono_failures: list[Failure]
    reflection_failures: list[Failure]
    reflection_info: dict

    @property
    def passed(self) -> bool:
        return self.links.passed and not self.mono_failures and not self.reflection_failures

    def failing_cells(self) -> list[str]:
        cells = [e.vertex for e in self.links.failures()]
        cells += [f.cell for f in self.mono_failures + self.reflection_failures]
        return sorted(set(cells))

    def to_json(self, with_links: bool = False) -> dict:
        return {
            "passed": self.passed,
            "kind": self.complex.kind,
            "links": self.links.to_json(with_links),
            "monomorphism_failures": [f.to_json() for f in self.mono_failures],
            "reflection_failures": [f.to_json() for f in self.reflection_failures],
            "reflections": self.reflection_info,
            "failing_cells": self.failing_cells(),
            "unverified": ["reflections along edges of X over 0-0 edges of Y_∞",
                           "local reflexivity and trivial holonomy of X itself"],
        }


def verify_complex(c: ComplexOfGroups, delta: IncidenceGraph | None = None,
                   keep_links: bool = False) -> ComplexVerification:
    delta = delta or c.levi.ray.graph
    fails, info = check_reflections(c)
    return ComplexVerification(c, verify_theorem_local(c, delta, c.k, keep_links),
                               check_monomorphisms(c), fails, info)
