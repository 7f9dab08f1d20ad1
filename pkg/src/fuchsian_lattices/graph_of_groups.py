"""The parabolic P acting on Δ: quotient ray, Levi decomposition, index identity."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import compose
from .building import IncidenceGraph, verify_generalized_polygon
from .groups import (FiniteGroup, SemidirectWitness, Subgroup, cosets, is_semidirect, orbits,
                     p_core, stabilizer)


class LemmaViolation(RuntimeError):
    """A hypothesis or conclusion about P\\Δ failed; ``report`` holds the evidence."""

    def __init__(self, clause: str, report: dict):
        super().__init__(f"parabolic structure violated: {clause}")
        self.clause = clause
        self.report = report


@dataclass
class RayOfGroups:
    """P\\Δ as a path with m edges, lifted to a geodesic x_0 = v, ..., x_m.

    ``vertex_groups[j]`` is the stabiliser in P of x_j and ``edge_groups[j]``
    the stabiliser of the edge x_j x_{j+1}.  ``orbit_reps`` are the least
    vertices at each distance and ``conjugators[j]`` maps orbit_reps[j] to x_j.
    """

    graph: IncidenceGraph
    group: FiniteGroup
    base_vertex: int
    P: Subgroup
    path: list[int]
    vertex_groups: list[Subgroup]
    edge_groups: list[Subgroup]
    orbit_reps: list[int]
    conjugators: list
    vertex_orbit_sizes: list[int]
    edge_orbit_sizes: list[int]

    @property
    def m(self) -> int:
        return len(self.edge_groups)

    def to_json(self) -> dict:
        return {
            "base_vertex": self.base_vertex,
            "path": self.path,
            "orbit_reps": self.orbit_reps,
            "conjugators": [list(c) for c in self.conjugators],
            "vertex_group_orders": [g.order for g in self.vertex_groups],
            "edge_group_orders": [g.order for g in self.edge_groups],
            "vertex_orbit_sizes": self.vertex_orbit_sizes,
            "edge_orbit_sizes": self.edge_orbit_sizes,
            "quotient_edges": self.m,
            "group_order": self.group.order,
            "n_vertices": self.graph.n_vertices,
            "n_edges": self.graph.n_edges,
        }


def quotient_graph_of_groups(delta: IncidenceGraph, G: FiniteGroup, v: int = 0) -> RayOfGroups:
    P = stabilizer(G, v)
    dist = delta.distances_from(v)
    m = max(dist)
    v_orbits = orbits(P, range(delta.n_vertices))
    e_orbits = orbits(P, [frozenset(e) for e in delta.edges])
    report = {
        "vertex_orbits": [sorted(o) for o in v_orbits],
        "distances": dist,
        "edge_orbit_sizes": [len(o) for o in e_orbits],
    }
    # one P-orbit per distance class, and one per class of edges x_j x_{j+1}
    by_dist = [sorted(x for x in range(delta.n_vertices) if dist[x] == j) for j in range(m + 1)]
    if sorted(map(sorted, v_orbits)) != sorted(by_dist):
        raise LemmaViolation("P-orbits on vertices are not the distance classes from v", report)
    if len(e_orbits) != m:
        raise LemmaViolation(f"P has {len(e_orbits)} edge orbits, expected {m}", report)
    for o in e_orbits:
        levels = {tuple(sorted(dist[x] for x in e)) for e in o}
        if len(levels) != 1 or len(next(iter(levels))) != 2:
            raise LemmaViolation("an edge orbit mixes distance levels", report)

    adj = delta.adjacency
    path = [v]
    for j in range(1, m + 1):
        path.append(min(w for w in adj[path[-1]] if dist[w] == j))
    reps = [cls[0] for cls in by_dist]
    conjugators = []
    for rep, x in zip(reps, path):
        conjugators.append(next(g for g in P.sorted_elements() if g[rep] == x))

    vgroups = []
    for rep, c, x in zip(reps, conjugators, path):
        # c Stab(rep) c^-1 = Stab(x)
        ci = c.inverse()
        base = stabilizer(P, rep)
        conj = Subgroup(P, (compose(compose(c, h), ci) for h in base.elements))
        if any(g[x] != x for g in conj.elements):  # pragma: no cover - conjugation identity
            raise LemmaViolation("conjugated stabiliser does not fix the path vertex", report)
        vgroups.append(conj)
    egroups = [Subgroup(P, a.elements & b.elements) for a, b in zip(vgroups, vgroups[1:])]
    for j, eg in enumerate(egroups):
        direct = stabilizer(P, (path[j], path[j + 1]))
        if direct.elements != eg.elements:
            raise LemmaViolation(f"edge group {j} is not the intersection of its vertex groups",
                                 report)
    return RayOfGroups(
        graph=delta, group=G, base_vertex=v, P=P, path=path,
        vertex_groups=vgroups, edge_groups=egroups, orbit_reps=reps,
        conjugators=conjugators,
        vertex_orbit_sizes=[len(c) for c in by_dist],
        edge_orbit_sizes=[len(o) for o in sorted(e_orbits, key=lambda o: min(
            min(dist[x] for x in e) for e in o))],
    )


@dataclass
class LeviData:
    """P, B, U_P, L_P, K_P and the chain between them, with every identity checked."""

    ray: RayOfGroups
    p: int
    P: Subgroup
    B: Subgroup
    U: Subgroup
    L: Subgroup
    K: Subgroup
    H_chain: list[Subgroup]
    levi_witness: SemidirectWitness
    borel_witness: SemidirectWitness
    index_L_K: int = 0
    index_P_B: int = 0
    checks: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return self.ray.m

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def orders(self) -> dict:
        return {"P": self.P.order, "B": self.B.order, "U_P": self.U.order,
                "L_P": self.L.order, "K_P": self.K.order,
                "H_chain": [h.order for h in self.H_chain]}

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "orders": self.orders(),
            "ray": self.ray.to_json(),
            "semidirect": {"P = U_P ⋊ L_P": self.levi_witness.to_json(),
                           "B = U_P ⋊ K_P": self.borel_witness.to_json()},
            "index_identity": {"[L_P:K_P]": self.index_L_K, "[P:B]": self.index_P_B,
                               "holds": self.index_L_K == self.index_P_B},
            "checks": dict(self.checks),
            "ok": self.ok,
        }


def levi_data(ray: RayOfGroups, p: int, strict: bool = True) -> LeviData:
    """U_P = O_p(P), L_P and K_P from the far end of the ray, H_i in between.

    With ``strict`` any failed clause raises :class:`LemmaViolation`.
    """
    m = ray.m
    P = ray.P
    B = ray.edge_groups[0]
    U = p_core(P, p)
    L = ray.vertex_groups[m]
    K = ray.edge_groups[m - 1]
    # edge groups along the ray shrink: B > H_{m-2} > ... > H_1 > K_P
    H_chain = list(reversed(ray.edge_groups[1:m - 1]))
    levi = is_semidirect(P, U, L)
    borel = is_semidirect(B, U, K)
    chain = [K] + H_chain + [B]
    checks = {
        "U_P is a p-group": _is_power(U.order, p),
        "P = U_P ⋊ L_P": bool(levi),
        "B = U_P ⋊ K_P": bool(borel),
        "B = U_P·K_P as sets": _product_set(U, K) == B.elements,
        "K_P < H_1 < ... < B": all(a.elements < b.elements for a, b in zip(chain, chain[1:])),
        "B ≤ P": B.elements <= P.elements,
        "[P:L_P] = #vertices opposite v": P.order // L.order == ray.vertex_orbit_sizes[m],
    }
    d = LeviData(ray=ray, p=p, P=P, B=B, U=U, L=L, K=K, H_chain=H_chain,
                 levi_witness=levi, borel_witness=borel, checks=checks)
    ok_idx, (lk, pb) = verify_index_identity(d)
    d.index_L_K, d.index_P_B = lk, pb
    checks["[L_P:K_P] = [P:B]"] = ok_idx
    if strict and not d.ok:
        failed = [k for k, v in checks.items() if not v]
        raise LemmaViolation(", ".join(failed), d.to_json())
    return d


def verify_index_identity(d: LeviData) -> tuple[bool, tuple[int, int]]:
    lk = len(cosets(d.L, d.K))
    pb = len(cosets(d.P, d.B))
    return lk == pb, (lk, pb)


def _is_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _product_set(A: FiniteGroup, C: FiniteGroup) -> frozenset:
    return frozenset(compose(a, c) for a in A.elements for c in C.elements)


def lemma_data(delta: IncidenceGraph, G: FiniteGroup, v: int = 0, p: int | None = None) -> LeviData:
    """Ray plus Levi data in one call; p defaults to the building's characteristic."""
    p = p if p is not None else delta.char_p
    if p is None:
        raise ValueError("characteristic p is unknown; the building must carry char_p")
    cert = verify_generalized_polygon(delta)
    if not (cert.valid and cert.thick):
        raise LemmaViolation("Δ is not a thick generalised polygon", cert.to_json())
    return levi_data(quotient_graph_of_groups(delta, G, v), p)

