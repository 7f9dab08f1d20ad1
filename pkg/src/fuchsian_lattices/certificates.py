"""JSON certificates and their re-verification from recorded data alone.

Re-verification never rebuilds a group: it re-runs BFS on recorded graphs,
re-checks order identities, re-tests recorded links against their models and
re-sums recorded covolume series.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .building import (IncidenceGraph, barycentric_subdivision, building_from_json,
                       building_to_json, verify_generalized_polygon)
from .complexes import ComplexVerification
from .covolume import CovolumeReport, covolume_series, nondiscreteness_certificate, tail
from .graph_of_groups import LeviData, RayOfGroups
from .isomorphism import Graph, complete_bipartite, cycle_graph, graph_isomorphic

SCHEMA = "fuchsian-lattices/1"


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _graph_json(graph: IncidenceGraph) -> dict:
    return {"types": list(graph.types), "edges": [list(e) for e in graph.edges]}


def _graph_from(data: dict) -> IncidenceGraph:
    return IncidenceGraph(list(data["types"]), [tuple(e) for e in data["edges"]])


def building_certificate(graph, gens) -> dict:
    return {"kind": "building", "schema": SCHEMA, "building": building_to_json(graph, gens),
            "verdict": True}


def polygon_certificate(graph: IncidenceGraph, require_thick: bool = False) -> dict:
    cert = verify_generalized_polygon(graph)
    verdict = cert.valid and (cert.thick or not require_thick)
    return {"kind": "polygon", "schema": SCHEMA, "graph": _graph_json(graph),
            "certificate": cert.to_json(), "require_thick": require_thick, "verdict": verdict}


def quotient_certificate(ray: RayOfGroups) -> dict:
    return {"kind": "quotient", "schema": SCHEMA, "ray": ray.to_json(),
            "verdict": _ray_ok(ray.to_json())}


def lemma_certificate(d: LeviData) -> dict:
    body = d.to_json()
    return {"kind": "lemma", "schema": SCHEMA, "levi": body,
            "verdict": d.ok and _levi_ok(body)}


def complex_certificate(v: ComplexVerification, extra: dict | None = None,
                        dump: bool = True) -> dict:
    c = v.complex
    out = {"kind": "complex", "schema": SCHEMA, "k": c.k, "m": c.levi.m,
           "delta": _graph_json(c.levi.ray.graph),
           "report": v.to_json(with_links=True), "verdict": v.passed}
    if dump:
        out["complex"] = c.to_json()
    if extra:
        out.update(extra)
    return out


def covolume_certificate(report: CovolumeReport, levi_orders: dict | None = None,
                         extra: dict | None = None) -> dict:
    out = {"kind": "covolume", "schema": SCHEMA, "report": report.to_json(),
           "verdict": report.ok}
    if levi_orders is not None:
        out["levi_orders"] = levi_orders
    if extra:
        out.update(extra)
        out["verdict"] = out["verdict"] and all(
            v for k, v in extra.items() if k.endswith("_matches"))
    return out


def _ray_ok(ray: dict) -> bool:
    vg, eg = ray["vertex_group_orders"], ray["edge_group_orders"]
    vo, eo = ray["vertex_orbit_sizes"], ray["edge_orbit_sizes"]
    P = vg[0]
    return (len(eg) == ray["quotient_edges"] == len(vg) - 1
            and all(a * b == P for a, b in zip(vg, vo))
            and all(a * b == P for a, b in zip(eg, eo))
            and sum(vo) == ray["n_vertices"] and sum(eo) == ray["n_edges"]
            and all(P % x == 0 for x in vg + eg))


def _is_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _levi_ok(levi: dict) -> bool:
    o = levi["orders"]
    chain = [o["K_P"]] + o["H_chain"] + [o["B"]]
    idx = levi["index_identity"]
    return (_is_power(o["U_P"], levi["p"])
            and o["U_P"] * o["L_P"] == o["P"] and o["U_P"] * o["K_P"] == o["B"]
            and all(b % a == 0 and b > a for a, b in zip(chain, chain[1:]))
            and idx["[L_P:K_P]"] == o["L_P"] // o["K_P"]
            and idx["[P:B]"] == o["P"] // o["B"]
            and idx["[L_P:K_P]"] == idx["[P:B]"]
            and _ray_ok(levi["ray"])
            and all(w["holds"] for w in levi["semidirect"].values()))


def _model(entry: dict, delta: IncidenceGraph, k: int) -> Graph:
    if entry["color"] == 0:
        sub = barycentric_subdivision(delta)
        return Graph(list(range(sub.n_vertices)), sub.edges)
    if entry["color"] == 1:
        s = int(entry["expected"].split(",")[1].rstrip(")"))
        return complete_bipartite(2, s)
    return cycle_graph(2 * k)


def reverify(cert: dict) -> tuple[bool, list[str]]:
    """Recompute a certificate's verdict from its own contents."""
    kind = cert.get("kind")
    problems: list[str] = []
    if kind == "building":
        try:
            building_from_json(cert["building"])
        except ValueError as exc:
            problems.append(str(exc))
    elif kind == "polygon":
        recomputed = verify_generalized_polygon(_graph_from(cert["graph"])).to_json()
        if recomputed != cert["certificate"]:
            problems.append("polygon certificate does not match recomputation")
        verdict = recomputed["valid"] and (recomputed["thick"] or not cert["require_thick"])
        if not verdict:
            problems.append("graph is not a (thick) generalised polygon")
    elif kind == "quotient":
        if not _ray_ok(cert["ray"]):
            problems.append("ray orders violate orbit-stabiliser accounting")
    elif kind == "lemma":
        if not _levi_ok(cert["levi"]):
            problems.append("Levi data violates an order identity")
    elif kind == "complex":
        delta = _graph_from(cert["delta"])
        rep = cert["report"]
        for e in rep["links"]["entries"]:
            link = e.get("link")
            if link is None:
                problems.append(f"{e['vertex']}: link not recorded")
                continue
            g = Graph(list(range(link["n_vertices"])), [tuple(x) for x in link["edges"]])
            ok = g.is_simple() and graph_isomorphic(g, _model(e, delta, cert["k"])).isomorphic
            if not ok:
                problems.append(f"{e['vertex']}: link is not {e['expected']}")
        if rep["monomorphism_failures"] or rep["reflection_failures"]:
            problems.append("recorded monomorphism or reflection failures")
    elif kind == "covolume":
        rep = cert["report"]
        inputs = rep["closed_form_inputs"]
        u, l = inputs["U_P"], inputs["L_P"]
        sums = covolume_series(rep["summand_orders"])
        if [str(x) for x in sums] != rep["partial_sums"]:
            problems.append("partial sums do not match the recorded orders")
        if rep["summand_orders"] != [u ** n * l for n in range(1, len(sums) + 1)]:
            problems.append("summands are not |U_P|^n |L_P|")
        limit = Fraction(1, l * (u - 1))
        if str(limit) != rep["limit"]:
            problems.append("limit is not 1/(|L_P|(|U_P|-1))")
        if not all(a < b < limit for a, b in zip(sums, sums[1:])):
            problems.append("partial sums are not strictly increasing below the limit")
        nd = rep.get("nondiscreteness")
        if nd is not None:
            eps = Fraction(nd["epsilon"])
            n = nondiscreteness_certificate((u, l), eps)
            if n != nd["N"] or not 0 < tail((u, l), n) < eps:
                problems.append("nondiscreteness N does not reproduce")
    elif kind == "pipeline":
        for stage in cert["stages"]:
            ok, probs = reverify(stage)
            problems += [f"{stage['kind']}: {p}" for p in probs]
            if ok != stage["verdict"]:
                problems.append(f"{stage['kind']}: verdict does not reproduce")
        return not problems and cert["verdict"], problems
    else:
        return False, [f"unknown certificate kind {kind!r}"]
    return not problems, problems
