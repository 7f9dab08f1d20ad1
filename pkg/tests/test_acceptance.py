"""One test per acceptance criterion; each logs a PASS/FAIL line to the terminal summary."""

import json
import time
from fractions import Fraction
from math import lcm

import pytest

from fuchsian_lattices.building import (BuildingError, build_projective_plane,
                                        build_symplectic_quadrangle, building_from_json,
                                        building_to_json, verify_generalized_polygon)
from fuchsian_lattices.complexes import (Mono, build_gy1, build_gyn, check_monomorphisms,
                                         check_reflections, glue_complexes, gy_blueprint,
                                         verify_complex)
from fuchsian_lattices.covolume import (covolume_series, nondiscreteness_certificate,
                                        nonuniform_covolume, tail, uniform_covolumes)
from fuchsian_lattices.graph_of_groups import lemma_data
from fuchsian_lattices.groups import generate_group, is_normal, orbit, stabilizer
from fuchsian_lattices.isomorphism import complete_bipartite, graph_isomorphic
from worlds import KS, MATRIX, levi, world


@pytest.fixture
def record(acceptance_log):
    def _record(n, ok, detail):
        acceptance_log[n] = (ok, detail)
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return _record


def test_criterion_1_building_axioms(record):
    got = {}
    start = time.perf_counter()
    for name, build in (("A2", build_projective_plane), ("C2", build_symplectic_quadrangle)):
        c = verify_generalized_polygon(build(2)[0])
        got[name] = (c.n_vertices, c.n_edges, c.diameter, c.girth)
    elapsed = time.perf_counter() - start
    ok = got == {"A2": (14, 21, 3, 6), "C2": (30, 45, 4, 8)} and elapsed < 1
    record(1, ok, f"{got} in {elapsed:.2f}s")


def test_criterion_2_lemma_q2(record):
    start = time.perf_counter()
    graph, gens = build_projective_plane(2)
    d = lemma_data(graph, generate_group(gens, graph.n_vertices), 0)
    elapsed = time.perf_counter() - start
    ray = d.ray
    vg = [g.order for g in ray.vertex_groups]
    eg = [g.order for g in ray.edge_groups]
    ok = (ray.m == 3 and vg == [24, 8, 4, 6] and eg == [8, 4, 2]
          and bool(d.levi_witness) and bool(d.borel_witness)
          and d.index_L_K == d.index_P_B == 3 and elapsed < 5)
    record(2, ok, f"edges={ray.m} V={vg} E={eg} [L:K]={d.index_L_K} [P:B]={d.index_P_B} "
                  f"in {elapsed:.2f}s")


def test_criterion_3_lemma_q3(record):
    start = time.perf_counter()
    graph, gens = build_projective_plane(3)
    d = lemma_data(graph, generate_group(gens, graph.n_vertices), 0)
    elapsed = time.perf_counter() - start
    o = d.orders()
    ok = ((o["P"], o["U_P"], o["L_P"]) == (432, 9, 48) and bool(d.levi_witness)
          and bool(d.borel_witness) and elapsed < 60)
    record(3, ok, f"|P|={o['P']} |U_P|={o['U_P']} |L_P|={o['L_P']} in {elapsed:.2f}s")


def test_criterion_4_links(record):
    start = time.perf_counter()
    d = levi("A2", 2)
    types, ok = [], True
    for n in (1, 2, 3):
        v = verify_complex(build_gyn(d, 8, n))
        ok &= v.passed
        by = v.links.by_vertex()
        ok &= all(by[x].n_vertices == 35 for x in v.complex.vertices(0))
        types.append(v.links.color_types())
    expected = {0: ["barycentric subdivision of Δ"], 1: ["K_(2,3)"], 2: ["C_16"]}
    elapsed = time.perf_counter() - start
    ok = ok and all(t == expected for t in types) and elapsed < 60
    record(4, ok, f"link types {types[0]} for n = 1, 2, 3 in {elapsed:.2f}s")


def test_criterion_5_gluing(record):
    start = time.perf_counter()
    d = levi("A2", 2)
    c = glue_complexes(d, 8, 3)
    v = verify_complex(c)
    orders = c.zero_vertex_orders()
    glued = sorted(x for x, i in v.reflection_info.items() if i["dihedral_order"] == 4)
    _, info4 = check_reflections(glue_complexes(d, 4, 2))
    elapsed = time.perf_counter() - start
    ok = (orders == [24, 96, 384] and v.passed and glued == ["e1.1", "e2.1"]
          and info4["e1.1"]["coincide"] and elapsed < 60)
    record(5, ok, f"0-vertex orders {orders}, D4 at {glued}, k=4 coincide="
                  f"{info4['e1.1']['coincide']} in {elapsed:.2f}s")


def test_criterion_6_covolumes(record):
    d2 = levi("A2", 2)
    sums = uniform_covolumes(d2, 3)
    limits = [nonuniform_covolume(levi(*fq)) for fq in (("A2", 2), ("C2", 2), ("A2", 3))]
    from_complex = all(
        covolume_series(glue_complexes(levi(*fq), 8, 10).zero_vertex_orders())
        == uniform_covolumes(levi(*fq), 10) for fq in MATRIX)
    ok = (sums == [Fraction(1, 24), Fraction(5, 96), Fraction(7, 128)]
          and limits == [Fraction(1, 18), Fraction(1, 42), Fraction(1, 384)] and from_complex)
    record(6, ok, f"partial sums {[str(x) for x in sums]}, limits {[str(x) for x in limits]}, "
                  f"complex series match for N <= 10: {from_complex}")


def test_criterion_7_nondiscreteness(record):
    start = time.perf_counter()
    ok = True
    Ns = []
    for d in range(1, 13):
        eps = Fraction(1, 10 ** d)
        for fq in MATRIX:
            lv = levi(*fq)
            N = nondiscreteness_certificate(lv, eps)
            ok &= 0 < tail(lv, N) < eps and len(set(uniform_covolumes(lv, N))) == N
        Ns.append(nondiscreteness_certificate(levi("A2", 2), eps))
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 1
    record(7, ok, f"A2 q=2 N for eps=10^-1..10^-12: {Ns} in {elapsed:.2f}s")


def test_criterion_8_negative_controls(record):
    d = levi("A2", 2)
    results = {}
    # 1. drop one Z2 factor
    v = verify_complex(gy_blueprint(d, 8, 1).drop_reflection("r1.1").materialize(),
                       keep_links=True)
    entry = v.links.by_vertex()["r1.1"]
    results["Z2"] = (not v.passed and not entry.isomorphic
                     and bool(graph_isomorphic(entry.link, complete_bipartite(1, 3))))
    # 2. conjugate one monomorphism
    c = build_gy1(d, 8)
    t = "c1|r1.1|e1.1"
    f = c.monos[(t, "c1")]
    G = c.groups["c1"]
    image = {f(x) for x in f.source.elements()}
    g = next(g for g in G.elements() if {G.mul(G.mul(g, y), G.inv(g)) for y in image} != image)
    c.monos[(t, "c1")] = Mono(f.source, f.target, lambda x: G.mul(G.mul(g, f(x)), G.inv(g)),
                                   "conjugated")
    fails = check_monomorphisms(c)
    results["mono"] = bool(fails) and {x.cell for x in fails} == {t}
    # 3. break bipartiteness
    w = world("A2", 2)
    data = json.loads(json.dumps(building_to_json(w.graph, w.gens)))
    data["edges"].append([0, 1])
    try:
        building_from_json(data)
        results["bipartite"] = False
    except BuildingError as exc:
        results["bipartite"] = exc.reason == "edge within one part" and exc.record == [0, 1]
    record(8, all(results.values()), f"failing cells identified: {results}")


def _orbit_stabiliser_violations(G, points):
    return sum(len(orbit(G, x)) * stabilizer(G, x).order != G.order for x in points)


def _log(n, p):
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def _integer_sum(orders):
    D = lcm(*orders)
    return sum(D // o for o in orders), D


def test_criterion_9_property_suites(record):
    violations = {"orbit-stabiliser": 0, "p_core": 0, "coherence": 0, "rational": 0}
    for family, q in MATRIX:
        d = levi(family, q)
        graph, G = d.ray.graph, world(family, q).G
        points = list(range(graph.n_vertices)) + graph.edges
        violations["orbit-stabiliser"] += _orbit_stabiliser_violations(G, points[::max(1, q * q)])
        for H in [d.P, d.B, d.L, d.K, *d.ray.vertex_groups]:
            violations["orbit-stabiliser"] += _orbit_stabiliser_violations(H, points)
        violations["p_core"] += not (is_normal(d.P, d.U) and d.p ** _log(d.U.order, d.p) == d.U.order)
        for k in KS:
            builds = [build_gy1(d, k)]
            if k % 4 == 0 and (family, q) != ("C2", 3):
                builds.append(glue_complexes(d, k, 2))
            for c in builds:
                violations["coherence"] += len(check_monomorphisms(c))
        orders = glue_complexes(d, 4, 10).zero_vertex_orders()
        for n, x in enumerate(covolume_series(orders), start=1):
            num, den = _integer_sum(orders[:n])
            violations["rational"] += x.numerator * den != num * x.denominator
    record(9, not any(violations.values()), f"violations {violations} over q in {{2,3}}, "
                                            f"m in {{3,4}}, k in {{4,8,12}}")
