import pytest

from fuchsian_lattices.algebra import Permutation, compose
from fuchsian_lattices.groups import (CAP_ENV, GroupTooLarge, Subgroup, cosets, generate_group,
                                      index, is_normal, is_semidirect, orbit, orbits, p_core,
                                      stabilizer, sylow_subgroup)
from worlds import chevalley_order, levi


def _s(n, *cycles):
    return Permutation.from_cycles(n, *cycles)


def test_symmetric_group_orders():
    assert generate_group([_s(4, (0, 1)), _s(4, (0, 1, 2, 3))]).order == 24
    assert generate_group([_s(5, (0, 1, 2, 3, 4))]).order == 5
    assert generate_group([], point_count=3).order == 1


def test_chevalley_orders(any_world):
    w = any_world
    assert w.G.order == chevalley_order(w.family, w.q)


def test_orbit_stabiliser_on_vertices_and_edges(any_world):
    w = any_world
    G = w.G
    step = 1 if w.q == 2 else 7
    for x in list(range(0, w.graph.n_vertices, step)) + w.graph.edges[::step * 3]:
        assert len(orbit(G, x)) * stabilizer(G, x).order == G.order


def test_orbit_stabiliser_inside_parabolic(any_levi):
    d = any_levi
    P = d.P
    g = d.ray.graph
    for x in list(range(g.n_vertices)) + g.edges:
        assert len(orbit(P, x)) * stabilizer(P, x).order == P.order
    assert sum(map(len, orbits(P, range(g.n_vertices)))) == g.n_vertices


def test_generators_are_type_preserving(any_world):
    assert all(any_world.graph.is_automorphism(g) for g in any_world.gens)


def _normal_closure(P, x):
    cls = {compose(compose(g, x), g.inverse()) for g in P.elements}
    return generate_group(sorted(cls), P.point_count)


def _is_p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def _conjugacy_classes(G):
    left = set(G.elements)
    while left:
        x = min(left)
        cls = {compose(compose(g, x), g.inverse()) for g in G.elements}
        left -= cls
        yield x, cls


@pytest.mark.parametrize("fq", [("A2", 2), ("C2", 2), ("A2", 3)], ids=str)
def test_p_core_matches_normal_closure_oracle(fq):
    d = levi(*fq)
    P, p = d.P, d.p
    expected = set()
    for x, cls in _conjugacy_classes(P):
        if _is_p_power(_normal_closure(P, x).order, p):
            expected |= cls
    assert expected == set(d.U.elements)


def test_p_core_is_normal_p_subgroup(any_levi):
    d = any_levi
    assert is_normal(d.P, d.U)
    assert _is_p_power(d.U.order, d.p)
    assert d.U.check_closed()


def test_sylow_order():
    S4 = generate_group([_s(4, (0, 1)), _s(4, (0, 1, 2, 3))])
    assert sylow_subgroup(S4, 2).order == 8
    assert sylow_subgroup(S4, 3).order == 3
    assert p_core(S4, 2).order == 4
    assert p_core(S4, 3).order == 1
    assert p_core(S4, 5).order == 1
    with pytest.raises(ValueError):
        p_core(S4, 4)


def test_semidirect_witness_clauses():
    S3 = generate_group([_s(3, (0, 1)), _s(3, (0, 1, 2))])
    A3 = Subgroup(S3, [g for g in S3.elements if g.order() != 2])
    C2 = Subgroup(S3, [S3.identity, _s(3, (0, 1))])
    other = Subgroup(S3, [S3.identity, _s(3, (1, 2))])
    assert is_semidirect(S3, A3, C2)
    w = is_semidirect(S3, A3, A3)
    assert not w and w.failed_clause is not None
    w = is_semidirect(S3, C2, other)
    assert not w.normal
    assert w.to_json()["holds"] is False


def test_cosets_and_lagrange(levi_a2q2):
    d = levi_a2q2
    cs = cosets(d.P, d.B)
    assert len(cs) == index(d.P, d.B) == d.P.order // d.B.order
    assert set().union(*cs) == set(d.P.elements)
    with pytest.raises(ValueError):
        cosets(d.B, d.P)


def test_indexed_group_tables(levi_a2q2):
    P = levi_a2q2.P
    ig = P.indexed()
    els = ig.elements
    for a in range(len(els)):
        assert els[ig.inv[a]] == els[a].inverse()
        for b in range(0, len(els), 5):
            assert els[ig.mul(a, b)] == compose(els[a], els[b])


def test_enumeration_cap(monkeypatch, a2q2):
    with pytest.raises(GroupTooLarge):
        generate_group(a2q2.gens, a2q2.graph.n_vertices, cap=100)
    monkeypatch.setenv(CAP_ENV, "50")
    with pytest.raises(GroupTooLarge):
        generate_group(a2q2.gens, a2q2.graph.n_vertices)
