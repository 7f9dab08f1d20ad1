import pytest

from fuchsian_lattices.algebra import compose
from fuchsian_lattices.groups import Subgroup
from fuchsian_lattices.products import (AmbientSubgroup, Cyclic, Dihedral, DirectProduct,
                                        SemidirectPower, generated_subgroup)


@pytest.mark.parametrize("k", [2, 4, 6, 8, 12])
def test_dihedral(k):
    D = Dihedral(k)
    assert D.order == len(D.elements()) == k
    assert D.check_axioms()
    assert len(generated_subgroup(D, [D.r1, D.r2])) == k
    assert all(D.element_order(r) == 2 for r in D.reflections())
    assert D.element_order(D.mul(D.r2, D.r1)) == k // 2
    assert (D.r1 == D.r2) == (k == 2)


@pytest.mark.parametrize("k", [0, 3, 7])
def test_dihedral_rejects_bad_order(k):
    with pytest.raises(ValueError):
        Dihedral(k)


def test_cyclic_and_direct_product():
    C = Cyclic(6)
    assert C.check_axioms() and C.is_abelian()
    X = DirectProduct(Cyclic(2), Dihedral(6))
    assert X.order == 12 and X.check_axioms()
    for a in X.elements():
        assert X.inject_left(X.project_left(a))[0] == a[0]
        for b in X.elements():
            assert X.project_right(X.mul(a, b)) == X.right.mul(a[1], b[1])


def _ambient(d):
    ig = d.P.indexed()
    return ig, AmbientSubgroup.of(ig, d.U, "U"), AmbientSubgroup.of(ig, d.B, "B")


def test_semidirect_power_n1_is_the_borel(levi_a2q2):
    """(u, q) -> u q is an isomorphism of U ⋊ K onto B, read in the ambient group."""
    d = levi_a2q2
    ig, U, _ = _ambient(d)
    S = SemidirectPower(U, AmbientSubgroup.of(ig, d.K, "K"), 1)
    els = ig.elements
    phi = {x: compose(els[x[0]], els[x[1]]) for x in S.elements()}
    assert set(phi.values()) == set(d.B.elements)
    assert len(phi) == S.order == d.B.order
    gens = S.generators()
    for a in gens:
        for b in S.elements():
            assert phi[S.mul(a, b)] == compose(phi[a], phi[b])


@pytest.mark.parametrize("n", [0, 1, 2])
def test_semidirect_power_axioms(levi_a2q2, n):
    d = levi_a2q2
    ig, U, _ = _ambient(d)
    K = AmbientSubgroup.of(ig, d.K, "K")
    S = SemidirectPower(U, K, n)
    assert S.order == d.U.order ** n * d.K.order == len(S.elements())
    assert S.check_axioms()
    for x in S.elements():
        assert S.mul(x, S.inv(x)) == S.identity
    inj = S.injection(0) if n else None
    if inj:
        for u in U.members:
            for v in U.members:
                assert S.mul(inj(u), inj(v)) == inj(ig.mul(u, v))


def test_semidirect_power_requires_normalising(levi_a2q2):
    d = levi_a2q2
    ig = d.P.indexed()
    t = next(g for g in d.P.sorted_elements() if g.order() == 2 and g not in d.U.elements
             and any(compose(compose(h, g), h.inverse()) != g for h in d.P.elements))
    T = AmbientSubgroup.of(ig, Subgroup(d.P, [d.P.identity, t]), "T")
    P = AmbientSubgroup.of(ig, d.P, "P")
    with pytest.raises(ValueError):
        SemidirectPower(T, P, 1)
