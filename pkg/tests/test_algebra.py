import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fuchsian_lattices.algebra import (FieldElem, FieldError, Matrix, Permutation, compose,
                                       field_arith, format_rational, is_prime, mat_ops,
                                       parse_rational, perm_ops, rational_sum, rref)

PRIMES = [2, 3, 5, 7, 11, 13]


@given(st.sampled_from(PRIMES), st.integers(-100, 100), st.integers(-100, 100))
def test_field_ops_agree_with_integer_arithmetic(p, a, b):
    x, y = FieldElem(a, p), FieldElem(b, p)
    assert (x + y).value == (a + b) % p
    assert (x - y).value == (a - b) % p
    assert (x * y).value == (a * b) % p
    assert (-x).value == (-a) % p
    if b % p:
        assert (x / y) * y == x
        assert field_arith(y, None, "inv") * y == FieldElem(1, p)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        FieldElem(0, 5).inverse()


def test_mixed_moduli_are_rejected():
    with pytest.raises(FieldError):
        FieldElem(1, 3) + FieldElem(1, 5)


def test_composite_modulus_is_rejected():
    with pytest.raises(FieldError):
        FieldElem(1, 4)


def test_is_prime_against_trial_division():
    for n in range(-3, 300):
        expected = n > 1 and all(n % d for d in range(2, n))
        assert is_prime(n) == expected, n


def _leibniz(rows, p):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total % p


square3 = st.lists(st.lists(st.integers(0, 12), min_size=3, max_size=3), min_size=3, max_size=3)


@given(st.sampled_from([2, 3, 5, 7]), square3)
def test_det_matches_leibniz_formula(p, rows):
    assert Matrix(rows, p).det() == _leibniz([[x % p for x in r] for r in rows], p)


@given(st.sampled_from([2, 3, 5]), square3)
def test_inverse_is_two_sided(p, rows):
    M = Matrix(rows, p)
    I = Matrix.identity(3, p)
    if M.det() == 0:
        with pytest.raises(ZeroDivisionError):
            M.inverse()
    else:
        assert M @ M.inverse() == I
        assert mat_ops(M, None, "inv") @ M == I


@given(st.sampled_from([2, 3]), square3, square3)
def test_det_is_multiplicative(p, a, b):
    A, B = Matrix(a, p), Matrix(b, p)
    assert (A @ B).det() == A.det() * B.det() % p
    assert A.transpose().det() == A.det()


def _span(rows, p, n=4):
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        out.add(tuple(sum(c * r[i] for c, r in zip(coeffs, rows)) % p for i in range(n)))
    return out


@given(st.sampled_from([2, 3]), st.lists(st.lists(st.integers(0, 5), min_size=4, max_size=4),
                                         min_size=1, max_size=4))
def test_rref_preserves_row_space(p, rows):
    red = rref(rows, p)
    assert _span([list(r) for r in red], p) == _span(rows, p)
    assert rref(red, p) == red
    pivots = [next(i for i, x in enumerate(r) if x) for r in red]
    assert pivots == sorted(set(pivots))
    assert all(red[k][i] == 1 for k, i in enumerate(pivots))


def test_matrix_apply_and_mismatch():
    M = Matrix([[1, 1], [0, 1]], 3)
    assert M.apply((1, 2)) == (0, 2)
    with pytest.raises(FieldError):
        M @ Matrix([[1, 0], [0, 1]], 5)
    with pytest.raises(ValueError):
        Matrix([[1, 0]], 3)


perms = st.integers(1, 9).flatmap(lambda n: st.permutations(list(range(n))))


@given(perms)
def test_permutation_order_by_repeated_composition(images):
    g = Permutation(images)
    x, n = g, 1
    while not x.is_identity():
        x = compose(x, g)
        n += 1
    assert g.order() == n == perm_ops(g, None, "order")
    assert compose(g, g.inverse()).is_identity()


@given(perms, st.randoms())
def test_compose_applies_right_factor_first(images, rnd):
    g = Permutation(images)
    shuffled = list(images)
    rnd.shuffle(shuffled)
    h = Permutation(shuffled)
    gh = compose(g, h)
    assert all(gh[x] == g[h[x]] for x in range(len(g)))
    assert g * h == gh


def test_permutation_validation():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])
    with pytest.raises(ValueError):
        compose(Permutation([1, 0]), Permutation([0, 1, 2]))
    assert Permutation.from_cycles(5, (0, 1, 2), (3, 4)).order() == 6
    assert Permutation.from_cycles(4, (0, 3))(3) == 0


@given(st.lists(st.fractions(), max_size=20))
def test_rational_helpers(xs):
    assert rational_sum(xs) == sum(xs, Fraction(0))
    for x in xs:
        assert parse_rational(format_rational(x)) == x
    assert format_rational(Fraction(4, 2)) == "2"
