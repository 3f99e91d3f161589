from fractions import Fraction
from itertools import permutations
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dimalcev.monomials import (
    LEAF,
    SINGLE,
    Polynomial,
    apply_permutation,
    binary_types,
    catalan,
    compose,
    degree,
    enumerate_multilinear_basis,
    fill,
    inverse,
    leaves,
    permutation_words,
    product,
    render,
    type_key,
    var,
)


def _catalan_closed(n):
    return comb(2 * n - 2, n - 1) // n


@pytest.mark.parametrize("n", range(1, 9))
def test_catalan_matches_closed_form(n):
    assert catalan(n) == _catalan_closed(n)
    assert len(binary_types(n)) == catalan(n)


def test_type_order_degree4():
    got = [render(t) for t in binary_types(4)]
    assert got == ["((ab)c)d", "(a(bc))d", "(ab)(cd)", "a((bc)d)", "a(b(cd))"]


@pytest.mark.parametrize("n", range(1, 7))
def test_type_key_sorts_types(n):
    ts = binary_types(n)
    assert sorted(ts, key=type_key) == list(ts)
    assert len(set(ts)) == len(ts)


@pytest.mark.parametrize("n", range(1, 6))
def test_basis_is_type_major_lex(n):
    basis = enumerate_multilinear_basis(binary_types(n), n)
    assert len(basis) == factorial(n) * catalan(n)
    words = permutation_words(n)
    for k, t in enumerate(binary_types(n)):
        block = basis[k * len(words) : (k + 1) * len(words)]
        assert [leaves(m) for m in block] == list(words)
        assert all(fill(t, w) == m for w, m in zip(words, block))


perms4 = st.permutations([1, 2, 3, 4]).map(tuple)


@given(perms4, perms4)
def test_compose_inverse(s, t):
    c = compose(s, t)
    assert compose(c, inverse(c)) == (1, 2, 3, 4)
    assert inverse(c) == compose(inverse(t), inverse(s))


monomial4 = st.builds(fill, st.sampled_from(binary_types(4)), perms4)
coeff = st.integers(-5, 5) | st.fractions(max_denominator=6).map(Fraction)
poly4 = st.dictionaries(monomial4, coeff, max_size=6).map(Polynomial)


@given(poly4, perms4, perms4)
def test_action_is_left_action(p, s, t):
    lhs = apply_permutation(apply_permutation(p, t), s)
    assert lhs == apply_permutation(p, compose(s, t))


@given(poly4, poly4, perms4)
def test_action_is_linear(p, q, s):
    assert apply_permutation(p + q, s) == apply_permutation(p, s) + apply_permutation(q, s)
    assert apply_permutation(3 * p - q, s) == 3 * apply_permutation(p, s) - apply_permutation(q, s)


@given(poly4, poly4, poly4)
def test_polynomial_arithmetic(p, q, r):
    assert p + q == q + p
    assert (p + q) + r == p + (q + r)
    assert (p - p).is_zero()
    assert -(-p) == p
    assert 0 * p == Polynomial()
    assert 2 * (p + q) == 2 * p + 2 * q


def test_zero_coefficients_vanish():
    m = fill(binary_types(3)[0], (1, 2, 3))
    p = Polynomial({m: 1}) - Polynomial({m: 1})
    assert p.is_zero() and len(p) == 0


def test_product_is_multilinear():
    x = var(1) + 2 * var(2)
    y = var(3) - var(4)
    p = product(SINGLE, x, y)
    assert len(p) == 4
    assert p.coefficient((SINGLE, 2, 4)) == -2


def test_render_type_and_monomial():
    t = binary_types(3)[1]
    assert render(t) == "a(bc)"
    assert render(fill(t, (3, 1, 2))) == "c(ab)"
    assert degree(LEAF) == 1


def test_apply_permutation_rejects_non_permutation():
    p = Polynomial({fill(binary_types(3)[0], (1, 2, 3)): 1})
    with pytest.raises(ValueError):
        apply_permutation(p, (1, 1, 2))


@pytest.mark.parametrize("n", [3, 4])
def test_orbit_of_basis_monomial_is_basis(n):
    basis = set(enumerate_multilinear_basis(binary_types(n), n))
    m = fill(binary_types(n)[-1], tuple(range(1, n + 1)))
    orbit = {next(iter(apply_permutation(Polynomial({m: 1}), w).monomials())) for w in permutations(range(1, n + 1))}
    assert orbit <= basis and len(orbit) == factorial(n)
