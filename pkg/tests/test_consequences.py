from itertools import product as cartesian
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load_words
from dimalcev import reference_values as ref
from dimalcev.consequences import (
    alternative_dialgebra_identities,
    alternative_identities_in_degree,
    di_malcev,
    free_rac_monomials,
    free_rac_product,
    lift_algebra_identity,
    lift_dialgebra_identity,
    malcev_consequences,
    permutation_orbit,
    rac_basis,
    rac_consequences,
    rac_straighten,
    rac_straighten_polynomial,
    rac_types,
    right_anticommutativity,
    skew_symmetries,
)
from dimalcev.dialgebra import is_normal
from dimalcev.dsl import parse_polynomial
from dimalcev.linalg import RATIONAL, Field, span_rank_under_permutations
from dimalcev.linalg.echelon import RationalEchelon
from dimalcev.monomials import (
    SINGLE,
    Polynomial,
    basis_index,
    binary_types,
    enumerate_multilinear_basis,
    fill,
    render,
    sparse_vector,
)


def test_standard_identities_render():
    assert right_anticommutativity().render() == "a(bc) + a(cb)"
    written = parse_polynomial(
        "M(M(M(a,b),c),d) - M(M(M(a,d),b),c) - M(M(a,M(c,d)),b) - M(M(a,c),M(b,d)) - M(a,M(M(b,c),d))"
    )
    assert di_malcev() == written


def test_alternative_dialgebra_identities_are_normal():
    ids = alternative_dialgebra_identities()
    assert len(ids) == 3
    for p in ids:
        assert all(is_normal(m) for m in p.monomials())


@pytest.mark.parametrize("n", [3, 4, 5])
def test_alternative_identity_counts(n):
    assert len(alternative_identities_in_degree(n)) == ref.ALTERNATIVE_COUNT[n]


def test_lift_counts():
    p = right_anticommutativity()
    assert len(lift_algebra_identity(p)) == 5
    q = alternative_dialgebra_identities()[0]
    lifted = lift_dialgebra_identity(q)
    assert len(lifted) == 10
    assert all(r.degree == 4 for r in lifted)
    assert all(is_normal(m) for r in lifted for m in r.monomials())


@pytest.mark.parametrize("n", [5, 6])
def test_malcev_consequence_counts(n):
    assert len(malcev_consequences(n)) == ref.MALCEV_CONSEQUENCES[n]


@pytest.mark.parametrize("n, expected", [(3, 2), (4, 4), (5, 9), (6, 20)])
def test_rac_type_counts(n, expected):
    assert len(rac_types(n)) == expected


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_skew_symmetry_counts(n):
    assert len(skew_symmetries(n)) == ref.SKEW_SYMMETRIES[n]


def test_full_skew_symmetries_add_equal_shape_swaps():
    assert [len(skew_symmetries(n, full=True)) for n in (3, 4, 5, 6)] == [1, 3, 11, 31]


def test_degree4_basis_matches_published_list():
    assert [render(m) for m in rac_basis(4).monomials] == load_words("rac_degree4_basis.txt")


def _consequence_span(n):
    basis = enumerate_multilinear_basis(binary_types(n), n)
    idx = basis_index(basis)
    eng = RationalEchelon(len(basis))
    for p in rac_consequences(n):
        for q in permutation_orbit(p):
            eng.add_row(sparse_vector(q, idx))
    return eng, idx


@pytest.fixture(scope="module")
def span4():
    return _consequence_span(4)


def test_straightening_is_sign_consistent_in_degree4(span4):
    """Every monomial equals its straightened form modulo right anticommutativity."""
    eng, idx = span4
    published = set(load_words("rac_degree4_basis.txt"))
    for m in enumerate_multilinear_basis(binary_types(4), 4):
        s, b = rac_straighten(m)
        assert s in (1, -1)
        assert render(b) in published
        diff = Polynomial({m: 1}) - s * Polynomial({b: 1})
        assert eng.contains(sparse_vector(diff, idx))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_rac_basis_dimension_by_rank(n):
    """dim FA_n minus the rank of the right anticommutativity consequences."""
    if n == 4:
        eng, _ = _consequence_span(4)
        rank = eng.rank
    else:
        basis = enumerate_multilinear_basis(binary_types(n), n)
        rank = span_rank_under_permutations(rac_consequences(n), basis, field=Field(101))
    assert factorial(n) * len(binary_types(n)) - rank == rac_basis(n).dimension


@settings(max_examples=80, deadline=None)
@given(
    st.integers(3, 6).flatmap(
        lambda n: st.tuples(st.sampled_from(binary_types(n)), st.permutations(range(1, n + 1)).map(tuple))
    )
)
def test_straightening_idempotent(data):
    t, w = data
    s, b = rac_straighten(fill(t, w))
    assert s in (1, -1)
    assert rac_straighten(b) == (1, b)
    assert b in rac_basis(len(w)).index()


def test_straightening_vanishes_on_repeated_skew_factor():
    m = (SINGLE, 1, (SINGLE, 2, 2))
    assert rac_straighten(m) == (0, None)
    assert rac_straighten_polynomial(Polynomial({m: 3})).is_zero()


def test_di_malcev_orbit_has_rank_20():
    basis = rac_basis(4).monomials
    assert span_rank_under_permutations([di_malcev()], basis, rac_straighten_polynomial, RATIONAL) == 20


def _free_dimension_by_rank(k, n):
    """Monomials on ``k`` letters modulo every instance of x(yz) + x(zy) in any context."""
    mons = [fill(t, w) for t in binary_types(n) for w in cartesian(range(1, k + 1), repeat=n)]
    idx = basis_index(mons)
    eng = RationalEchelon(len(mons))
    for m in mons:
        for path in _right_children(m):
            node = _at(m, path)
            swapped = _replace(m, path, (SINGLE, node[2], node[1]))
            eng.add_row(sparse_vector(Polynomial({m: 1}) + Polynomial({swapped: 1}), idx))
    return len(mons) - eng.rank


def _right_children(t, path=()):
    """Paths of product nodes that are the right factor of their parent."""
    if isinstance(t, int):
        return []
    out = []
    if not isinstance(t[2], int):
        out.append(path + (2,))
    return out + _right_children(t[1], path + (1,)) + _right_children(t[2], path + (2,))


def _at(t, path):
    for k in path:
        t = t[k]
    return t


def _replace(t, path, new):
    if not path:
        return new
    kids = list(t)
    kids[path[0]] = _replace(t[path[0]], path[1:], new)
    return tuple(kids)


@pytest.mark.parametrize("k, n", [(1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (3, 3)])
def test_free_rac_dimension_by_rank(k, n):
    assert len(free_rac_monomials(k, n)) == _free_dimension_by_rank(k, n)


def test_free_rac_two_generators_degree3():
    assert len(free_rac_monomials(2, 3)) == ref.FREE_RAC["dimension"]


def test_one_generator_products():
    a2 = (SINGLE, 1, 1)
    a3 = (SINGLE, a2, 1)
    assert free_rac_product(a2, 1) == (1, a3)
    assert free_rac_product(1, a2) == (0, None)
    assert free_rac_product(a2, a2) == (0, None)
