import pytest

from conftest import load_grid
from dimalcev.linalg import rcf
from dimalcev.monomials import SINGLE, Polynomial
from dimalcev.triple import (
    binary_basis,
    check_degree3,
    check_degree5,
    degree3_matrix,
    leibniz_triple_identities,
    ltp_expand,
    ltp_expand_polynomial,
    malcev_dialgebra_identities_degree5,
    ternary_basis,
    ternary_types,
    tri,
)


def test_expansion_of_trilinear_monomial():
    e = ltp_expand(tri(1, 2, 3))
    assert e == Polynomial(
        {
            (SINGLE, (SINGLE, 1, 2), 3): 2,
            (SINGLE, 1, (SINGLE, 2, 3)): 1,
            (SINGLE, (SINGLE, 1, 3), 2): 1,
        }
    )


def test_nested_expansion_is_multilinear():
    e = ltp_expand(tri(tri(1, 2, 3), 4, 5))
    assert e.degree == 5 and e.is_multilinear()
    assert sum(e.as_dict().values()) == 4 * 4
    p = Polynomial({tri(1, 2, 3): 1, tri(2, 1, 3): -1})
    assert ltp_expand_polynomial(p) == ltp_expand(tri(1, 2, 3)) - ltp_expand(tri(2, 1, 3))


def test_bases():
    assert len(ternary_types(5)) == 3
    assert len(ternary_basis(5)) == 360
    assert len(binary_basis(5)) == 1680
    assert len(malcev_dialgebra_identities_degree5()) == 36


def test_leibniz_triple_identities_shape():
    one, two = leibniz_triple_identities()
    for p in (one, two):
        assert p.degree == 5 and len(p) == 5 and p.is_multilinear()


def test_degree3_matrix_matches_published_figure():
    M = degree3_matrix()
    assert M.shape == (12, 18)
    assert M.dense() == load_grid("triple3_matrix.txt")


def test_degree3_rcf_matches_published_figure():
    R = rcf(degree3_matrix())
    assert R.matrix.dense() == load_grid("triple3_rcf.txt")
    rep = check_degree3()
    assert rep.rank == 9 and rep.identities.count == 0
    assert rep.identities.denominator_lcm == 3


@pytest.fixture(scope="module")
def degree5():
    return check_degree5()


def test_degree5_rank_and_new_rows(degree5):
    assert degree5.shape == (4680, 2040)
    assert degree5.rank == 1820
    assert degree5.new_rows == 240
    assert len(degree5.identities) == 240


def test_degree5_generators_span(degree5):
    assert degree5.generators.generators == [141, 143]
    assert degree5.generators.rank == 240
    assert degree5.definition_rank == 240
    assert degree5.joint_rank == 240


def test_degree5_computed_progression(degree5):
    """The progression this implementation computes, recorded as a regression value."""
    assert degree5.generators.progression == [(1, 60), (41, 120), (71, 140), (111, 160), (141, 200), (143, 240)]


def test_degree5_tie_order_changes_indices_not_span():
    asc = check_degree5(ties="asc")
    assert asc.generators.progression == [(1, 60), (31, 120), (71, 140), (101, 160), (141, 200), (142, 240)]
    assert asc.joint_rank == 240
    with pytest.raises(ValueError):
        check_degree5(ties="sideways")


def test_degree5_second_prime():
    other = check_degree5(prime=103)
    assert other.rank == 1820 and other.new_rows == 240 and other.joint_rank == 240
