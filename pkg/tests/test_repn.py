import json
from itertools import permutations
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dimalcev.monomials import compose, inverse
from dimalcev.repn import (
    dicommutator_multiplicity,
    hook_dimension,
    malcev_consequence_rank,
    multiplicity_table,
    parse_partition,
    partition_name,
    partitions,
    rep_matrix,
    rep_table,
    standard_tableaux,
)

PARTITION_COUNTS = {1: 1, 2: 2, 3: 3, 4: 5, 5: 7, 6: 11}


@pytest.mark.parametrize("n", range(1, 7))
def test_partition_enumeration(n):
    ps = partitions(n)
    assert len(ps) == PARTITION_COUNTS[n]
    assert list(ps) == sorted(ps, reverse=True)
    assert all(sum(p) == n for p in ps)
    assert sum(hook_dimension(p) ** 2 for p in ps) == factorial(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_standard_tableaux_counted_by_hook_formula(n):
    for lam in partitions(n):
        assert len(standard_tableaux(lam)) == hook_dimension(lam)


def test_partition_names():
    assert [partition_name(p) for p in partitions(4)] == ["4", "31", "22", "211", "1111"]
    assert parse_partition("3,2,1") == (3, 2, 1)
    assert parse_partition("2 1 1") == (2, 1, 1)
    assert parse_partition("41") == (4, 1)
    for bad in ("1,2", "", "3,0"):
        with pytest.raises(ValueError):
            parse_partition(bad)


@pytest.mark.parametrize("lam", [p for n in (2, 3, 4) for p in partitions(n)])
def test_representation_is_homomorphism_exhaustive(lam):
    n = sum(lam)
    words = list(permutations(range(1, n + 1)))
    d = hook_dimension(lam)
    mats = {w: rep_matrix(lam, w) for w in words}
    assert np.array_equal(mats[tuple(range(1, n + 1))], np.eye(d, dtype=np.int64))
    for s in words:
        for t in words:
            assert np.array_equal(mats[compose(s, t)], mats[s] @ mats[t])


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([p for n in (5, 6) for p in partitions(n)]).flatmap(
        lambda lam: st.tuples(
            st.just(lam),
            st.permutations(range(1, sum(lam) + 1)).map(tuple),
            st.permutations(range(1, sum(lam) + 1)).map(tuple),
        )
    )
)
def test_representation_is_homomorphism_sampled(data):
    lam, s, t = data
    assert np.array_equal(rep_matrix(lam, compose(s, t)), rep_matrix(lam, s) @ rep_matrix(lam, t))
    assert np.array_equal(rep_matrix(lam, inverse(s)) @ rep_matrix(lam, s), np.eye(hook_dimension(lam), dtype=np.int64))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_characters_are_orthonormal(n):
    """Irreducibility and inequivalence through the character inner product."""
    chars = {lam: np.trace(rep_table(lam), axis1=1, axis2=2) for lam in partitions(n)}
    for a in chars:
        for b in chars:
            assert int(chars[a] @ chars[b]) == (factorial(n) if a == b else 0)


def test_sign_and_trivial_representations():
    for w in permutations(range(1, 5)):
        assert rep_matrix((4,), w).tolist() == [[1]]
        inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if w[i] > w[j])
        assert rep_matrix((1, 1, 1, 1), w).tolist() == [[(-1) ** inversions]]


@pytest.mark.parametrize("lam", partitions(4))
def test_numba_and_numpy_kernels_agree(lam):
    a = dicommutator_multiplicity(lam, kernel="numpy")
    b = dicommutator_multiplicity(lam, kernel="numba")
    assert a == b


@pytest.mark.parametrize("lam", partitions(3) + partitions(4))
def test_rational_and_modular_agree_small(lam):
    assert dicommutator_multiplicity(lam, rational=True) == dicommutator_multiplicity(lam, prime=101)
    assert malcev_consequence_rank(lam, rational=True) == malcev_consequence_rank(lam, prime=101)


def test_partition_must_match_degree():
    with pytest.raises(ValueError):
        dicommutator_multiplicity((2, 1), n=4)


def test_checkpoints_are_reused(tmp_path):
    first = multiplicity_table(4, checkpoint=tmp_path)
    files = sorted(p.name for p in tmp_path.iterdir())
    assert len(files) == len(partitions(4))
    # a doctored checkpoint proves the second call reads instead of recomputing
    target = tmp_path / files[0]
    data = json.loads(target.read_text())
    data["value"] = -1
    target.write_text(json.dumps(data))
    second = multiplicity_table(4, checkpoint=tmp_path)
    changed = [k for k in first if first[k] != second[k]]
    assert len(changed) == 1 and second[changed[0]] == -1


@pytest.mark.parametrize("n, rows", [(3, 3), (4, 56)])
def test_multiplicities_weighted_by_dimension_count_new_rows(n, rows):
    # same computation in the monomial basis: every leaf word on every
    # right anticommutative association type, no skew reduction
    from dimalcev.dialgebra import build_expansion_rows, fd_basis
    from dimalcev.consequences import alternative_identities_in_degree, permutation_orbit
    from dimalcev.linalg import RATIONAL, ExactMatrix, build_block_matrix, extract_new_identities, rcf
    from dimalcev.consequences import rac_types
    from dimalcev.monomials import enumerate_multilinear_basis

    source = enumerate_multilinear_basis(rac_types(n), n)
    ids = alternative_identities_in_degree(n)
    A = ExactMatrix.from_polynomials([q for p in ids for q in permutation_orbit(p)], fd_basis(n))
    E = build_expansion_rows(source, n)
    new = extract_new_identities(rcf(build_block_matrix(A, E), RATIONAL), source)
    table = multiplicity_table(n, rational=True)
    assert new.count == rows == sum(m * hook_dimension(lam) for lam, m in table.items())
