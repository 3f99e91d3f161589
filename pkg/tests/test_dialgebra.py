import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load_signs
from dimalcev.consequences import alternative_dialgebra_identities, permutation_orbit
from dimalcev.dialgebra import (
    dialgebra_type_count,
    dialgebra_types,
    dicommutator_expand,
    fd_basis,
    fd_dimension,
    normalize_bar,
    strip,
)
from dimalcev.linalg import ExactMatrix
from dimalcev.monomials import (
    LEAF,
    LEFT,
    RIGHT,
    Polynomial,
    apply_permutation,
    binary_types,
    catalan,
    enumerate_multilinear_basis,
    fill,
    render,
)


def decorated(t):
    """Every labelling of the internal nodes of ``t`` by ``L`` / ``R``."""
    if isinstance(t, int):
        return [t]
    return [(op, x, y) for op in (LEFT, RIGHT) for x in decorated(t[1]) for y in decorated(t[2])]


def _paths(t, path=()):
    if isinstance(t, int):
        return []
    return [path] + _paths(t[1], path + (1,)) + _paths(t[2], path + (2,))


def _flip(t, path):
    if not path:
        return ((LEFT if t[0] == RIGHT else RIGHT),) + t[1:]
    k = path[0]
    kids = list(t)
    kids[k] = _flip(t[k], path[1:])
    return tuple(kids)


def bar_moves(t):
    """Trees reachable by one application of a bar identity."""
    out = []
    for p in _paths(t):
        node = t
        for k in p:
            node = node[k]
        inner = 2 if node[0] == LEFT else 1
        for q in _paths(node[inner]):
            out.append(_flip(t, p + (inner,) + q))
    return out


def bar_class(t):
    seen = {t}
    todo = [t]
    while todo:
        for s in bar_moves(todo.pop()):
            if s not in seen:
                seen.add(s)
                todo.append(s)
    return seen


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_bar_normal_form_brute_force(n):
    trees = [fill(d, range(1, n + 1)) for t in binary_types(n) for d in decorated(t)]
    assert len(trees) == 2 ** (n - 1) * catalan(n)
    classes = {}
    for t in trees:
        nf = normalize_bar(t)
        assert normalize_bar(nf) == nf
        assert strip(nf) == strip(t)
        for s in bar_class(t):
            assert normalize_bar(s) == nf
        classes.setdefault(nf, set()).add(t)
    # distinct normal forms are exactly the equivalence classes
    for members in classes.values():
        assert bar_class(next(iter(members))) == members
    assert len(classes) == dialgebra_type_count(n)
    assert set(classes) == {fill(t, range(1, n + 1)) for t in dialgebra_types(n)}


@pytest.mark.parametrize("n", range(1, 7))
def test_type_counts(n):
    assert dialgebra_type_count(n) == n * catalan(n)
    assert len(dialgebra_types(n)) == n * catalan(n)
    assert len(set(dialgebra_types(n))) == n * catalan(n)


def test_fd_dimensions():
    assert fd_dimension(3) == 36 and len(fd_basis(3)) == 36
    assert fd_dimension(4) == 480 and len(fd_basis(4)) == 480


def test_degree3_type_order():
    assert [render(t) for t in dialgebra_types(3)] == [
        "(a⊣b)⊣c",
        "(a⊢b)⊣c",
        "ab⊢c",
        "a⊣bc",
        "a⊢(b⊣c)",
        "a⊢(b⊢c)",
    ]


def _expansion_by_definition(m):
    """Sum over all choices of side at every node, straight from x⊣y - y⊢x."""

    def go(t):
        if isinstance(t, int):
            return {t: 1}
        out = {}
        for a, ca in go(t[1]).items():
            for b, cb in go(t[2]).items():
                for key, c in (((LEFT, a, b), ca * cb), ((RIGHT, b, a), -ca * cb)):
                    key = normalize_bar(key)
                    out[key] = out.get(key, 0) + c
        return out

    return Polynomial(go(m))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_expansion_term_count(n):
    for m in enumerate_multilinear_basis(binary_types(n), n):
        e = dicommutator_expand(m)
        assert len(e) == 2 ** (n - 1)
        assert {abs(c) for _, c in e.terms()} == {1}
        assert e == _expansion_by_definition(m)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(2, 5).flatmap(
        lambda n: st.tuples(
            st.sampled_from(binary_types(n)),
            st.permutations(range(1, n + 1)).map(tuple),
            st.permutations(range(1, n + 1)).map(tuple),
        )
    )
)
def test_expansion_is_equivariant(data):
    t, w, s = data
    m = fill(t, w)
    moved = next(iter(apply_permutation(Polynomial({m: 1}), s).monomials()))
    assert dicommutator_expand(moved) == apply_permutation(dicommutator_expand(m), s)


def test_degree3_A_and_E_match_published_patterns():
    A = ExactMatrix.from_polynomials(
        [q for p in alternative_dialgebra_identities() for q in permutation_orbit(p)], fd_basis(3)
    )
    E = ExactMatrix.from_polynomials(
        [dicommutator_expand(m) for m in enumerate_multilinear_basis(binary_types(3), 3)], fd_basis(3)
    )
    assert A.dense() == load_signs("degree3_A.txt")
    assert E.dense() == load_signs("degree3_E.txt")


def test_normalize_rejects_single_operation():
    with pytest.raises(ValueError):
        normalize_bar(fill(binary_types(2)[0], (1, 2)))
    assert normalize_bar(LEAF) == LEAF
