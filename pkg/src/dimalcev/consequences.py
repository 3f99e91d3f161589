"""Consequences of identities in higher degree, permutation orbits, and the
straightening of monomials modulo right anticommutativity (RAC).

Under ``x(yz) = -x(zy)`` every product that is not on the left spine of a
monomial may have its two factors swapped at the cost of a sign.  The
canonical representative puts the larger factor first; equal degrees are
broken by association type and then by the variable word.  Two factors that
straighten to the same monomial annihilate the product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .dialgebra import normalize_bar, normalize_polynomial
from .monomials import (
    LEFT,
    RIGHT,
    SINGLE,
    Polynomial,
    binary_types,
    degree,
    fill,
    leaves,
    permutation_words,
    product,
    shape,
    type_key,
    var,
)

# -- standard identities ----------------------------------------------------


def right_anticommutativity() -> Polynomial:
    """``a(bc) + a(cb)``."""
    return Polynomial({(SINGLE, 1, (SINGLE, 2, 3)): 1, (SINGLE, 1, (SINGLE, 3, 2)): 1})


def di_malcev() -> Polynomial:
    """``((ab)c)d - ((ad)b)c - (a(cd))b - (ac)(bd) - a((bc)d)``."""
    left3 = (SINGLE, (SINGLE, (SINGLE, 0, 0), 0), 0)
    return Polynomial(
        {
            fill(left3, (1, 2, 3, 4)): 1,
            fill(left3, (1, 4, 2, 3)): -1,
            fill((SINGLE, (SINGLE, 0, (SINGLE, 0, 0)), 0), (1, 3, 4, 2)): -1,
            fill((SINGLE, (SINGLE, 0, 0), (SINGLE, 0, 0)), (1, 3, 2, 4)): -1,
            fill((SINGLE, 0, (SINGLE, (SINGLE, 0, 0), 0)), (1, 2, 3, 4)): -1,
        }
    )


def _left_assoc(op, x, y, z):
    return Polynomial({(op, (op, x, y), z): 1, (op, x, (op, y, z)): -1})


def alternative_dialgebra_identities(normal_form: bool = True) -> list[Polynomial]:
    """The three defining identities of alternative dialgebras.

    ``(a,b,c)_⊣ + (b,a,c)_×``, ``(a,b,c)_⊣ + (a,c,b)_⊣`` and
    ``(a,b,c)_× + (a,c,b)_⊢``; in bar normal form unless ``normal_form`` is
    false.
    """

    def left(x, y, z):
        return _left_assoc(LEFT, x, y, z)

    def right(x, y, z):
        return _left_assoc(RIGHT, x, y, z)

    def inner(x, y, z):
        return Polynomial({(LEFT, (RIGHT, x, y), z): 1, (RIGHT, x, (LEFT, y, z)): -1})

    ids = [
        left(1, 2, 3) + inner(2, 1, 3),
        left(1, 2, 3) + left(1, 3, 2),
        inner(1, 2, 3) + right(1, 3, 2),
    ]
    if normal_form:
        ids = [normalize_polynomial(p) for p in ids]
    return ids


# -- liftings ---------------------------------------------------------------


def lift_algebra_identity(identity: Polynomial, n: int | None = None, op: str = SINGLE) -> list[Polynomial]:
    """The ``n + 2`` consequences in degree ``n + 1``.

    Order: ``a_i -> a_i a_{n+1}`` for ``i = 1..n``, then ``I a_{n+1}`` and
    ``a_{n+1} I``.
    """
    n = identity.degree if n is None else n
    new = n + 1
    out = [identity.substitute(i, (op, i, new)) for i in range(1, n + 1)]
    out.append(product(op, identity, var(new)))
    out.append(product(op, var(new), identity))
    return out


def lift_dialgebra_identity(identity: Polynomial, n: int | None = None) -> list[Polynomial]:
    """The ``2(n + 2)`` consequences in degree ``n + 1``, in bar normal form.

    Order: for ``i = 1..n`` the substitutions ``a_i -> a_i⊢a_{n+1}`` and
    ``a_i -> a_i⊣a_{n+1}``; then ``I⊣x``, ``I⊢x``, ``x⊣I``, ``x⊢I`` where
    ``x = a_{n+1}``.
    """
    n = identity.degree if n is None else n
    new = n + 1
    out = []
    for i in range(1, n + 1):
        for op in (RIGHT, LEFT):
            sub = (op, i, new)
            out.append(identity.map_monomials(lambda m, i=i, sub=sub: normalize_bar(_subst(m, i, sub))))
    x = var(new)
    for p in (
        product(LEFT, identity, x),
        product(RIGHT, identity, x),
        product(LEFT, x, identity),
        product(RIGHT, x, identity),
    ):
        out.append(normalize_polynomial(p))
    return out


def _subst(t, v, tree):
    if isinstance(t, int):
        return tree if t == v else t
    return (t[0],) + tuple(_subst(c, v, tree) for c in t[1:])


@lru_cache(maxsize=None)
def _alternative_cached(n: int) -> tuple:
    if n < 3:
        raise ValueError("alternative dialgebra identities start in degree 3")
    if n == 3:
        return tuple(alternative_dialgebra_identities())
    out = []
    for p in _alternative_cached(n - 1):
        out.extend(lift_dialgebra_identity(p, n - 1))
    return tuple(out)


def alternative_identities_in_degree(n: int) -> list[Polynomial]:
    """Iterated liftings of the alternative dialgebra identities to degree ``n``."""
    return list(_alternative_cached(n))


def alternative_identity_count(n: int) -> int:
    """``A_n``: 3 in degree 3, multiplied by ``2(m + 2)`` at each lift from ``m``."""
    count = 3
    for m in range(3, n):
        count *= 2 * (m + 2)
    return count


@lru_cache(maxsize=None)
def _malcev_consequences_cached(n: int) -> tuple:
    if n < 4:
        return ()
    if n == 4:
        return (di_malcev(),)
    out = []
    for p in _malcev_consequences_cached(n - 1):
        out.extend(lift_algebra_identity(p, n - 1))
    return tuple(out)


def malcev_consequences(n: int) -> list[Polynomial]:
    """The di-Malcev identity lifted to degree ``n`` (``D_n`` identities)."""
    return list(_malcev_consequences_cached(n))


def rac_consequences(n: int) -> list[Polynomial]:
    """Right anticommutativity lifted to degree ``n``."""
    ids = [right_anticommutativity()]
    for m in range(3, n):
        ids = [q for p in ids for q in lift_algebra_identity(p, m)]
    return ids


def permutation_orbit(identity: Polynomial) -> list[Polynomial]:
    """All ``n!`` relabelings, permutations in lexicographic order."""
    n = identity.degree
    return [identity.relabel(w) for w in permutation_words(n)]


# -- right anticommutative straightening -------------------------------------


def _key(t):
    return (-degree(t), type_key(shape(t)), leaves(t))


def _canon(t, skew: bool):
    if isinstance(t, int):
        return 1, t
    op, x, y = t
    sx, cx = _canon(x, skew)
    if sx == 0:
        return 0, None
    sy, cy = _canon(y, True)
    if sy == 0:
        return 0, None
    sign = sx * sy
    if skew:
        kx, ky = _key(cx), _key(cy)
        if kx == ky:
            return 0, None
        if kx > ky:
            cx, cy = cy, cx
            sign = -sign
    return sign, (op, cx, cy)


def rac_straighten(m) -> tuple[int, object]:
    """Canonical RAC representative of ``m`` with its sign.

    Returns ``(0, None)`` when the monomial vanishes, which only happens
    when a variable is repeated.
    """
    return _canon(m, False)


def rac_straighten_polynomial(p: Polynomial) -> Polynomial:
    acc: dict = {}
    for m, c in p.as_dict().items():
        s, cm = rac_straighten(m)
        if s:
            acc[cm] = acc.get(cm, 0) + s * c
    return Polynomial(acc)


def _shape_is_canonical(t, skew: bool) -> bool:
    if isinstance(t, int):
        return True
    _, x, y = t
    if not (_shape_is_canonical(x, skew) and _shape_is_canonical(y, True)):
        return False
    if skew:
        return (-degree(x), type_key(x)) <= (-degree(y), type_key(y))
    return True


@lru_cache(maxsize=None)
def rac_types(n: int) -> tuple:
    """RAC association types of degree ``n`` in binary type order."""
    return tuple(t for t in binary_types(n) if _shape_is_canonical(t, False))


def _skew_nodes(t, skew: bool = False, path: tuple = (), leaves_only: bool = True) -> list[tuple]:
    """Paths of skew nodes whose two factors have the same association type.

    With ``leaves_only`` only products of two variables count.
    """
    if isinstance(t, int):
        return []
    _, x, y = t
    out = []
    if skew and x == y and (not leaves_only or isinstance(x, int)):
        out.append(path)
    out += _skew_nodes(x, skew, path + (1,), leaves_only)
    out += _skew_nodes(y, True, path + (2,), leaves_only)
    return out


def _swap_at(t, path):
    if not path:
        return (t[0], t[2], t[1])
    i = path[0]
    kids = list(t[1:])
    kids[i - 1] = _swap_at(kids[i - 1], path[1:])
    return (t[0],) + tuple(kids)


def skew_symmetries(n: int, full: bool = False) -> list[Polynomial]:
    """One relation ``m + m'`` per skew product of two variables.

    ``m`` is a RAC type on the identity word and ``m'`` the same monomial with
    that product's factors exchanged.  With ``full`` every skew node whose
    factors share a type counts, e.g. the middle product of ``a((bc)(de))``;
    those extra relations already follow from the others together with
    the di-Malcev consequences in degrees 5 and 6.
    """
    ident = tuple(range(1, n + 1))
    out = []
    for t in rac_types(n):
        m = fill(t, ident)
        for path in _skew_nodes(t, leaves_only=not full):
            out.append(Polynomial({m: 1, _swap_at(m, path): 1}))
    return out


@dataclass(frozen=True)
class RacBasis:
    degree: int
    types: tuple
    monomials: tuple
    skew_symmetries: tuple = field(repr=False)

    @property
    def R(self) -> int:
        return len(self.types)

    @property
    def W(self) -> int:
        return len(self.skew_symmetries)

    @property
    def dimension(self) -> int:
        return len(self.monomials)

    def index(self) -> dict:
        return _rac_index(self.degree)


@lru_cache(maxsize=None)
def rac_basis(n: int) -> RacBasis:
    mons = []
    for t in rac_types(n):
        for w in permutation_words(n):
            m = fill(t, w)
            if rac_straighten(m) == (1, m):
                mons.append(m)
    return RacBasis(n, rac_types(n), tuple(mons), tuple(skew_symmetries(n)))


@lru_cache(maxsize=None)
def _rac_index(n: int) -> dict:
    return {m: i for i, m in enumerate(rac_basis(n).monomials)}


# -- free right anticommutative algebra on k generators ----------------------


def _words(k: int, n: int):
    if n == 0:
        yield ()
        return
    for w in _words(k, n - 1):
        for x in range(1, k + 1):
            yield w + (x,)


def free_rac_monomials(k: int, n: int) -> list:
    """Basis of the degree-``n`` part of the free RAC algebra on ``k`` generators."""
    out = []
    for t in binary_types(n):
        if not _shape_is_canonical(t, False):
            continue
        for w in _words(k, n):
            m = fill(t, w)
            if rac_straighten(m) == (1, m):
                out.append(m)
    return out


def free_rac_product(x, y):
    """Product of two basis monomials of the free RAC algebra, straightened."""
    return rac_straighten((SINGLE, x, y))
