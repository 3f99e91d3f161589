"""Free nonassociative monomials, association types and multilinear polynomials.

Trees are plain nested tuples.  A variable is a positive ``int`` (1 is ``a``,
2 is ``b``, ...), an association type uses ``0`` for every leaf, and an
internal node is ``(op, child, child)`` or ``(op, child, child, child)``
where ``op`` is one of

* ``M`` -- the single bilinear operation (rendered by juxtaposition),
* ``L`` -- the left dialgebra product ``⊣`` (also Kolesnikov's first operation),
* ``R`` -- the right dialgebra product ``⊢`` (Kolesnikov's second operation),
* ``T`` -- the trilinear operation ``<-,-,->``.

Tuples are hashable and immutable, so monomials can be used directly as
dictionary keys and shared freely between threads and processes.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping, Sequence

SINGLE = "M"
LEFT = "L"
RIGHT = "R"
TRI = "T"
OPS = (SINGLE, LEFT, RIGHT, TRI)

LEAF = 0

LETTERS = "abcdefghijklmnopqrstuvwxyz"


def is_leaf(t) -> bool:
    return isinstance(t, int)


def variable_name(i: int) -> str:
    if not 1 <= i <= len(LETTERS):
        raise ValueError(f"variable index {i} out of range")
    return LETTERS[i - 1]


def degree(t) -> int:
    if isinstance(t, int):
        return 1
    return sum(degree(c) for c in t[1:])


def leaves(t) -> tuple[int, ...]:
    """Leaf labels read left to right."""
    if isinstance(t, int):
        return (t,)
    out: tuple[int, ...] = ()
    for c in t[1:]:
        out += leaves(c)
    return out


def shape(t):
    """The association type of a monomial (all leaves replaced by 0)."""
    if isinstance(t, int):
        return LEAF
    return (t[0],) + tuple(shape(c) for c in t[1:])


def fill(t, word: Sequence[int]):
    """Place the variables of ``word`` on the leaves of ``t`` left to right."""
    it = iter(word)

    def go(s):
        if isinstance(s, int):
            return next(it)
        return (s[0],) + tuple(go(c) for c in s[1:])

    out = go(t)
    if next(it, None) is not None:
        raise ValueError("word longer than the number of leaves")
    return out


def split(t):
    """Return ``(shape, word)``."""
    return shape(t), leaves(t)


def relabel(t, mapping: Mapping[int, int] | Sequence[int]):
    """Replace every variable ``i`` by ``mapping[i]``.

    A sequence is read as a permutation word: variable ``i`` goes to
    ``mapping[i - 1]``.
    """
    if isinstance(mapping, Mapping):
        get = mapping.__getitem__
    else:
        get = lambda i: mapping[i - 1]  # noqa: E731

    def go(s):
        if isinstance(s, int):
            return get(s)
        return (s[0],) + tuple(go(c) for c in s[1:])

    return go(t)


def substitute(t, var: int, tree):
    """Replace the leaf ``var`` by ``tree``."""
    if isinstance(t, int):
        return tree if t == var else t
    return (t[0],) + tuple(substitute(c, var, tree) for c in t[1:])


def operations(t) -> set[str]:
    if isinstance(t, int):
        return set()
    out = {t[0]}
    for c in t[1:]:
        out |= operations(c)
    return out


def is_multilinear(t) -> bool:
    w = leaves(t)
    return sorted(w) == list(range(1, len(w) + 1))


# -- association types ------------------------------------------------------


def catalan(n: int) -> int:
    """Number of binary association types of degree ``n``."""
    if n < 1:
        raise ValueError("degree must be positive")
    return comb(2 * n - 2, n - 1) // n


@lru_cache(maxsize=None)
def binary_types(n: int, op: str = SINGLE) -> tuple:
    """All binary association types of degree ``n``.

    A product ``u v`` comes before ``u' v'`` when ``u`` has larger degree;
    equal degrees are broken by the order of ``u`` and then of ``v``.
    """
    if n < 1:
        raise ValueError("degree must be positive")
    if n == 1:
        return (LEAF,)
    out = []
    for i in range(n - 1, 0, -1):
        for u in binary_types(i, op):
            for v in binary_types(n - i, op):
                out.append((op, u, v))
    return tuple(out)


def enumerate_binary_types(n: int) -> list:
    return list(binary_types(n))


def type_key(t):
    """Sort key reproducing the order of :func:`binary_types` within a degree."""
    if isinstance(t, int):
        return ()
    return (-degree(t[1]), type_key(t[1]), type_key(t[2]))


@lru_cache(maxsize=None)
def permutation_words(n: int) -> tuple[tuple[int, ...], ...]:
    """All permutations of ``1..n`` as words, in lexicographic order."""
    return tuple(permutations(range(1, n + 1)))


@lru_cache(maxsize=None)
def permutation_index(n: int) -> dict[tuple[int, ...], int]:
    return {w: i for i, w in enumerate(permutation_words(n))}


def compose(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """The word of ``sigma ∘ tau`` (apply ``tau`` first)."""
    return tuple(sigma[t - 1] for t in tau)


def inverse(sigma: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(sigma)
    for i, s in enumerate(sigma, 1):
        out[s - 1] = i
    return tuple(out)


def enumerate_multilinear_basis(types: Iterable, n: int) -> list:
    """Type-major list of multilinear monomials, leaf words in lex order."""
    out = []
    for t in types:
        if degree(t) != n:
            raise ValueError(f"type {t!r} does not have degree {n}")
        out.extend(fill(t, w) for w in permutation_words(n))
    return out


def basis_index(basis: Sequence) -> dict:
    return {m: i for i, m in enumerate(basis)}


def multilinear_dimension(n: int) -> int:
    return factorial(n) * catalan(n)


# -- rendering --------------------------------------------------------------

_SYMBOL = {LEFT: "⊣", RIGHT: "⊢"}


def _plain(t) -> str:
    if isinstance(t, int):
        return variable_name(t)
    parts = []
    for c in t[1:]:
        s = _plain(c)
        parts.append(s if isinstance(c, int) else f"({s})")
    return "".join(parts)


def render(t) -> str:
    """Human notation: ``(ab)c``, ``(a⊣b)⊢c``, ``a⊣bc``, ``<a,b,c>``.

    An association type is shown on the word ``abc...``.
    """
    if not isinstance(t, int) and not any(leaves(t)):
        t = fill(t, range(1, degree(t) + 1))
    if isinstance(t, int):
        return variable_name(t)
    op = t[0]
    if op == SINGLE:
        return _plain(t)
    if op == TRI:
        return "<" + ",".join(render(c) for c in t[1:]) + ">"
    parts = []
    for c in t[1:]:
        if isinstance(c, int):
            parts.append(variable_name(c))
        elif c[0] == SINGLE:
            parts.append(_plain(c))
        else:
            parts.append(f"({render(c)})")
    return f"{parts[0]}{_SYMBOL[op]}{parts[1]}"


def render_dsl(t) -> str:
    """Functional notation understood by :mod:`dimalcev.dsl`."""
    if isinstance(t, int):
        return variable_name(t)
    return t[0] + "(" + ",".join(render_dsl(c) for c in t[1:]) + ")"


def _order_key(t):
    if isinstance(t, int):
        return (0, t)
    return (1, t[0]) + tuple(_order_key(c) for c in t[1:])


def monomial_key(t):
    """Deterministic total order on monomials of any signature."""
    return (_order_key(shape(t)), leaves(t))


# -- polynomials ------------------------------------------------------------


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class Polynomial:
    """Finite linear combination of monomials with exact coefficients.

    Coefficients are Python ints or :class:`fractions.Fraction`; zero
    coefficients are never stored.  Reduction modulo a prime happens when a
    polynomial is turned into a matrix row (see :mod:`dimalcev.linalg`).
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable[tuple] | None = None):
        acc: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for m, c in items:
                acc[m] = acc.get(m, 0) + c
        self._terms = {m: _clean(c) for m, c in acc.items() if c != 0}

    @classmethod
    def monomial(cls, m, c=1) -> "Polynomial":
        return cls({m: c})

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        return p

    # container protocol
    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple]:
        return iter(self.terms())

    def __contains__(self, m) -> bool:
        return m in self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, m):
        return self._terms.get(m, 0)

    def terms(self) -> list[tuple]:
        """``(monomial, coefficient)`` pairs in a deterministic order."""
        return sorted(self._terms.items(), key=lambda mc: monomial_key(mc[0]))

    def monomials(self) -> list:
        return [m for m, _ in self.terms()]

    def as_dict(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        degs = {degree(m) for m in self._terms}
        if len(degs) != 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    def signature(self) -> set[str]:
        out: set[str] = set()
        for m in self._terms:
            out |= operations(m)
        return out

    def is_multilinear(self) -> bool:
        return all(is_multilinear(m) for m in self._terms) and len(
            {degree(m) for m in self._terms}
        ) <= 1

    # arithmetic
    def __add__(self, other: "Polynomial") -> "Polynomial":
        acc = dict(self._terms)
        for m, c in other._terms.items():
            v = acc.get(m, 0) + c
            if v:
                acc[m] = _clean(v)
            else:
                acc.pop(m, None)
        return Polynomial._raw(acc)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __rmul__(self, c) -> "Polynomial":
        if not isinstance(c, Rational):
            return NotImplemented
        if c == 0:
            return Polynomial()
        return Polynomial._raw({m: _clean(c * v) for m, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    # structural maps
    def map_monomials(self, f: Callable) -> "Polynomial":
        """Apply ``f`` to every monomial; ``f`` returns a monomial or a Polynomial."""
        acc: dict = {}
        for m, c in self._terms.items():
            img = f(m)
            pairs = img._terms.items() if isinstance(img, Polynomial) else ((img, 1),)
            for m2, c2 in pairs:
                v = acc.get(m2, 0) + c * c2
                if v:
                    acc[m2] = v
                else:
                    acc.pop(m2, None)
        return Polynomial._raw({m: _clean(c) for m, c in acc.items()})

    def relabel(self, mapping) -> "Polynomial":
        return self.map_monomials(lambda m: relabel(m, mapping))

    def substitute(self, var: int, tree) -> "Polynomial":
        return self.map_monomials(lambda m: substitute(m, var, tree))

    def __repr__(self) -> str:
        return f"Polynomial({self.render()!r})"

    def render(self, fmt: Callable = render) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            coef = "" if a == 1 else f"{a} "
            if i == 0:
                out.append(("-" if c < 0 else "") + coef + fmt(m))
            else:
                out.append(f" {sign} {coef}{fmt(m)}")
        return "".join(out)

    def to_dsl(self) -> str:
        return self.render(render_dsl)

    __str__ = render


def product(op: str, *factors: Polynomial) -> Polynomial:
    """Multilinear extension of the operation ``op`` to polynomials."""
    acc: dict = {(): 1}
    for p in factors:
        nxt: dict = {}
        for ms, c in acc.items():
            for m, d in p._terms.items():
                key = ms + (m,)
                nxt[key] = nxt.get(key, 0) + c * d
        acc = nxt
    return Polynomial(((op,) + ms, c) for ms, c in acc.items())


def var(i: int) -> Polynomial:
    return Polynomial.monomial(i)


def apply_permutation(p: Polynomial, sigma: Sequence[int]) -> Polynomial:
    """Replace every variable ``i`` by ``sigma[i - 1]``."""
    n = p.degree if p else len(sigma)
    if len(sigma) != n or sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{tuple(sigma)!r} is not a permutation of degree {n}")
    return p.relabel(sigma)


def coefficient_vector(p: Polynomial, basis: Sequence, index: Mapping | None = None) -> list:
    """Dense coefficient list of ``p`` against an ordered basis."""
    if index is None:
        index = basis_index(basis)
    vec = [0] * len(basis)
    for m, c in p._terms.items():
        try:
            vec[index[m]] = c
        except KeyError:
            raise KeyError(f"monomial {render(m)} is not in the basis") from None
    return vec


def sparse_vector(p: Polynomial, index: Mapping) -> dict[int, object]:
    out = {}
    for m, c in p._terms.items():
        try:
            out[index[m]] = c
        except KeyError:
            raise KeyError(f"monomial {render(m)} is not in the basis") from None
    return out


def from_vector(vec: Sequence | Mapping, basis: Sequence) -> Polynomial:
    items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
    return Polynomial((basis[j], c) for j, c in items if c)
