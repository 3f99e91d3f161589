"""Free 0-dialgebras: bar normal forms, association types and the dicommutator.

In a 0-dialgebra the right argument of ``⊣`` and the left argument of ``⊢``
do not depend on the choice of operations inside them.  Normal forms make
this syntactic: those arguments are stored as plain ``M`` trees, so
``(a⊣b)⊢c`` and ``(a⊢b)⊢c`` both become ``('R', ('M', 1, 2), 3)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .monomials import (
    LEAF,
    LEFT,
    RIGHT,
    SINGLE,
    Polynomial,
    binary_types,
    catalan,
    enumerate_multilinear_basis,
    product,
)


def strip(t):
    """Forget every operation label: the plain monomial underneath ``t``."""
    if isinstance(t, int):
        return t
    return (SINGLE, strip(t[1]), strip(t[2]))


def normalize_bar(t):
    """Bar normal form of a monomial in ``⊣``/``⊢``."""
    if isinstance(t, int):
        return t
    op, x, y = t
    if op == LEFT:
        return (LEFT, normalize_bar(x), strip(y))
    if op == RIGHT:
        return (RIGHT, strip(x), normalize_bar(y))
    raise ValueError(f"operation {op!r} cannot head a dialgebra monomial")


def normalize_polynomial(p: Polynomial) -> Polynomial:
    return p.map_monomials(normalize_bar)


def is_normal(t) -> bool:
    return normalize_bar(t) == t


@dataclass(frozen=True)
class DialgebraTypeCensus:
    degree: int
    types: tuple

    @property
    def count(self) -> int:
        return len(self.types)


@lru_cache(maxsize=None)
def dialgebra_types(n: int) -> tuple:
    """Normal-form 0-dialgebra association types of degree ``n``.

    Ordered by the degree of the left factor (descending); within one split
    the ``⊣`` family precedes the ``⊢`` family, and each family runs through
    its left factor, then its right factor, in their own orders.
    """
    if n < 1:
        raise ValueError("degree must be positive")
    if n == 1:
        return (LEAF,)
    out = []
    for i in range(n - 1, 0, -1):
        for d in dialgebra_types(i):
            for p in binary_types(n - i):
                out.append((LEFT, d, p))
        for p in binary_types(i):
            for d in dialgebra_types(n - i):
                out.append((RIGHT, p, d))
    return tuple(out)


def enumerate_dialgebra_types(n: int) -> DialgebraTypeCensus:
    return DialgebraTypeCensus(n, dialgebra_types(n))


def dialgebra_type_count(n: int) -> int:
    """``Z_n`` from the recurrence ``Z_n = 2 Σ Z_{n-i} K_i``."""
    z = [0, 1]
    for m in range(2, n + 1):
        z.append(2 * sum(z[m - i] * catalan(i) for i in range(1, m)))
    return z[n]


def fd_dimension(n: int) -> int:
    return factorial(n) * n * catalan(n)


@lru_cache(maxsize=None)
def fd_basis(n: int) -> tuple:
    return tuple(enumerate_multilinear_basis(dialgebra_types(n), n))


@lru_cache(maxsize=None)
def dialgebra_type_index(n: int) -> dict:
    return {t: i for i, t in enumerate(dialgebra_types(n))}


@lru_cache(maxsize=4096)
def _expand_cached(m) -> Polynomial:
    if isinstance(m, int):
        return Polynomial.monomial(m)
    if m[0] != SINGLE:
        raise ValueError("dicommutator expansion needs a monomial in one operation")
    u = _expand_cached(m[1])
    v = _expand_cached(m[2])
    return normalize_polynomial(product(LEFT, u, v) - product(RIGHT, v, u))


def dicommutator_expand(m) -> Polynomial:
    """Expand every product of ``m`` as ``x⊣y - y⊢x``, in bar normal form."""
    return _expand_cached(m)


def dicommutator_expand_polynomial(p: Polynomial) -> Polynomial:
    return p.map_monomials(dicommutator_expand)


def build_expansion_rows(source_basis, n: int):
    """Matrix whose row ``i`` is the expansion of ``source_basis[i]`` in FD_n."""
    from .linalg import ExactMatrix

    basis = fd_basis(n)
    return ExactMatrix.from_polynomials(
        [dicommutator_expand(m) for m in source_basis], basis
    )

