"""Kolesnikov's algorithm: from identities of algebras to identities of dialgebras.

The two new operations are encoded with the dialgebra tags: the first new
operation is ``L`` (``⊣``) and the second is ``R`` (``⊢``).
"""

from __future__ import annotations

from typing import Sequence

from .monomials import (
    LEFT,
    RIGHT,
    SINGLE,
    Polynomial,
    degree,
    fill,
    product,
    var,
)


def _check_input(identity: Polynomial) -> int:
    if identity.is_zero():
        raise ValueError("cannot transform the zero polynomial")
    if not identity.is_multilinear():
        raise ValueError("identity must be multilinear")
    if identity.signature() - {SINGLE}:
        raise ValueError("identity must use the single operation M only")
    return identity.degree


def label_central(t, central: int):
    """Relabel the operations of ``t`` relative to the central variable."""
    pos = _position(t, central, 0)
    if pos is None:
        raise ValueError(f"variable {central} does not occur")

    def go(s, start):
        if isinstance(s, int):
            return s
        _, x, y = s
        mid = start + degree(x)
        end = mid + degree(y)
        if start <= pos < mid:
            op = LEFT
        elif mid <= pos < end:
            op = RIGHT
        elif pos < start:
            op = LEFT
        else:
            op = RIGHT
        return (op, go(x, start), go(y, mid))

    return go(t, 0)


def _position(t, v, start):
    if isinstance(t, int):
        return start if t == v else None
    off = start
    for c in t[1:]:
        hit = _position(c, v, off)
        if hit is not None:
            return hit
        off += degree(c)
    return None


def kp_part1(identity: Polynomial) -> list[Polynomial]:
    """One two-operation identity per choice of central argument ``1..d``."""
    d = _check_input(identity)
    return [identity.map_monomials(lambda m, i=i: label_central(m, i)) for i in range(1, d + 1)]


def kp_part2() -> list[Polynomial]:
    """Analogues of the bar identities for the two new operations."""
    a, b, c = 1, 2, 3
    return [
        Polynomial({(RIGHT, (LEFT, a, b), c): 1, (RIGHT, (RIGHT, a, b), c): -1}),
        Polynomial({(LEFT, a, (LEFT, b, c)): 1, (LEFT, a, (RIGHT, b, c)): -1}),
    ]


def kp_transform(variety: Sequence[Polynomial]) -> list[Polynomial]:
    out: list[Polynomial] = []
    for identity in variety:
        out.extend(kp_part1(identity))
    out.extend(kp_part2())
    return out


def _eliminate(t) -> Polynomial:
    if isinstance(t, int):
        return var(t)
    op, x, y = t
    if op == LEFT:
        return product(SINGLE, _eliminate(x), _eliminate(y))
    if op == RIGHT:
        return -product(SINGLE, _eliminate(y), _eliminate(x))
    raise ValueError(f"unexpected operation {op!r}")


def eliminate_second_op(ids: Sequence[Polynomial]) -> list[Polynomial]:
    """Rewrite ``{x,y}_2`` as ``-{y,x}_1`` and keep only the first operation.

    Valid only when the anticommutativity relation ``{a,b}_2 = -{b,a}_1`` is
    among (or implied by) the identities; the caller is responsible for that.
    Relations that collapse to zero are returned as zero polynomials.
    """
    return [p.map_monomials(_eliminate) for p in ids]


# standard inputs ------------------------------------------------------------


def associativity() -> Polynomial:
    a, b, c = 1, 2, 3
    return Polynomial({(SINGLE, (SINGLE, a, b), c): 1, (SINGLE, a, (SINGLE, b, c)): -1})


def linearized_alternativity() -> list[Polynomial]:
    """Multilinear forms of ``(a,a,b) = 0`` and ``(b,a,a) = 0``."""

    def assoc(x, y, z):
        return Polynomial(
            {(SINGLE, (SINGLE, x, y), z): 1, (SINGLE, x, (SINGLE, y, z)): -1}
        )

    return [assoc(1, 2, 3) + assoc(2, 1, 3), assoc(1, 2, 3) + assoc(1, 3, 2)]


def anticommutativity() -> Polynomial:
    return Polynomial({(SINGLE, 1, 2): 1, (SINGLE, 2, 1): 1})


def sagle_malcev() -> Polynomial:
    """Multilinear Malcev identity ``(ac)(bd) - ((ab)c)d - ((bc)d)a - ((cd)a)b - ((da)b)c``."""
    left3 = (SINGLE, (SINGLE, (SINGLE, 0, 0), 0), 0)
    return Polynomial(
        {
            fill((SINGLE, (SINGLE, 0, 0), (SINGLE, 0, 0)), (1, 3, 2, 4)): 1,
            fill(left3, (1, 2, 3, 4)): -1,
            fill(left3, (2, 3, 4, 1)): -1,
            fill(left3, (3, 4, 1, 2)): -1,
            fill(left3, (4, 1, 2, 3)): -1,
        }
    )
