from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

DEFAULT_PRIME = 101


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``prime is None``) or GF(p) for a prime ``p > 3``."""

    prime: int | None = None

    def __post_init__(self):
        p = self.prime
        if p is None:
            return
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p in (2, 3):
            raise ValueError("characteristic 2 and 3 are not supported")

    @classmethod
    def rational(cls) -> "Field":
        return cls(None)

    @classmethod
    def modular(cls, p: int = DEFAULT_PRIME) -> "Field":
        return cls(p)

    @property
    def is_rational(self) -> bool:
        return self.prime is None

    @property
    def name(self) -> str:
        return "QQ" if self.prime is None else f"GF({self.prime})"

    def convert(self, x):
        """Exact image of the rational ``x`` in this field."""
        if self.prime is None:
            if isinstance(x, int):
                return x
            f = Fraction(x)
            return f.numerator if f.denominator == 1 else f
        p = self.prime
        if isinstance(x, int):
            return x % p
        if not isinstance(x, Rational):
            raise TypeError(f"cannot convert {x!r} to {self.name}")
        num, den = x.numerator, x.denominator
        if den % p == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes modulo {p}")
        return num * pow(den, -1, p) % p

    def symmetric(self, x: int) -> int:
        """Representative of a residue in ``(-p/2, p/2]``."""
        p = self.prime
        if p is None:
            return x
        x %= p
        return x - p if x > p // 2 else x


RATIONAL = Field(None)
