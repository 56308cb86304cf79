"""Small helpers for exact rationals and primes."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

Number = Union[int, Fraction]


def normalize(x) -> Number:
    """Return ``x`` as an int when it is integral, otherwise as a Fraction."""
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return normalize(Fraction(x.strip()))
    raise TypeError(f"not an exact rational: {x!r}")


def is_integral(x: Number) -> bool:
    return isinstance(x, int) or x.denominator == 1


def to_json_number(x: Number):
    """Integers stay JSON ints; everything else becomes a "num/den" string."""
    x = normalize(x)
    if isinstance(x, int):
        return x
    return f"{x.numerator}/{x.denominator}"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_odd_prime(p: int) -> None:
    from .errors import PreconditionError

    if not isinstance(p, int) or p == 2 or not is_prime(p):
        raise PreconditionError(f"p must be an odd prime, got {p!r}")
