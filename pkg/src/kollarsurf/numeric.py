"""Exact arithmetic kernel: rationals, modular inverses and the sawtooth."""
from __future__ import annotations

from fractions import Fraction
from math import floor, gcd

#: Every Dedekind sum and surface invariant is carried as a reduced fraction
#: with positive denominator.
ExactRational = Fraction

HALF = Fraction(1, 2)


class InvariantError(RuntimeError):
    """An internal consistency check failed (two routes to a value disagree)."""


def rat_normalize(num: int, den: int) -> Fraction:
    if den == 0:
        raise ValueError("zero denominator")
    return Fraction(num, den)


def mod_inverse(a: int, n: int) -> int:
    """Return ``u`` with ``a*u = 1 (mod n)`` and ``0 < u < n``."""
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    try:
        return pow(a, -1, n)
    except ValueError:
        raise ValueError(f"{a} is not invertible modulo {n}") from None


def sawtooth(x) -> Fraction:
    """``x - floor(x) - 1/2`` for non-integral rational ``x``.

    The literal formula gives -1/2 at integers while the classical Dedekind
    sawtooth is 0 there; no caller ever needs that point, so it is refused.
    """
    x = Fraction(x)
    if x.denominator == 1:
        raise ValueError("sawtooth undefined at integers")
    return x - floor(x) - HALF


def units(n: int) -> list[int]:
    """Residues in ``[1, n)`` coprime to ``n`` (``[1]`` is not returned for n=1)."""
    return [a for a in range(1, n) if gcd(a, n) == 1]


def is_unit(a: int, n: int) -> bool:
    return gcd(a, n) == 1


def as_integer(x: Fraction, what: str = "value") -> int:
    if x.denominator != 1:
        raise InvariantError(f"{what} is not an integer: {x}")
    return x.numerator
