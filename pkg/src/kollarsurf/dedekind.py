"""Dedekind sums s(a, b; n) = sum_{i=1}^{n-1} ((ia/n)) ((ib/n)).

Two independent routes are kept: literal summation (the oracle) and a
Euclid-style recursion through the reciprocity law.  Both are exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .hj import _expand
from .numeric import mod_inverse, units

QUARTER = Fraction(1, 4)


def _check_coprime(a: int, b: int, n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if gcd(a, n) != 1 or gcd(b, n) != 1:
        raise ValueError(f"s({a},{b};{n}) needs a, b coprime to n")


def dedekind_direct(a: int, b: int, n: int) -> Fraction:
    """Literal O(n) summation.

    Each term ((ia/n))((ib/n)) equals (2r - n)(2t - n) / 4n^2 with r, t the
    residues of ia, ib, so the sum is accumulated over the integers and
    divided once.  ``s(a, b; 1) = 0`` (empty sum).
    """
    _check_coprime(a, b, n)
    total = 0
    for i in range(1, n):
        total += (2 * (i * a % n) - n) * (2 * (i * b % n) - n)
    return Fraction(total, 4 * n * n)


def reciprocity_rhs(n: int, k: int) -> Fraction:
    """``(n/k + 1/(nk) + k/n)/12 - 1/4``."""
    return Fraction(n * n + k * k + 1, 12 * n * k) - QUARTER


@lru_cache(maxsize=1 << 20)
def _classical(h: int, k: int) -> Fraction:
    # s(1, h; k) by s(h,k) = R(h,k) - s(k mod h, h); ends at s(0, 1) = 0
    h %= k
    total = Fraction(0)
    sign = 1
    while h:
        term = reciprocity_rhs(h, k)
        total = total + term if sign > 0 else total - term
        sign = -sign
        h, k = k % h, h
    return total


def dedekind_fast(a: int, b: int, n: int) -> Fraction:
    """O(log n) evaluation: reduce to ``s(1, a b^-1; n)`` and recurse."""
    _check_coprime(a, b, n)
    if n == 1:
        return Fraction(0)
    return _classical(a * mod_inverse(b, n) % n, n)


def dedekind(a: int, b: int, n: int) -> Fraction:
    """Default entry point used by the invariant formulas."""
    return dedekind_fast(a, b, n)


def s11(n: int) -> Fraction:
    """Closed form ``s(1,1;n) = n/12 + 1/(6n) - 1/4``."""
    return Fraction(n, 12) + Fraction(1, 6 * n) - QUARTER


def closed_form_two(n: int) -> Fraction:
    """``2 s(1,2;n) = (n^2 - 6n + 5) / 12n`` for odd n."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and >= 3, got {n}")
    return Fraction(n * n - 6 * n + 5, 12 * n)


def fast_table(n: int) -> dict[int, Fraction]:
    """``h -> s(1, h; n)`` for every unit ``h``."""
    return {h: _classical(h, n) for h in units(n)}


def direct_matrix(n: int) -> tuple[list[int], np.ndarray]:
    """All pairs at once: ``M[x, y] = 4 n^2 s(u_x, u_y; n)`` over units ``u``.

    Same literal sum as :func:`dedekind_direct`, done as one matrix product.
    Entries are bounded by n^3 so float64 products are exact for n < 2**17.
    """
    us = units(n)
    if n > 1 << 16:
        raise ValueError("direct_matrix is only exact for n < 65536")
    i = np.arange(1, n, dtype=np.int64)
    r = (2 * (np.outer(np.asarray(us, dtype=np.int64), i) % n) - n).astype(np.float64)
    m = r @ r.T
    out = np.rint(m).astype(np.int64)
    return us, out


def hj_relation_residual(a: int, b: int, n: int) -> Fraction:
    """``12 s(a,b;n) - [(q + q^-1)/n + sum(b_i - 3)]`` with ``q = a b^-1``."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    _check_coprime(a, b, n)
    q = a * mod_inverse(b, n) % n
    exp = _expand(n, q)
    rhs = Fraction(q + mod_inverse(q, n), n) + sum(t - 3 for t in exp.terms)
    return 12 * dedekind_fast(a, b, n) - rhs


# --- bound lemmas -----------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    part: int
    n: int
    holds: bool
    counterexamples: tuple[int, ...]
    checked: int


def _excluded(part: int, n: int) -> set[int]:
    out = {1 % n}
    extra = {1: (), 2: (2,), 3: (2, 3)}[part]
    for c in extra:
        c %= n
        out.add(c)
        if gcd(c, n) == 1:
            out.add(mod_inverse(c, n))
    return out


def bound_lemma_check(part: int, n: int, table: dict[int, Fraction] | None = None) -> BoundReport:
    """Check ``s(1,1;n) > (part+1) s(1,a;n)`` over all admissible units ``a``."""
    if part not in (1, 2, 3):
        raise ValueError(f"part must be 1, 2 or 3, got {part}")
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    table = table if table is not None else fast_table(n)
    k = part + 1
    lhs = s11(n)
    skip = _excluded(part, n)
    bad, checked = [], 0
    for a in units(n):
        if a in skip:
            continue
        checked += 1
        if not lhs > k * table[a]:
            bad.append(a)
    return BoundReport(part, n, not bad, tuple(bad), checked)


# Each expression is a list of (coefficient, numerator, denominator); the
# residue is numerator * denominator^-1 mod n and the term is coeff*s(1, r; n).
COROLLARY_EXPRESSIONS = {
    1: [(2, 1, 1), (-2, 2, 1), (1, 4, 1), (-1, 3, 1), (1, 2, 3), (-1, 4, 3)],
    2: [(2, 1, 1), (-1, 2, 1), (-1, 3, 1), (-1, 4, 1), (1, 6, 1), (-1, 2, 3), (1, 4, 3)],
    3: [(2, 1, 1), (-1, 2, 1), (-1, 3, 1), (-1, 5, 1), (1, 6, 1), (1, 2, 5), (-1, 6, 5)],
}


def corollary_defined(ident: int, n: int) -> bool:
    if n < 2:
        return False
    return all(gcd(num, n) == 1 and gcd(den, n) == 1
               for _, num, den in COROLLARY_EXPRESSIONS[ident])


def corollary_value(ident: int, n: int) -> Fraction:
    if ident not in COROLLARY_EXPRESSIONS:
        raise ValueError(f"corollary id must be 1, 2 or 3, got {ident}")
    if not corollary_defined(ident, n):
        raise ValueError("expression undefined at this n")
    total = Fraction(0)
    for coeff, num, den in COROLLARY_EXPRESSIONS[ident]:
        r = num * mod_inverse(den, n) % n if den != 1 else num % n
        total += coeff * _classical(r, n)
    return total


def corollary_check(ident: int, n: int) -> bool:
    """True when the expression is strictly positive at ``n``."""
    return corollary_value(ident, n) > 0
