"""Hirzebruch-Jung continued fractions and cyclic quotient singularities.

Conventions: a singularity ``1/m(1, q)`` is resolved by a chain
``E_1, ..., E_s`` with ``E_k^2 = -b_k`` where ``m/q = [b_1, ..., b_s]``.
``E_0`` and ``E_{s+1}`` are the strict transforms of ``(y=0)`` and ``(x=0)``.
The companion sequences satisfy

    beta:  m = beta_0 > q = beta_1 > ... > beta_s = 1 > beta_{s+1} = 0
    alpha: 0 = alpha_0 < 1 = alpha_1 < ... < alpha_s = q^-1 < alpha_{s+1} = m

with the common recurrence ``x_{i+1} = b_i x_i - x_{i-1}`` (gamma starts at
-1, 0).  ``beta_k/m`` and ``alpha_k/m`` are the pull-back coefficients of
``(y=0)`` and ``(x=0)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .numeric import InvariantError, mod_inverse


@dataclass(frozen=True)
class HJExpansion:
    m: int
    q: int
    terms: tuple[int, ...]
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.terms)

    @property
    def q_inverse(self) -> int:
        # alpha_s is q^-1 mod m; for the smooth case there is no chain
        return self.alpha[self.length] if self.terms else 0

    def check(self) -> None:
        """Re-verify the recurrences and identities; raises InvariantError."""
        s, m, q = self.length, self.m, self.q
        al, be, ga = self.alpha, self.beta, self.gamma
        if not (len(al) == len(be) == len(ga) == s + 2):
            raise InvariantError("sequence lengths")
        if any(b < 2 for b in self.terms):
            raise InvariantError(f"term < 2 in {self.terms}")
        if (al[0], al[-1], be[0], be[-1], ga[0], ga[1]) != (0, m, m, 0, -1, 0):
            raise InvariantError("boundary values")
        for i in range(1, s + 1):
            b = self.terms[i - 1]
            for seq in (al, be, ga):
                if seq[i + 1] != b * seq[i] - seq[i - 1]:
                    raise InvariantError("recurrence")
        for i in range(s + 1):
            if al[i + 1] * ga[i] - al[i] * ga[i + 1] != -1:
                raise InvariantError("determinant identity")
        for i in range(s + 2):
            if be[i] != q * al[i] - m * ga[i]:
                raise InvariantError("beta = q alpha - m gamma")
        if any(al[i] >= al[i + 1] for i in range(s + 1)):
            raise InvariantError("alpha not increasing")
        if any(be[i] <= be[i + 1] for i in range(s + 1)):
            raise InvariantError("beta not decreasing")


def _expand(m: int, q: int) -> HJExpansion:
    terms = []
    num, den = m, q
    while den:
        b = -(-num // den)
        terms.append(b)
        num, den = den, b * den - num
    alpha, beta, gamma = [0, 1], [m, q], [-1, 0]
    for b in terms:
        alpha.append(b * alpha[-1] - alpha[-2])
        beta.append(b * beta[-1] - beta[-2])
        gamma.append(b * gamma[-1] - gamma[-2])
    return HJExpansion(m, q, tuple(terms), tuple(alpha), tuple(beta), tuple(gamma))


SMOOTH = _expand(1, 0)


def hj_expand(m: int, q: int) -> HJExpansion:
    """Expand ``m/q = [b_1, ..., b_s]`` by repeated ceiling division."""
    if m < 2 or not 0 < q < m:
        raise ValueError(f"need 0 < q < m, got m={m}, q={q}")
    if gcd(m, q) != 1:
        raise ValueError(f"q={q} not coprime to m={m}")
    return _expand(m, q)


def hj_value(terms) -> Fraction:
    terms = list(terms)
    if not terms:
        raise ValueError("empty continued fraction")
    if any(b < 2 for b in terms):
        raise ValueError(f"entries must be >= 2: {terms}")
    x = Fraction(terms[-1])
    for b in reversed(terms[:-1]):
        x = b - 1 / x
    return x


@dataclass(frozen=True)
class CyclicQuotientSingularity:
    """A point of type ``1/order(1, q)`` after quasi-reflections are removed."""

    order: int
    raw: tuple[int, int, int]
    q: int
    q_inverse: int
    expansion: HJExpansion

    @property
    def is_smooth(self) -> bool:
        return self.order == 1

    @property
    def terms(self) -> tuple[int, ...]:
        return self.expansion.terms

    @property
    def length(self) -> int:
        return self.expansion.length

    @property
    def display_q(self) -> int:
        return min(self.q, self.q_inverse)

    def __str__(self) -> str:
        if self.is_smooth:
            return "smooth"
        return f"1/{self.order}(1,{self.display_q})"


def cyclic_singularity(m: int, q: int, raw=None) -> CyclicQuotientSingularity:
    """Wrap an already normalized ``1/m(1, q)``."""
    if m == 1:
        return CyclicQuotientSingularity(1, raw or (1, 1, 0), 0, 0, SMOOTH)
    exp = hj_expand(m, q % m)
    return CyclicQuotientSingularity(m, raw or (m, 1, q), q % m, mod_inverse(q, m), exp)


def normalize_singularity(m: int, a: int, b: int) -> CyclicQuotientSingularity:
    """Bring ``1/m(a, b)`` to the form ``1/m'(1, q)``.

    A common factor ``h = gcd(a, m)`` means the subgroup of order ``h`` acts
    as a reflection; dividing it out gives ``1/(m/h)(a/h, b)``.  The same is
    then done for ``b``.  The returned ``q`` solves ``a' q = b' (mod m')``.
    """
    if m <= 0:
        raise ValueError(f"order must be positive, got {m}")
    if gcd(gcd(a, b), m) != 1:
        raise ValueError(f"gcd(a, b, m) != 1 for 1/{m}({a},{b})")
    raw = (m, a, b)
    h = gcd(a, m)
    m, a = m // h, a // h
    h = gcd(b, m)
    m, b = m // h, b // h
    if m == 1:
        return cyclic_singularity(1, 0, raw)
    q = b * mod_inverse(a, m) % m
    return cyclic_singularity(m, q, raw)


def hj_length(a: int, b: int, n: int) -> int:
    """Length of ``n/q`` where ``a + q b = 0 (mod n)``.

    This is the chain length at a node where branch lines of multiplicity
    ``a`` and ``b`` meet in an ``n``-fold cover.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if gcd(a, n) != 1 or gcd(b, n) != 1:
        raise ValueError(f"({a}, {b}) not coprime to {n}")
    q = -a * mod_inverse(b, n) % n
    return _expand(n, q).length


def pullback_coefficients(sing: CyclicQuotientSingularity):
    """``(beta_i/m)`` and ``(alpha_i/m)`` for ``i = 0..s+1``."""
    e, m = sing.expansion, sing.order
    return (tuple(Fraction(x, m) for x in e.beta),
            tuple(Fraction(x, m) for x in e.alpha))


def k_coefficients(sing: CyclicQuotientSingularity) -> tuple[Fraction, ...]:
    """Discrepancies ``-1 + (alpha_i + beta_i)/m`` of the minimal resolution."""
    e, m = sing.expansion, sing.order
    return tuple(Fraction(e.alpha[i] + e.beta[i], m) - 1 for i in range(1, e.length + 1))
