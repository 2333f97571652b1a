"""Numerical profile of the Kollar surface

    X(a1,a2,a3,a4) = (x1^a1 x2 + x2^a2 x3 + x3^a3 x4 + x4^a4 x1 = 0) in P(w1,w2,w3,w4).

Indices are 1-based in docstrings and names, cyclic mod 4; tuples are
stored 0-based.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .dedekind import dedekind, s11
from .hj import CyclicQuotientSingularity, hj_value, normalize_singularity
from .numeric import InvariantError, as_integer


def _at(seq, i: int):
    """1-based cyclic access."""
    return seq[(i - 1) % 4]


@dataclass(frozen=True)
class KollarData:
    a: tuple[int, int, int, int]
    W: tuple[int, int, int, int]
    D: int
    wstar: int
    w: tuple[int, int, int, int]
    d: int
    mu: tuple[int, int, int, int] | None
    t: int | None

    def weights_pairwise_coprime(self) -> bool:
        return gcd(self.w[0], self.w[2]) == 1 and gcd(self.w[1], self.w[3]) == 1


@dataclass(frozen=True)
class SurfaceInvariants:
    pg: int
    euler: int
    ksq: Fraction
    chi: int
    rational_flag: bool


def weights_from_exponents(a) -> tuple[int, int, int, int]:
    return tuple(
        _at(a, i + 1) * _at(a, i + 2) * _at(a, i + 3) - _at(a, i + 2) * _at(a, i + 3) + _at(a, i + 3) - 1
        for i in range(1, 5)
    )


def mu_residues(a, n: int) -> tuple[int, int, int, int]:
    a1, a2, a3, a4 = a
    return (a2 * a3 * a4 % n, -a3 * a4 % n, a4 % n, -1 % n)


def from_exponents(a1: int, a2: int, a3: int, a4: int) -> KollarData:
    a = (a1, a2, a3, a4)
    if any(x < 1 for x in a):
        raise ValueError(f"exponents must be positive: {a}")
    if (a1 == 1 and a3 == 1) or (a2 == 1 and a4 == 1):
        raise ValueError(f"excluded exponent pattern {a}: a_i = a_(i+2) = 1")
    W = weights_from_exponents(a)
    D = prod(a) - 1
    for i in range(1, 5):
        if _at(a, i) * _at(W, i) + _at(W, i + 1) != D:
            raise InvariantError(f"a_i W_i + W_(i+1) != D at i={i}")
    wstar = gcd(W[0], W[1])
    if wstar != gcd(*W):
        raise InvariantError("gcd(W1, W2) differs from gcd of all weights")
    if any(gcd(x, wstar) != 1 for x in a):
        raise InvariantError("some a_i shares a factor with w*")
    w = tuple(x // wstar for x in W)
    mu = t = None
    if wstar > 1:
        mu = mu_residues(a, wstar)
        if sum(mu) % wstar:
            raise InvariantError("sum of mu not divisible by w*")
        if any(gcd(m, wstar) != 1 for m in mu):
            raise InvariantError("mu_i not a unit")
        t = sum(mu) // wstar
    return KollarData(a, W, D, wstar, w, D // wstar, mu, t)


def singularity_at(data: KollarData, i: int) -> CyclicQuotientSingularity:
    """Point ``p_i``: type ``1/w_i(w_(i+2), w_(i+3))`` with reflections removed."""
    if i not in (1, 2, 3, 4):
        raise ValueError(f"point index must be 1..4, got {i}")
    return normalize_singularity(_at(data.w, i), _at(data.w, i + 2), _at(data.w, i + 3))


def ksq_X(data: KollarData) -> Fraction:
    return Fraction(data.d * (data.d - sum(data.w)) ** 2, prod(data.w))


def pg_exponent_form(data: KollarData) -> Fraction:
    n = data.wstar
    if n == 1:
        return Fraction(0)
    a1, a2, a3, a4 = data.a
    return (2 * s11(n) - sum(dedekind(1, x, n) for x in data.a)
            + dedekind(1, a1 * a4, n) + dedekind(1, a1 * a2, n))


def pg_partition_form(n: int, mu) -> Fraction:
    """``2 s(1,1;n) + sum_{i<j} s(mu_i, mu_j; n)``."""
    if n == 1:
        return Fraction(0)
    return 2 * s11(n) + sum(dedekind(x, y, n) for x, y in itertools.combinations(mu, 2))


def invariants_X(data: KollarData) -> SurfaceInvariants:
    """Geometric genus, Euler number ``w* + 4`` and ``K_X^2`` of the singular X.

    The genus is computed from the exponents and from the branch
    multiplicities; the two must agree exactly.
    """
    if data.wstar == 1:
        pg = 0
    else:
        p1 = pg_exponent_form(data)
        p2 = pg_partition_form(data.wstar, data.mu)
        if p1 != p2:
            raise InvariantError(f"p_g formulas disagree: {p1} vs {p2}")
        pg = as_integer(p1, "p_g")
        if pg < 0:
            raise InvariantError(f"negative p_g {pg}")
    return SurfaceInvariants(pg, data.wstar + 4, ksq_X(data), 1 + pg, pg == 0)


def identity_residual(data: KollarData) -> Fraction:
    """LHS - RHS of the Dedekind-sum identity obtained by comparing X with
    its root-cover model; zero whenever ``gcd(w_i, w_(i+2)) = 1``."""
    if not data.weights_pairwise_coprime():
        raise ValueError("weights not pairwise coprime")
    n, w = data.wstar, data.w
    cover = Fraction(0)
    if n > 1:
        cover = sum(dedekind(x, y, n) for x, y in itertools.combinations(data.mu, 2))
    local = sum(dedekind(_at(w, i + 2), _at(w, i + 3), _at(w, i)) for i in range(1, 5))
    lhs = 12 * (cover + local)
    rhs = ksq_X(data) - sum(Fraction(2, x) for x in w) - Fraction(n * n - 6 * n + 4, n)
    return lhs - rhs


def pg_zero_predicate(data: KollarData) -> bool:
    """Some ``a_i = 1`` or ``a_i a_(i+1) = -1`` modulo w*."""
    n = data.wstar
    if n == 1:
        raise ValueError("predicate requires w* > 1")
    a = data.a
    return any(_at(a, i) % n == 1 or (_at(a, i) * _at(a, i + 1) + 1) % n == 0 for i in range(1, 5))


# --- the curves Gamma ---------------------------------------------------------

def count_nonneg_solutions(coeffs, rhs: int) -> int:
    """Number of ``(x, y, z) >= 0`` with ``c1 x + c2 y + c3 z = rhs``.

    Loops over the variable with the largest coefficient and counts the
    remaining two-variable equation in closed form.
    """
    if rhs < 0:
        return 0
    c = sorted(coeffs)
    A, B, C = c
    if A <= 0:
        raise ValueError("coefficients must be positive")
    g = gcd(A, B)
    A1, B1 = A // g, B // g
    inv = pow(A1, -1, B1) if B1 > 1 else 0
    total = 0
    for z in range(rhs // C + 1):
        N = rhs - C * z
        if N % g:
            continue
        N //= g
        # smallest x >= 0 with A1 x = N (mod B1)
        x0 = N * inv % B1 if B1 > 1 else 0
        if A1 * x0 <= N:
            total += (N - A1 * x0) // (A1 * B1) + 1
    return total


def gamma_equation(data: KollarData, i: int):
    """Coefficients and right-hand side whose solution count is
    ``p_a(Gamma_(i+2,i+3))``.  For i=1 the curve lives in P(w2,w3,w4) with
    degree a2 w2; if gcd(w2, w4) = h > 1 those two weights are divided by h.
    """
    a, w = data.a, data.w
    u, v, x = _at(w, i + 1), _at(w, i + 2), _at(w, i + 3)
    deg_coeff = _at(a, i + 1)
    h = gcd(u, x)
    u, x = u // h, x // h
    return (u, v, x), deg_coeff * u - u - v - x


def gamma_genus(data: KollarData, i: int) -> int:
    if i not in (1, 2, 3, 4):
        raise ValueError(f"curve index must be 1..4, got {i}")
    coeffs, rhs = gamma_equation(data, i)
    return count_nonneg_solutions(coeffs, rhs)


@dataclass(frozen=True)
class ChainIntersection:
    curve: tuple[int, int]
    point: int
    singularity: CyclicQuotientSingularity | None
    sequence: tuple[int, ...]
    components: tuple[int, ...]
    multiplicities: tuple[Fraction, ...]
    transversal: bool
    note: str = ""


def gamma_chain_data(data: KollarData, i: int) -> ChainIntersection:
    """Where the strict transform of ``Gamma_(i+2,i+3)`` meets the chain over
    ``p_(i+3)`` (i=1: Gamma_{3,4} at p_4).

    Uses ``sigma_k = a_(i+1) alpha_k - (a_(i+2) - 1) beta_k``; the curve passes
    through ``E_j`` exactly where ``sigma`` changes sign, and through a single
    component iff some ``sigma_j = 0``.
    """
    if i not in (1, 2, 3, 4):
        raise ValueError(f"curve index must be 1..4, got {i}")
    if not data.weights_pairwise_coprime():
        raise ValueError("weights not pairwise coprime")
    if min(data.a) < 2:
        raise ValueError("all exponents must be >= 2")
    curve = ((i + 1) % 4 + 1, (i + 2) % 4 + 1)
    point = (i + 2) % 4 + 1
    sing = singularity_at(data, point)
    p, r = _at(data.a, i + 1), _at(data.a, i + 2) - 1
    if sing.is_smooth:
        # no chain: the local equation x^p + y^r = 0 is smooth iff p or r is 1
        return ChainIntersection(curve, point, None, (), (), (), min(p, r) == 1,
                                 "smooth point, no exceptional chain")
    e = sing.expansion
    sigma = tuple(p * al - r * be for al, be in zip(e.alpha, e.beta))
    s = e.length
    zeros = [k for k in range(1, s + 1) if sigma[k] == 0]
    if zeros:
        j = zeros[0]
        mult = Fraction(r, e.alpha[j])
        if mult != Fraction(p, e.beta[j]):
            raise InvariantError("intersection relations inconsistent")
        return ChainIntersection(curve, point, sing, sigma, (j,), (mult,), mult == 1)
    j = next(k for k in range(s + 1) if sigma[k] < 0 < sigma[k + 1])
    # r = alpha_j m_j + alpha_(j+1) m_(j+1), p = beta_j m_j + beta_(j+1) m_(j+1)
    det = e.alpha[j] * e.beta[j + 1] - e.alpha[j + 1] * e.beta[j]
    mj = Fraction(r * e.beta[j + 1] - e.alpha[j + 1] * p, det)
    mj1 = Fraction(e.alpha[j] * p - e.beta[j] * r, det)
    # E_0 and E_(s+1) are strict transforms of coordinate curves, not
    # exceptional; a crossing next to them touches a single chain member
    comps = tuple(k for k in (j, j + 1) if 1 <= k <= s)
    mults = tuple(m for k, m in ((j, mj), (j + 1, mj1)) if 1 <= k <= s)
    return ChainIntersection(curve, point, sing, sigma, comps, mults,
                             len(comps) == 1 and mults[0] == 1)


# --- contractions of C1 and C2 (w* = 1 picture) ---------------------------------

@dataclass(frozen=True)
class ContractionData:
    s1: int
    s2: int
    first: CyclicQuotientSingularity
    second: CyclicQuotientSingularity
    expected_first: tuple[int, ...] | None
    expected_second: tuple[int, ...] | None
    pattern_ok: bool | None


def _matches(terms, expected) -> bool:
    return tuple(terms) == tuple(expected) or tuple(reversed(terms)) == tuple(expected)


def contraction_data(data: KollarData) -> ContractionData:
    """Types ``1/s1(w2, w4)`` and ``1/s2(w1, w3)`` of the points obtained by
    contracting ``C1 = (x1 = x3 = 0)`` and ``C2 = (x2 = x4 = 0)``."""
    a1, a2, a3, a4 = data.a
    w1, w2, w3, w4 = data.w
    s1 = a4 * w4 - w3
    s2 = a3 * w3 - w2
    if s1 <= 0 or s2 <= 0:
        raise ValueError(f"degenerate contraction: s1={s1}, s2={s2}")
    first = normalize_singularity(s1, w2, w4)
    second = normalize_singularity(s2, w1, w3)
    exp1 = exp2 = ok = None
    if data.wstar == 1:
        exp1 = (2,) * (a4 - 1) + (a3, a1) + (2,) * (a2 - 1)
        exp2 = (2,) * (a3 - 1) + (a2, a4) + (2,) * (a1 - 1)
        ok = (hj_value(exp1).numerator == s1 and hj_value(exp2).numerator == s2
              and _matches(first.terms, exp1) and _matches(second.terms, exp2))
    return ContractionData(s1, s2, first, second, exp1, exp2, ok)


def c1_contractible_a1_one(data: KollarData) -> bool:
    if data.a[0] != 1:
        raise ValueError("criterion applies only when a1 = 1")
    return data.a[2] > data.a[1]


def wellformed_check(w) -> bool:
    return all(gcd(gcd(x, y), z) == 1 for x, y, z in itertools.combinations(w, 3))


# --- birational models with coprime weights -------------------------------------

def _lifts(base, n: int, bound: int, minimum: int = 2):
    """Lifts ``b_i + t_i n`` (0 <= t_i <= bound, each >= minimum), ordered by
    total offset and then lexicographically."""
    for total in range(4 * bound + 1):
        for t in _compositions(total, bound):
            a = tuple(r + ti * n for r, ti in zip(base, t))
            if min(a) >= minimum:
                yield a


def _compositions(total: int, bound: int):
    for t1 in range(min(total, bound) + 1):
        for t2 in range(min(total - t1, bound) + 1):
            for t3 in range(min(total - t1 - t2, bound) + 1):
                t4 = total - t1 - t2 - t3
                if t4 <= bound:
                    yield (t1, t2, t3, t4)


def lift_to_kollar(base, n: int, search_bound: int = 20, coprime: bool = True) -> KollarData:
    """Smallest exponents ``base_i + t_i n`` with ``w* = n`` exactly (and, if
    requested, ``gcd(w1,w3) = gcd(w2,w4) = 1``).

    Pass reduced residues as ``base`` to search from the bottom of each class.
    """
    for a in _lifts(tuple(base), n, search_bound):
        if (a[0] == 1 and a[2] == 1) or (a[1] == 1 and a[3] == 1):
            continue
        W = weights_from_exponents(a)
        if gcd(*W) != n:
            continue
        data = from_exponents(*a)
        if coprime and not data.weights_pairwise_coprime():
            continue
        return data
    raise ValueError("no admissible lift found; increase search bound")


def find_coprime_model(data: KollarData, search_bound: int = 20) -> KollarData:
    """A birational model ``X(a')`` with ``a' = a (mod w*)``, ``a'_i >= 2`` and
    ``gcd(w'_1, w'_3) = gcd(w'_2, w'_4) = 1``."""
    if data.wstar == 1:
        raise ValueError("coprime-model search requires w* > 1")
    out = lift_to_kollar(data.a, data.wstar, search_bound)
    if out.mu != data.mu or out.wstar != data.wstar:
        raise InvariantError("lift changed the branch data")
    return out
