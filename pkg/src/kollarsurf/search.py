"""Enumeration and verification campaigns over root-cover configurations.

Sweeps run on per-n integer tables: ``6n s(1,h;n)`` is an integer, so p_g,
e and ``n K^2`` of a configuration are assembled from table lookups without
any rational arithmetic.  The single-config functions in ``rootcover`` remain
the reference; tests compare the two.
"""
from __future__ import annotations

import csv
import itertools
import random
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Iterable

from .dedekind import bound_lemma_check, corollary_check, corollary_defined, fast_table
from .hj import _expand
from .numeric import mod_inverse, units
from .rootcover import PAIRS, RootCoverConfig, invariants_Y, validate_config

CLASS_FIELDS = ["n", "canonical_mu1", "canonical_mu2", "canonical_mu3", "canonical_mu4", "orbit_size", "pg"]


@dataclass(frozen=True)
class PartitionClass:
    n: int
    representative: tuple[int, int, int, int]
    orbit_size: int
    pg: int

    def row(self) -> list[int]:
        return [self.n, *self.representative, self.orbit_size, self.pg]


@dataclass
class CampaignReport:
    name: str
    n_max: int
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


# --- per-n tables -----------------------------------------------------------

@dataclass(frozen=True)
class _Table:
    n: int
    inv: dict[int, int]
    s6: dict[int, int]       # h -> 6n s(1,h;n)
    length: dict[int, int]   # q -> length of n/q

    def pg6n(self, mu) -> int:
        inv, s6 = self.inv, self.s6
        n = self.n
        total = 2 * s6[1]
        for i, j in PAIRS:
            total += s6[mu[i - 1] * inv[mu[j - 1]] % n]
        return total

    def pg(self, mu) -> int:
        v = self.pg6n(mu)
        if v % (6 * self.n):
            raise ArithmeticError(f"non-integral p_g at n={self.n}, mu={mu}")
        return v // (6 * self.n)

    def invariants(self, mu) -> tuple[int, int, int]:
        """``(6n p_g, e, n K^2)`` as integers."""
        n, inv, s6, ln = self.n, self.inv, self.s6, self.length
        pg6n = 2 * s6[1]
        lsum = 0
        for i, j in PAIRS:
            r = mu[i - 1] * inv[mu[j - 1]] % n
            pg6n += s6[r]
            lsum += ln[n - r]
        ssum6n = pg6n - 2 * s6[1]
        euler = n + 2 + lsum
        nksq = n * n + 4 + 4 * n + 2 * ssum6n - n * lsum
        return pg6n, euler, nksq


@lru_cache(maxsize=256)
def _table(n: int) -> _Table:
    us = units(n)
    inv = {u: mod_inverse(u, n) for u in us}
    s6 = {}
    for h, s in fast_table(n).items():
        v = 6 * n * s
        if v.denominator != 1:
            raise ArithmeticError(f"6n s(1,{h};{n}) not integral")
        s6[h] = int(v)
    length = {q: _expand(n, q).length for q in us}
    return _Table(n, inv, s6, length)


# --- enumeration and classes --------------------------------------------------

def enumerate_configs(n: int) -> list[tuple[int, int, int, int]]:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    us = units(n)
    unit_set = set(us)
    out = []
    for m1, m2, m3 in itertools.product(us, repeat=3):
        m4 = -(m1 + m2 + m3) % n
        if m4 in unit_set:
            out.append((m1, m2, m3, m4))
    return out


def _perm_count(t) -> int:
    c = factorial(4)
    for v in set(t):
        c //= factorial(t.count(v))
    return c


def canonical(mu, n: int) -> tuple[int, int, int, int]:
    """Lexicographically least sorted unit multiple of ``mu``.

    A least representative always starts with 1, so only the four scalings
    that send some entry to 1 need to be tried.
    """
    return min(tuple(sorted(c * m % n for m in mu)) for c in {mod_inverse(m, n) for m in mu})


def orbit_size(rep, n: int) -> int:
    return sum(_perm_count(t) for t in {tuple(sorted(c * m % n for m in rep)) for c in units(n)})


def _sorted_candidates(n: int) -> Iterable[tuple[int, int, int, int]]:
    # every class has a sorted member (1, x, y, z)
    us = units(n)
    unit_set = set(us)
    for ix, x in enumerate(us):
        for y in us[ix:]:
            z = (-1 - x - y) % n
            if z >= y and z in unit_set:
                yield (1, x, y, z)


def classes(n: int, target_pg: int | None = None) -> list[PartitionClass]:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    tab = _table(n)
    seen: dict[tuple, int] = {}
    for cand in _sorted_candidates(n):
        pg = tab.pg(cand)
        if target_pg is not None and pg != target_pg:
            continue
        rep = canonical(cand, n)
        if rep not in seen:
            seen[rep] = pg
    return [PartitionClass(n, rep, orbit_size(rep, n), pg) for rep, pg in sorted(seen.items())]


def _classes_job(args):
    n, target = args
    return classes(n, target)


def find_pg_classes(n_max: int, target_pg: int, n_min: int = 2, workers: int = 1,
                    out: str | None = None) -> list[PartitionClass]:
    """All classes with ``p_g = target_pg`` over ``n_min <= n <= n_max``.

    Rows stream to ``out`` (CSV) as each n completes.
    """
    if n_max < 2 or target_pg < 0:
        raise ValueError("need n_max >= 2 and target_pg >= 0")
    jobs = [(n, target_pg) for n in range(max(2, n_min), n_max + 1)]
    fh = open(out, "w", newline="") if out else None
    writer = csv.writer(fh) if fh else None
    if writer:
        writer.writerow(CLASS_FIELDS)
    found: list[PartitionClass] = []
    try:
        if workers > 1:
            with ProcessPoolExecutor(workers) as ex:
                results = ex.map(_classes_job, jobs, chunksize=4)
                for batch in results:
                    found.extend(batch)
                    _write(writer, fh, batch)
        else:
            for job in jobs:
                batch = _classes_job(job)
                found.extend(batch)
                _write(writer, fh, batch)
    finally:
        if fh:
            fh.close()
    return sorted(found, key=lambda c: (c.n, c.representative))


def _write(writer, fh, batch) -> None:
    if writer:
        for c in batch:
            writer.writerow(c.row())
        fh.flush()


# --- campaigns ----------------------------------------------------------------

def verify_pg_zero(n_max: int) -> CampaignReport:
    """``p_g = 0`` iff two multiplicities are opposite mod n, for every config."""
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    rep = CampaignReport("pg0", n_max)
    for n in range(2, n_max + 1):
        tab = _table(n)
        for mu in enumerate_configs(n):
            rep.checked += 1
            zero = tab.pg(mu) == 0
            pair = any((mu[i - 1] + mu[j - 1]) % n == 0 for i, j in PAIRS)
            if zero != pair:
                rep.counterexamples.append((n, mu))
    return rep


def noether_holds(n: int, mu) -> bool:
    pg6n, euler, nksq = _table(n).invariants(mu)
    # 12(1 + p_g) = K^2 + e, scaled by n
    return 2 * pg6n + 12 * n == nksq + n * euler


def verify_noether(n_max: int, random_count: int = 0, seed: int = 0,
                   random_n_max: int = 2000) -> CampaignReport:
    """Exhaustive to ``n_max`` then ``random_count`` random configs above it."""
    rep = CampaignReport("noether", n_max)
    for n in range(2, n_max + 1):
        for mu in enumerate_configs(n):
            rep.checked += 1
            if not noether_holds(n, mu):
                rep.counterexamples.append((n, mu))
    rng = random.Random(seed)
    for _ in range(random_count):
        n, mu = random_config(rng, n_max + 1, random_n_max)
        rep.checked += 1
        inv = invariants_Y(validate_config(n, *mu))
        if 12 * inv.chi != inv.ksq + inv.euler:
            rep.counterexamples.append((n, mu))
    return rep


def random_config(rng: random.Random, n_lo: int, n_hi: int) -> tuple[int, tuple]:
    while True:
        n = rng.randint(n_lo, n_hi)
        mu = [rng.randrange(1, n) for _ in range(3)]
        mu.append(-sum(mu) % n)
        if all(gcd(m, n) == 1 for m in mu):
            return n, tuple(mu)


def verify_pg_one(n_max: int = 75, empty_to: int = 150, workers: int = 1) -> CampaignReport:
    """Count ``p_g = 1`` classes up to ``n_max`` and confirm none in ``(n_max, empty_to]``."""
    rep = CampaignReport("pg1", n_max)
    found = find_pg_classes(n_max, 1, workers=workers)
    rep.checked = len(found)
    rep.detail["classes"] = found
    if empty_to > n_max:
        beyond = find_pg_classes(empty_to, 1, n_min=n_max + 1, workers=workers)
        rep.detail["beyond"] = beyond
        rep.counterexamples.extend(beyond)
    return rep


def verify_dedekind_bounds(part: int, n_max: int) -> CampaignReport:
    rep = CampaignReport(f"bounds{part}", n_max)
    for n in range(2, n_max + 1):
        r = bound_lemma_check(part, n)
        rep.checked += r.checked
        if not r.holds:
            rep.counterexamples.append((n, r.counterexamples))
    return rep


EXPECTED_COROLLARY_FAILURES = {1: [5], 2: [7], 3: [7]}


def verify_corollaries(n_max: int, n_min: int = 3) -> CampaignReport:
    """Record where each expression is non-positive; any deviation from the
    known exceptional n is a counterexample."""
    rep = CampaignReport("corollaries", n_max)
    failures = {k: [] for k in EXPECTED_COROLLARY_FAILURES}
    for n in range(n_min, n_max + 1):
        for ident in failures:
            if corollary_defined(ident, n):
                rep.checked += 1
                if not corollary_check(ident, n):
                    failures[ident].append(n)
    rep.detail["failures"] = failures
    for ident, got in failures.items():
        want = [n for n in EXPECTED_COROLLARY_FAILURES[ident] if n_min <= n <= n_max]
        if got != want:
            rep.counterexamples.append((ident, got))
    return rep


def verify_reciprocity(n_max: int) -> CampaignReport:
    from .dedekind import dedekind_direct, reciprocity_rhs
    rep = CampaignReport("reciprocity", n_max)
    for n in range(3, n_max + 1):
        for k in range(2, n):
            if gcd(n, k) != 1:
                continue
            rep.checked += 1
            if dedekind_direct(k, 1, n) + dedekind_direct(n, 1, k) != reciprocity_rhs(n, k):
                rep.counterexamples.append((n, k))
    return rep


# --- constructions and sampling --------------------------------------------------

def anypg_construct(g: int) -> RootCoverConfig:
    if g < 1:
        raise ValueError(f"g must be >= 1, got {g}")
    n = 3 * g + 1
    return validate_config(n, 3, n - 1, n - 1, n - 1)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, int(n ** 0.5) + 1))


@dataclass(frozen=True)
class SampleStats:
    n: int
    count: int
    seed: int
    ratios: tuple[Fraction, ...]
    minimum: float
    maximum: float
    median: float
    mean: float
    frac_ge_08: float
    frac_ge_09: float
    all_below_one: bool
    median_exact: Fraction
    mean_exact: Fraction


def generic_sample(n: int, count: int, seed: int) -> SampleStats:
    """``K^2/e`` of the resolved cover over uniform compositions of n into 4 parts."""
    if not _is_prime(n):
        raise ValueError(f"n must be prime, got {n}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    rng = random.Random(seed)
    ratios = []
    while len(ratios) < count:
        cuts = sorted(rng.sample(range(1, n), 3))
        mu = (cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], n - cuts[2])
        if any(gcd(m, n) != 1 for m in mu):
            continue
        inv = invariants_Y(validate_config(n, *mu))
        ratios.append(inv.ksq / inv.euler)
    fl = [float(r) for r in ratios]
    return SampleStats(
        n, count, seed, tuple(ratios), min(fl), max(fl), statistics.median(fl), statistics.fmean(fl),
        sum(r >= Fraction(4, 5) for r in ratios) / count,
        sum(r >= Fraction(9, 10) for r in ratios) / count,
        all(r < 1 for r in ratios),
        statistics.median(ratios), sum(ratios, Fraction(0)) / count,
    )
