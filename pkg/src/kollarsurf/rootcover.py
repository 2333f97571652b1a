"""The n-th root cover Y -> P^2 branched along four general lines.

``Y`` is the minimal resolution of the normalized cover of
``L1^mu1 L2^mu2 L3^mu3 L4^mu4``.  Over the node ``p_ij = L_i ∩ L_j`` (i < j)
sits a point of type ``1/n(1, q)`` with ``q = -mu_i mu_j^-1``; its chain
``E_1..E_s`` has ``E_1`` meeting ``L'_j`` and ``E_s`` meeting ``L'_i``, and
along the chain ``f^*L_i`` has coefficients ``alpha_k`` while ``f^*L_j`` has
``beta_k``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .dedekind import dedekind
from .hj import CyclicQuotientSingularity, cyclic_singularity, hj_length
from .kollar import SurfaceInvariants, mu_residues, pg_partition_form
from .numeric import InvariantError, as_integer, mod_inverse

PAIRS = tuple(itertools.combinations(range(1, 5), 2))


@dataclass(frozen=True)
class RootCoverConfig:
    n: int
    mu: tuple[int, int, int, int]
    t: int


def validate_config(n: int, mu1: int, mu2: int, mu3: int, mu4: int) -> RootCoverConfig:
    mu = (mu1, mu2, mu3, mu4)
    if n < 2:
        raise ValueError(f"cover degree must be >= 2, got {n}")
    if any(not 0 < m < n for m in mu):
        raise ValueError(f"multiplicities must lie in (0, {n}): {mu}")
    if any(gcd(m, n) != 1 for m in mu):
        raise ValueError(f"multiplicities must be units mod {n}: {mu}")
    if sum(mu) % n:
        raise ValueError(f"sum of multiplicities {sum(mu)} not divisible by {n}")
    return RootCoverConfig(n, mu, sum(mu) // n)


@dataclass(frozen=True)
class NodeResolution:
    pair: tuple[int, int]
    singularity: CyclicQuotientSingularity
    q_pair: tuple[int, int]


def node_singularity(cfg: RootCoverConfig, i: int, j: int) -> NodeResolution:
    if not 1 <= i < j <= 4:
        raise ValueError(f"need 1 <= i < j <= 4, got ({i}, {j})")
    n, mu = cfg.n, cfg.mu
    q = -mu[i - 1] * mod_inverse(mu[j - 1], n) % n
    q_inv = -mu[j - 1] * mod_inverse(mu[i - 1], n) % n
    sing = cyclic_singularity(n, q, raw=(n, mu[i - 1], mu[j - 1]))
    if sing.q_inverse != q_inv:
        raise InvariantError("orientation representatives are not inverse")
    return NodeResolution((i, j), sing, (q, q_inv))


def invariants_Y(cfg: RootCoverConfig) -> SurfaceInvariants:
    """``p_g``, ``e`` and ``K^2`` of the resolved cover; q = 0 so chi = 1 + p_g."""
    n, mu = cfg.n, cfg.mu
    pg = as_integer(pg_partition_form(n, mu), "p_g")
    if pg < 0:
        raise InvariantError(f"negative p_g {pg}")
    lengths = [hj_length(mu[i - 1], mu[j - 1], n) for i, j in PAIRS]
    sums = [dedekind(mu[i - 1], mu[j - 1], n) for i, j in PAIRS]
    euler = n + 2 + sum(lengths)
    ksq = n + Fraction(4, n) + 4 + sum(12 * s - l for s, l in zip(sums, lengths))
    if 12 * (1 + pg) != ksq + euler:
        raise InvariantError(f"Noether fails: 12(1+{pg}) != {ksq} + {euler}")
    return SurfaceInvariants(pg, euler, ksq, 1 + pg, pg == 0)


# --- curve ledger -----------------------------------------------------------

@dataclass(frozen=True)
class LedgerCurve:
    name: str
    self_intersection: int
    coefficient: Fraction
    node: tuple[int, int] | None = None
    position: int | None = None


@dataclass
class CurveLedger:
    n: int
    strict_transforms: list[LedgerCurve]
    exceptional: dict[tuple[int, int], list[LedgerCurve]]
    edges: set[frozenset] = field(default_factory=set)
    pullbacks: dict[int, dict[str, int]] = field(default_factory=dict)

    def curves(self) -> list[LedgerCurve]:
        out = list(self.strict_transforms)
        for pair in PAIRS:
            out.extend(self.exceptional[pair])
        return out

    def intersection(self, c1: LedgerCurve, c2: LedgerCurve) -> int:
        if c1.name == c2.name:
            return c1.self_intersection
        return 1 if frozenset((c1.name, c2.name)) in self.edges else 0

    def _neighbours(self) -> dict[str, list[str]]:
        nb: dict[str, list[str]] = {c.name: [] for c in self.curves()}
        for e in self.edges:
            x, y = tuple(e)
            nb[x].append(y)
            nb[y].append(x)
        return nb

    def k_dot(self) -> dict[str, Fraction]:
        """``K . C`` for every ledger curve, from the coefficient vector."""
        coeff = {c.name: c.coefficient for c in self.curves()}
        nb = self._neighbours()
        return {c.name: c.coefficient * c.self_intersection + sum(coeff[x] for x in nb[c.name])
                for c in self.curves()}

    def k_squared(self) -> Fraction:
        kd = self.k_dot()
        return sum(c.coefficient * kd[c.name] for c in self.curves())

    def adjunction_failures(self) -> list[str]:
        kd = self.k_dot()
        return [c.name for c in self.curves() if kd[c.name] != -2 - c.self_intersection]

    def orthogonality_residuals(self) -> dict[tuple[int, str], int]:
        """Nonzero ``f^*L_i . E`` values (there should be none)."""
        nb = self._neighbours()
        bad = {}
        for i, vec in self.pullbacks.items():
            for pair in PAIRS:
                for c in self.exceptional[pair]:
                    val = vec.get(c.name, 0) * c.self_intersection + sum(vec.get(x, 0) for x in nb[c.name])
                    if val:
                        bad[(i, c.name)] = val
        return bad


def _lname(i: int) -> str:
    return f"L'{i}"


def curve_ledger(cfg: RootCoverConfig) -> CurveLedger:
    n, mu = cfg.n, cfg.mu
    exceptional: dict[tuple[int, int], list[LedgerCurve]] = {}
    edges: set[frozenset] = set()
    pullbacks: dict[int, dict[str, int]] = {i: {_lname(i): n} for i in range(1, 5)}
    for i, j in PAIRS:
        e = node_singularity(cfg, i, j).singularity.expansion
        chain = []
        for k in range(1, e.length + 1):
            c = LedgerCurve(f"E{i}{j}_{k}", -e.terms[k - 1],
                            Fraction(e.alpha[k] + e.beta[k] - 4, 4), (i, j), k)
            chain.append(c)
            pullbacks[i][c.name] = e.alpha[k]
            pullbacks[j][c.name] = e.beta[k]
        for x, y in zip(chain, chain[1:]):
            edges.add(frozenset((x.name, y.name)))
        edges.add(frozenset((chain[0].name, _lname(j))))
        edges.add(frozenset((chain[-1].name, _lname(i))))
        exceptional[(i, j)] = chain
    strict = []
    for i in range(1, 5):
        inv = mod_inverse(mu[i - 1], n)
        adjacent = sum(-mu[j - 1] * inv % n for j in range(1, 5) if j != i)
        if (1 - adjacent) % n:
            raise InvariantError(f"L'{i}^2 is not an integer")
        strict.append(LedgerCurve(_lname(i), (1 - adjacent) // n, Fraction(n - 4, 4)))
    ledger = CurveLedger(n, strict, exceptional, edges, pullbacks)
    if ledger.adjunction_failures():
        raise InvariantError(f"adjunction fails on {ledger.adjunction_failures()}")
    return ledger


@dataclass(frozen=True)
class PositivityReport:
    nonpositive: tuple[str, ...]
    negative: tuple[str, ...]
    exceptional_all_positive: bool


def canonical_positivity(cfg: RootCoverConfig, ledger: CurveLedger | None = None) -> PositivityReport:
    ledger = ledger or curve_ledger(cfg)
    curves = ledger.curves()
    nonpos = tuple(c.name for c in curves if c.coefficient <= 0)
    neg = tuple(c.name for c in curves if c.coefficient < 0)
    exc_ok = all(c.coefficient > 0 for chain in ledger.exceptional.values() for c in chain)
    return PositivityReport(nonpos, neg, exc_ok)


def minimality_report(cfg: RootCoverConfig, ledger: CurveLedger | None = None) -> list[str]:
    """(-1)-curves among the ledger curves only; curves outside the
    configuration are not seen."""
    ledger = ledger or curve_ledger(cfg)
    kd = ledger.k_dot()
    return [c.name for c in ledger.curves() if c.self_intersection == -1 and kd[c.name] == -1]


def lbundle_exponents(cfg: RootCoverConfig, i: int) -> tuple[int, list[int]]:
    if not 0 <= i < cfg.n:
        raise ValueError(f"eigensheaf index must be in [0, {cfg.n}), got {i}")
    return cfg.t * i, [m * i // cfg.n for m in cfg.mu]


def to_kollar(cfg: RootCoverConfig) -> tuple[int, int, int, int]:
    """Exponent residues mod n of a Kollar surface birational to the cover.

    Rescale by the unit ``xi`` with ``xi mu_4 = -1`` and solve
    ``a4 = xi mu3``, ``a3 a4 = -xi mu2``, ``a2 a3 a4 = xi mu1``, ``a1 a2 a3 a4 = 1``.
    """
    n, (m1, m2, m3, m4) = cfg.n, cfg.mu
    xi = -mod_inverse(m4, n) % n
    a4 = xi * m3 % n
    a3 = -xi * m2 * mod_inverse(a4, n) % n
    a2 = xi * m1 * mod_inverse(a3 * a4, n) % n
    a1 = mod_inverse(a2 * a3 * a4, n)
    a = (a1, a2, a3, a4)
    back = mu_residues(a, n)
    if any(b != xi * m % n for b, m in zip(back, cfg.mu)):
        raise InvariantError("round trip through the multiplicity formulas failed")
    return a
