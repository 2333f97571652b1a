import itertools
import random
from fractions import Fraction

import pytest

from kollarsurf import kollar, rootcover as rc
from kollarsurf.search import enumerate_configs
from kollarsurf.numeric import units


def test_validate_config():
    assert rc.validate_config(8, 1, 1, 3, 3).t == 1
    assert rc.validate_config(29, 1, 2, 4, 22).t == 1
    assert rc.validate_config(5, 3, 1, 2, 4).t == 2
    for bad in [(8, 1, 1, 2, 4), (5, 1, 1, 1, 1), (1, 1, 1, 1, 1), (5, 0, 1, 2, 2)]:
        with pytest.raises(ValueError):
            rc.validate_config(*bad)


def test_node_singularity_examples():
    cfg = rc.validate_config(29, 1, 2, 4, 22)
    nr = rc.node_singularity(cfg, 1, 3)
    assert set(nr.q_pair) == {7, 25}
    assert nr.singularity.terms in ((5,) + (2,) * 6, (2,) * 6 + (5,))
    assert set(rc.node_singularity(cfg, 1, 2).q_pair) == {14, 27}
    nr = rc.node_singularity(rc.validate_config(8, 1, 1, 3, 3), 1, 2)
    assert nr.q_pair[0] == 7 and nr.singularity.terms == (2,) * 7
    with pytest.raises(ValueError):
        rc.node_singularity(cfg, 3, 1)


def test_invariants_examples():
    for args, want in [((8, 1, 1, 3, 3), (2, 36, 0)), ((29, 1, 2, 4, 22), (7, 83, 13)),
                       ((5, 3, 1, 2, 4), (0, 17, -5))]:
        inv = rc.invariants_Y(rc.validate_config(*args))
        assert (inv.pg, inv.euler, inv.ksq) == want
        assert inv.chi == 1 + inv.pg


def test_ledger_examples():
    led = rc.curve_ledger(rc.validate_config(8, 1, 1, 3, 3))
    assert [c.self_intersection for c in led.strict_transforms] == [-2] * 4
    led = rc.curve_ledger(rc.validate_config(29, 1, 2, 4, 22))
    assert [c.self_intersection for c in led.strict_transforms] == [-2, -2, -1, -2]
    led = rc.curve_ledger(rc.validate_config(2, 1, 1, 1, 1))
    assert [c.self_intersection for c in led.strict_transforms] == [-1] * 4
    assert {c.coefficient for c in led.curves()} == {Fraction(-1, 2)}


def test_positivity_and_minimality():
    cfg = rc.validate_config(29, 1, 2, 4, 22)
    rep = rc.canonical_positivity(cfg)
    assert rep.exceptional_all_positive and not rep.nonpositive
    assert rc.minimality_report(cfg) == ["L'3"]
    cfg = rc.validate_config(8, 1, 1, 3, 3)
    rep = rc.canonical_positivity(cfg)
    assert set(rep.nonpositive) == {"E13_2", "E14_2", "E23_2", "E24_2"} and not rep.negative
    assert rc.minimality_report(cfg) == []
    cfg = rc.validate_config(2, 1, 1, 1, 1)
    assert len(rc.canonical_positivity(cfg).negative) == 10
    assert rc.minimality_report(cfg) == ["L'1", "L'2", "L'3", "L'4"]


def test_lbundle_exponents():
    assert rc.lbundle_exponents(rc.validate_config(8, 1, 1, 3, 3), 0) == (0, [0, 0, 0, 0])
    assert rc.lbundle_exponents(rc.validate_config(8, 1, 1, 3, 3), 4) == (4, [0, 0, 1, 1])
    assert rc.lbundle_exponents(rc.validate_config(5, 3, 1, 2, 4), 4) == (8, [2, 0, 1, 3])
    with pytest.raises(ValueError):
        rc.lbundle_exponents(rc.validate_config(5, 3, 1, 2, 4), 5)


def test_to_kollar():
    assert rc.to_kollar(rc.validate_config(8, 1, 1, 3, 3)) == (5, 7, 5, 7)
    assert rc.to_kollar(rc.validate_config(5, 3, 1, 2, 4)) == (2, 2, 2, 2)
    d = kollar.from_exponents(5, 7, 13, 7)
    assert rc.to_kollar(rc.validate_config(d.wstar, *d.mu)) == tuple(x % 8 for x in d.a)


def test_to_kollar_lifts_to_same_cover():
    rng = random.Random(1)
    for _ in range(40):
        n = rng.randint(3, 40)
        cfgs = enumerate_configs(n)
        if not cfgs:
            continue
        mu = rng.choice(cfgs)
        cfg = rc.validate_config(n, *mu)
        data = kollar.lift_to_kollar(rc.to_kollar(cfg), n, coprime=False)
        assert kollar.invariants_X(data).pg == rc.invariants_Y(cfg).pg


def test_sweep_ledger_and_symmetries():
    """Adjunction, orthogonality, K^2 agreement and invariance, n <= 16 exhaustive."""
    for n in range(2, 17):
        us = units(n)
        for mu in enumerate_configs(n):
            cfg = rc.validate_config(n, *mu)
            inv = rc.invariants_Y(cfg)
            led = rc.curve_ledger(cfg)
            assert not led.adjunction_failures()
            assert not led.orthogonality_residuals()
            assert led.k_squared() == inv.ksq
            for c in us[:3]:
                scaled = rc.invariants_Y(rc.validate_config(n, *(c * m % n for m in mu)))
                assert scaled == inv
            key = (inv.pg, inv.euler, inv.ksq)
            for perm in list(itertools.permutations(mu))[:6]:
                p = rc.invariants_Y(rc.validate_config(n, *perm))
                assert (p.pg, p.euler, p.ksq) == key
