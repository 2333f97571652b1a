"""Command-line front end.

Exit status: 0 success, 1 a campaign found a counterexample (or an internal
consistency check tripped), 2 invalid input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import dedekind as dk
from . import kollar, rootcover, search
from .hj import hj_expand
from .numeric import InvariantError

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INVALID = 0, 1, 2


# --- encoding ---------------------------------------------------------------

def _plain(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def to_json(obj) -> str:
    return json.dumps(_plain(obj), separators=(",", ":"), ensure_ascii=False)


def _flatten(obj, prefix="") -> dict:
    out = {}
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.update(_flatten(v, f"{prefix}{k}_"))
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj, 1):
            out.update(_flatten(v, f"{prefix}{i}_"))
    else:
        out[prefix.rstrip("_")] = "" if obj is None else obj
    return out


def to_csv(rows) -> str:
    if isinstance(rows, dict):
        rows = [rows]
    flat = [_flatten(_plain(r)) for r in rows]
    cols: list[str] = []
    for r in flat:
        cols.extend(c for c in r if c not in cols)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    w.writerows(flat)
    return buf.getvalue()


def to_text(obj) -> str:
    if isinstance(obj, list):
        return "\n".join(to_text(x) for x in obj)
    lines = []
    for k, v in _plain(obj).items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{k}:")
            lines.extend("  " + " ".join(f"{a}={b}" for a, b in item.items()) for item in v)
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines)


# --- commands -----------------------------------------------------------------

def cmd_dedekind(args):
    if args.direct:
        s, method = dk.dedekind_direct(args.a, args.b, args.n), "direct"
    else:
        s, method = dk.dedekind_fast(args.a, args.b, args.n), "fast"
    return {"a": args.a, "b": args.b, "n": args.n, "method": method, "s": s}, EXIT_OK


def cmd_hj(args):
    e = hj_expand(args.m, args.q)
    return {"m": e.m, "q": e.q, "terms": list(e.terms), "length": e.length,
            "q_inverse": e.q_inverse, "alpha": list(e.alpha), "beta": list(e.beta)}, EXIT_OK


def cmd_kollar(args):
    data = kollar.from_exponents(*args.a)
    inv = kollar.invariants_X(data)
    out = {"wstar": data.wstar, "mu": list(data.mu) if data.mu else None,
           "pg": inv.pg, "euler": inv.euler, "ksq": inv.ksq,
           "a": list(data.a), "weights": list(data.w), "degree": data.d, "t": data.t,
           "singularities": [str(kollar.singularity_at(data, i)) for i in range(1, 5)]}
    if args.identity:
        # the identity is only claimed for pairwise coprime weights
        out["identity_residual"] = (kollar.identity_residual(data)
                                    if data.weights_pairwise_coprime() else None)
    if args.gamma and not data.weights_pairwise_coprime():
        out["gamma"] = None
    elif args.gamma:
        out["gamma"] = []
        for i in range(1, 5):
            c = kollar.gamma_chain_data(data, i)
            out["gamma"].append({"i": i, "curve": c.curve, "genus": kollar.gamma_genus(data, i),
                                 "transversal": c.transversal})
    if args.contraction:
        c = kollar.contraction_data(data)
        out["contraction"] = {"s1": c.s1, "s2": c.s2, "first": list(c.first.terms),
                              "second": list(c.second.terms), "pattern_ok": c.pattern_ok}
    return out, EXIT_OK


def cmd_rootcover(args):
    cfg = rootcover.validate_config(args.n, *args.mu)
    inv = rootcover.invariants_Y(cfg)
    out = {"pg": inv.pg, "euler": inv.euler, "ksq": inv.ksq, "chi": inv.chi, "t": cfg.t,
           "nodes": [], "minimal_report": rootcover.minimality_report(cfg)}
    for i, j in rootcover.PAIRS:
        nr = rootcover.node_singularity(cfg, i, j)
        out["nodes"].append({"pair": f"{i}{j}", "q": nr.q_pair[0], "q_inverse": nr.q_pair[1],
                             "chain": "-".join(map(str, nr.singularity.terms))})
    if args.ledger:
        led = rootcover.curve_ledger(cfg)
        kd = led.k_dot()
        out["ledger"] = [{"curve": c.name, "self_intersection": c.self_intersection,
                          "coefficient": c.coefficient, "k_dot": kd[c.name]} for c in led.curves()]
        out["ledger_ksq"] = led.k_squared()
    return out, EXIT_OK


def cmd_classify(args):
    found = search.find_pg_classes(args.nmax, args.pg, n_min=args.nmin, workers=args.workers, out=args.out)
    rows = [dict(zip(search.CLASS_FIELDS, c.row())) for c in found]
    return rows, EXIT_OK


def _summary(rep: search.CampaignReport) -> dict:
    return {"campaign": rep.name, "nmax": rep.n_max, "checked": rep.checked,
            "counterexamples": len(rep.counterexamples), "ok": rep.ok}


VERIFY_DEFAULT_NMAX = {"pg0": 40, "pg1": 75, "bounds": 1000, "corollaries": 2000,
                       "reciprocity": 300, "noether": 40}


def cmd_verify(args):
    nmax = args.nmax if args.nmax is not None else VERIFY_DEFAULT_NMAX[args.campaign]
    c = args.campaign
    if c == "pg0":
        rep = search.verify_pg_zero(nmax)
    elif c == "pg1":
        rep = search.verify_pg_one(nmax, empty_to=2 * nmax, workers=args.workers)
        out = _summary(rep)
        out["classes"] = len(rep.detail["classes"])
        out["report"] = f"{out['classes']} classes"
        return out, EXIT_OK if rep.ok else EXIT_COUNTEREXAMPLE
    elif c == "bounds":
        parts = [args.part] if args.part else [1, 2, 3]
        out = []
        code = EXIT_OK
        for p in parts:
            rep = search.verify_dedekind_bounds(p, nmax)
            out.append(_summary(rep))
            code = code if rep.ok else EXIT_COUNTEREXAMPLE
        return out, code
    elif c == "corollaries":
        rep = search.verify_corollaries(nmax)
        out = _summary(rep)
        out["failures"] = {str(k): v for k, v in rep.detail["failures"].items()}
        return out, EXIT_OK if rep.ok else EXIT_COUNTEREXAMPLE
    elif c == "reciprocity":
        rep = search.verify_reciprocity(nmax)
    else:
        rep = search.verify_noether(nmax, args.random, seed=args.seed)
    return _summary(rep), EXIT_OK if rep.ok else EXIT_COUNTEREXAMPLE


def cmd_sample(args):
    st = search.generic_sample(args.n, args.count, args.seed)
    out = {"n": st.n, "count": st.count, "seed": st.seed,
           "ratio_min": st.minimum, "ratio_median": st.median, "ratio_mean": st.mean,
           "frac_ge_0_8": st.frac_ge_08, "frac_ge_0_9": st.frac_ge_09,
           "all_below_one": st.all_below_one,
           "ratio_min_exact": min(st.ratios), "ratio_median_exact": st.median_exact,
           "ratio_mean_exact": st.mean_exact}
    if not args.summary:
        out["ratios"] = list(st.ratios)
    return out, EXIT_OK


def cmd_construct(args):
    cfg = search.anypg_construct(args.g)
    inv = rootcover.invariants_Y(cfg)
    return {"g": args.g, "n": cfg.n, "mu": list(cfg.mu), "pg": inv.pg}, EXIT_OK


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON output")
    fmt.add_argument("--csv", action="store_true", default=argparse.SUPPRESS, help="CSV output")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="no progress on stderr")

    p = argparse.ArgumentParser(prog="kollarsurf", parents=[common],
                                description="Exact invariants of Kollar surfaces and root covers of the plane.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dedekind", parents=[common], help="Dedekind sum s(a,b;n)")
    s.add_argument("a", type=int)
    s.add_argument("b", type=int)
    s.add_argument("n", type=int)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--direct", action="store_true")
    g.add_argument("--fast", action="store_true")
    s.set_defaults(func=cmd_dedekind)

    s = sub.add_parser("hj", parents=[common], help="continued fraction m/q")
    s.add_argument("m", type=int)
    s.add_argument("q", type=int)
    s.set_defaults(func=cmd_hj)

    s = sub.add_parser("kollar", parents=[common], help="invariants of X(a1,a2,a3,a4)")
    s.add_argument("a", type=int, nargs=4)
    s.add_argument("--identity", action="store_true")
    s.add_argument("--gamma", action="store_true")
    s.add_argument("--contraction", action="store_true")
    s.set_defaults(func=cmd_kollar)

    s = sub.add_parser("rootcover", parents=[common], help="invariants of the n-th root cover")
    s.add_argument("n", type=int)
    s.add_argument("mu", type=int, nargs=4)
    s.add_argument("--ledger", action="store_true")
    s.set_defaults(func=cmd_rootcover)

    s = sub.add_parser("classify", parents=[common], help="classes with given p_g")
    s.add_argument("--nmax", type=int, required=True)
    s.add_argument("--pg", type=int, required=True)
    s.add_argument("--nmin", type=int, default=2)
    s.add_argument("--out", help="stream rows to this CSV file")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("verify", parents=[common], help="run a verification campaign")
    s.add_argument("campaign", choices=sorted(VERIFY_DEFAULT_NMAX))
    s.add_argument("--nmax", type=int)
    s.add_argument("--part", type=int, choices=[1, 2, 3], help="bounds: single part")
    s.add_argument("--random", type=int, default=0, help="noether: extra random configs")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("sample-generic", parents=[common], help="K^2/e statistics at prime n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--summary", action="store_true", help="omit the per-sample ratios")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("construct-pg", parents=[common], help="a cover with p_g = G")
    s.add_argument("g", type=int)
    s.set_defaults(func=cmd_construct)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK
    quiet = getattr(args, "quiet", False)
    if not quiet and args.command in ("classify", "verify", "sample-generic"):
        print(f"running {args.command} ...", file=sys.stderr)
    try:
        result, code = args.func(args)
    except (ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (InvariantError, ArithmeticError) as e:
        print(f"consistency check failed: {e}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    if getattr(args, "json", False):
        print(to_json(result))
    elif getattr(args, "csv", False):
        print(to_csv(result), end="")
    else:
        print(to_text(result))
    if code and not quiet:
        print("counterexample found", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
