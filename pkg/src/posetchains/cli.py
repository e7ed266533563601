"""Command-line entry point.  Exit codes: 0 ok, 1 domain error, 2 usage error."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from itertools import combinations

from . import auxgraph as ag
from .bounds import bound_report, burcsi_nagy, equality_check, la_upper, theorem_main
from .chains import parse_host
from .embedding import e_estimate, embeds, la_chain_sequence, la_exact
from .errors import PosetError
from .gallery import ENTRIES, gallery, lambda_extension, list_entries, random_graded_poset, vee_extension
from .injection import construct_embedding, theorem_check
from .poset import (
    GradedPoset,
    components,
    dual,
    format_poset,
    height,
    is_graded,
    mirsky_levels,
    oplus,
    otimes,
    parse_poset,
    to_dot,
)

# Every warning the CLI can emit.
WARNINGS = {
    "not-graded": "poset is not graded; alpha and the improved bound are omitted",
    "disconnected": "poset is disconnected; analysis continues because --allow-disconnected was given",
    "not-stabilized": "e_n did not stabilize over the last two tested n",
    "sampled": "families were sampled, not enumerated",
    "threads-ignored": "computation is sequential; --threads has no effect on results",
}


class UsageError(Exception):
    pass


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load(path, allow_disconnected=False):
    text = _read(path)
    return parse_poset(text, allow_disconnected=allow_disconnected), text


def _digest(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def _emit(args, results, warnings=(), digests=None, t0=None):
    warnings = list(warnings)
    if getattr(args, "threads", None) is not None:
        warnings.append("threads-ignored")
    report = {
        "command": args.command,
        "inputs": digests or {},
        "results": results,
        "warnings": [{"code": w, "message": WARNINGS[w]} for w in warnings],
        "time_ms": round((time.perf_counter() - t0) * 1000, 3) if t0 else None,
    }
    _write(getattr(args, "json_out", None), json.dumps(report, indent=2, ensure_ascii=False) + "\n")


def _params(items):
    out = {}
    for item in items or []:
        key, eq, val = item.partition("=")
        if not eq:
            raise UsageError(f"bad --param {item!r}; expected key=value")
        try:
            out[key] = int(val)
        except ValueError:
            raise UsageError(f"--param {key} must be an integer") from None
    return out


def _k_range(text):
    lo, sep, hi = text.partition("..")
    try:
        return range(int(lo), int(hi) + 1) if sep else range(1, int(lo) + 1)
    except ValueError:
        raise UsageError(f"bad --k {text!r}") from None


# -- commands ----------------------------------------------------------------

def cmd_analyze(args, t0):
    p, text = _load(args.file, args.allow_disconnected)
    warnings = []
    comps = components(p)
    if len(comps) > 1:
        warnings.append("disconnected")
    graded, witness = is_graded(p)
    dec = mirsky_levels(p)
    h = height(p)
    res = {
        "name": p.name,
        "size": len(p),
        "height": h,
        "connected": len(comps) == 1,
        "graded": graded,
        "levels": [list(L) for L in dec.levels],
        "burcsi_nagy_c2": burcsi_nagy(len(p), h)[0],
    }
    if graded and len(comps) == 1:
        g = ag.build_aux_graph(p)
        a = ag.alpha_dp(g)
        res["triples"] = len(g)
        res["alpha"] = a.size
        res["witness"] = [g.vertices[i].name for i in a.witness]
        res["theorem4_c2"] = theorem_main(len(p), h, a.size)[0]
        if args.aux_dot:
            _write(args.aux_dot, ag.to_dot(g))
    else:
        if not graded:
            res["short_chain"] = witness
        warnings.append("not-graded" if not graded else "disconnected")
    res["bounds"] = bound_report(p).to_json()["entries"]
    if args.dot:
        _write(args.dot, to_dot(p))
    _emit(args, res, sorted(set(warnings)), {"file": _digest(text)}, t0)


def cmd_auxgraph(args, t0):
    p, text = _load(args.file)
    g = ag.build_aux_graph(p)
    a = ag.alpha_dp(g)
    rep = ag.report(g, a)
    rep["pair_evaluations"] = a.pair_evaluations
    if args.bruteforce:
        rep["alpha_bruteforce"] = ag.alpha_bruteforce(g, cap=args.cap_bruteforce).size
    if args.dot:
        _write(args.dot, ag.to_dot(g))
    _emit(args, rep, (), {"file": _digest(text)}, t0)


def cmd_bounds(args, t0):
    p, text = _load(args.pattern)
    rep = bound_report(p, _k_range(args.k))
    if args.format == "text":
        _write(args.json_out, rep.to_text())
        return
    out = rep.to_json()
    if args.n is not None:
        best = rep.entries[-1].value
        out["la_upper_at_n"] = {"n": args.n, "value": str(la_upper(best, args.n))}
    warnings = [] if rep.alpha is not None else ["not-graded"]
    _emit(args, out, warnings, {"pattern": _digest(text)}, t0)


def cmd_la_exact(args, t0):
    p, text = _load(args.pattern)
    host, chain = parse_host(args.host)
    res = la_exact(chain if chain is not None else host, p, cap=args.cap_host).to_json()
    if not args.witness:
        res.pop("witness")
    _emit(args, res, (), {"pattern": _digest(text)}, t0)


def cmd_la_sequence(args, t0):
    p, text = _load(args.pattern)
    seq = la_chain_sequence(p, args.n, args.k_max, cap=args.cap_host)
    res = {"values": [r.value for r in seq], "runs": [r.to_json() for r in seq]}
    _emit(args, res, (), {"pattern": _digest(text)}, t0)


def _independent_set(g, spec):
    if spec in (None, "auto"):
        return ag.alpha_dp(g).witness
    chosen = []
    for part in spec.split(";"):
        names = sorted(x.strip() for x in part.split(","))
        hit = [i for i, v in enumerate(g.vertices) if sorted(v.elems) == names]
        if not hit:
            raise UsageError(f"{part!r} is not a triple of this poset")
        chosen.append(hit[0])
    return chosen


def cmd_embed(args, t0):
    p, text = _load(args.pattern)
    if args.family is None:
        if args.host is None:
            raise UsageError("embed needs --family or --host")
        host, _ = parse_host(args.host)
        e = embeds(p, host)
        res = {"embeds": e is not None, "mapping": e.mapping if e else None}
        _emit(args, res, (), {"pattern": _digest(text)}, t0)
        return
    g = ag.build_aux_graph(p)
    chosen = _independent_set(g, args.independent_set)
    emb, plan = construct_embedding(p, chosen, args.family, args.n, fallback_search=args.fallback_search, graph=g)
    res = {"mapping": emb.mapping, "verified": emb.verified, "independent_set": [g.vertices[i].name for i in chosen],
           "plan": plan.to_json()}
    _emit(args, res, (), {"pattern": _digest(text)}, t0)


def cmd_verify_theorem(args, t0):
    if args.sample is not None and args.seed is None:
        raise UsageError("--sample needs --seed")
    p, text = _load(args.pattern)
    rep = theorem_check(p, args.n, sample=args.sample, seed=args.seed, cap=args.cap_families)
    warnings = ["sampled"] if rep.sampled else []
    _emit(args, rep.to_json(), warnings, {"pattern": _digest(text)}, t0)
    return 0 if rep.ok() else 1


def cmd_e_estimate(args, t0):
    p, text = _load(args.pattern)
    est = e_estimate(p, args.n_max, mode=args.mode)
    est["sequence"] = {str(k): v for k, v in est["sequence"].items()}
    warnings = [] if est["stabilized"] else ["not-stabilized"]
    _emit(args, est, warnings, {"pattern": _digest(text)}, t0)


def cmd_equality_check(args, t0):
    p, text = _load(args.pattern)
    out = equality_check(p, args.n_max)
    warnings = ["not-stabilized"] if out["outcome"] == "UNSTABLE" else []
    _emit(args, out, warnings, {"pattern": _digest(text)}, t0)


def cmd_gallery(args, t0):
    if args.list:
        lines = []
        for name in list_entries():
            e = ENTRIES[name]
            prm = ", ".join(f"{k}>={m} (default {d})" for k, (d, m) in e.params.items())
            lines.append(f"{name:<10}{prm}{'  # ' + e.note if e.note else ''}")
        _write(args.out, "\n".join(lines) + "\n")
        return
    if args.random:
        if args.seed is None:
            raise UsageError("--random needs --seed")
        p = random_graded_poset(args.seed, args.max_size, args.max_height).poset
    elif args.name:
        p = gallery(args.name, **_params(args.param))
    else:
        raise UsageError("gallery needs --list, --name or --random")
    _write(args.out, format_poset(p))


def cmd_extend(args, t0):
    p, _ = _load(args.input)
    gp = GradedPoset.of(p)
    op = lambda_extension if args.type == "lambda" else vee_extension
    if args.all:
        side = args.level - 2 if args.type == "lambda" else args.level
        if not 0 <= side < gp.height:
            raise UsageError(f"level {args.level} has no neighbouring level for this extension")
        chunks = []
        for pair in combinations(gp.levels[side], 2):
            q = op(gp, args.level, pair).poset
            chunks.append(format_poset(q, name=f"{p.name or 'P'}_{args.type}{args.level}_{'_'.join(pair)}"))
        _write(args.out, "\n".join(chunks))
        return
    if not args.exclude:
        raise UsageError("extend needs --exclude a,b or --all")
    pair = [x.strip() for x in args.exclude.split(",")]
    _write(args.out, format_poset(op(gp, args.level, pair).poset))


def cmd_compose(args, t0):
    left, _ = _load(args.left)
    if args.op == "dual":
        q = dual(left)
    else:
        if args.right is None:
            raise UsageError(f"--op {args.op} needs --right")
        right, _ = _load(args.right)
        q = oplus(left, right) if args.op == "oplus" else otimes(left, right)
    _write(args.out, format_poset(q))


# -- parser ------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="posetchains", description=__doc__)
    ap.add_argument("--threads", type=int, default=None, help="accepted for compatibility; runs are sequential")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json-out", default=None, help="write the JSON report here (default stdout)")
        sp.add_argument("--threads", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        return sp

    sp = add("analyze", cmd_analyze, "size, height, levels, gradedness, alpha and bounds")
    sp.add_argument("file")
    sp.add_argument("--dot", help="write the Hasse diagram as DOT")
    sp.add_argument("--aux-dot", help="write the triple graph as DOT")
    sp.add_argument("--allow-disconnected", action="store_true")

    sp = add("auxgraph", cmd_auxgraph, "triple graph, alpha and witness")
    sp.add_argument("file")
    sp.add_argument("--dot")
    sp.add_argument("--bruteforce", action="store_true", help="also run the exact MIS oracle")
    sp.add_argument("--cap-bruteforce", type=int, default=ag.DEFAULT_BRUTE_CAP)

    sp = add("bounds", cmd_bounds, "all closed-form bounds")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--k", default="1..6", help="k range, e.g. 1..6 or 4")
    sp.add_argument("--n", type=int, help="also report the numeric La(n, P) upper bound")
    sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = add("la-exact", cmd_la_exact, "exact La over a small host")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--host", required=True, help="chain:k=2,n=10 | boolean:n=4 | window:n=5,i=1,m=3")
    sp.add_argument("--cap-host", "--cap", type=int, default=26)
    sp.add_argument("--witness", action="store_true")

    sp = add("la-sequence", cmd_la_sequence, "La over C_1 .. C_kmax inside B_n")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k-max", type=int, required=True)
    sp.add_argument("--cap-host", type=int, default=26)

    sp = add("embed", cmd_embed, "constructive injection into a double-chain family, or search into a host")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--family", help="comma-separated l<i>/r<i> names")
    sp.add_argument("--n", type=int, help="double chain C_2(n) containing the family")
    sp.add_argument("--host", help="host spec for plain embedding search")
    sp.add_argument("--independent-set", default="auto", help="auto, or triples 'a,b,c;d,e,f'")
    sp.add_argument("--fallback-search", action="store_true")

    sp = add("verify-theorem", cmd_verify_theorem, "check every family at the threshold size")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--sample", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--cap-families", type=int, default=300_000)

    sp = add("e-estimate", cmd_e_estimate, "e_n over level windows of B_n")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--n-max", type=int, default=6)
    sp.add_argument("--mode", choices=("every", "exists"), default="every")

    sp = add("equality-check", cmd_equality_check, "compare e_n with (|P|+h-alpha-2)/2")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--n-max", type=int, default=6)

    sp = add("gallery", cmd_gallery, "built-in posets")
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--name")
    sp.add_argument("--param", action="append", help="key=value, repeatable")
    sp.add_argument("--random", action="store_true", help="random graded poset (needs --seed)")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--max-size", type=int, default=12)
    sp.add_argument("--max-height", type=int, default=4)
    sp.add_argument("--out", default="-")

    sp = add("extend", cmd_extend, "Λ- or V-extension")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--type", choices=("lambda", "vee"), required=True)
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--exclude", help="two elements, comma-separated")
    sp.add_argument("--all", action="store_true", help="emit every choice of excluded pair")
    sp.add_argument("--out", default="-")

    sp = add("compose", cmd_compose, "linear sum, gluing or dual")
    sp.add_argument("--op", choices=("oplus", "otimes", "dual"), required=True)
    sp.add_argument("--left", required=True)
    sp.add_argument("--right")
    sp.add_argument("--out", default="-")
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    try:
        rc = args.fn(args, t0)
    except UsageError as exc:
        ap.error(str(exc))
    except (PosetError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
