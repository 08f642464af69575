"""Command-line front end: ``twinv <subcommand> --family {B,D} --rank N ...``.

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on
usage, parse, cap or time-budget errors.  JSON reports carry the run
configuration and a format version and are byte-identical across runs.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from . import braid_rewrite as br
from . import hecke
from .signed_weyl import DEFAULT_CAP, CapExceeded, GroupType, format_word, parse_word
from .twisted import (
    all_involutions,
    count_reduced_iexprs,
    enumerate_reduced_iexprs,
    eval_iexpr,
    is_reduced_iexpr,
    rho,
)

FORMAT_VERSION = 1
MAX_RANK = 12
VERIFY_TARGETS = ("connectivity", "preservation", "classification", "eta", "coset-reps")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=("B", "D"), required=True)
    common.add_argument("--rank", type=int, required=True)
    common.add_argument("--format", choices=("json", "dot", "text"), default=None)
    common.add_argument("--cap", type=int, default=None,
                        help=f"enumeration size cap (default {DEFAULT_CAP}, env TWINV_CAP)")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--quiet", action="store_true", help="no progress on stderr")

    rules = argparse.ArgumentParser(add_help=False)
    rules.add_argument("--disable", action="append", default=[], metavar="RULE_ID")

    p = argparse.ArgumentParser(prog="twinv", description="Twisted involutions in Weyl groups of type B and D.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("involutions", parents=[common], help="list involutions with length and rho")
    q.add_argument("--count-iexprs", action="store_true", help="add the number of reduced I-expressions")

    q = sub.add_parser("iexprs", parents=[common], help="all reduced I-expressions of a word's involution")
    q.add_argument("--word", required=True)

    q = sub.add_parser("graph", parents=[common, rules], help="rewrite graph of a word's involution")
    q.add_argument("--word", required=True)

    q = sub.add_parser("verify", parents=[common, rules], help="run an exhaustive verifier")
    q.add_argument("target", choices=VERIFY_TARGETS)
    q.add_argument("--lemma", choices=sorted(br.LEMMAS), default=None,
                   help="classification table to check (default: all for the family)")
    q.add_argument("--jobs", type=int, default=1, help="worker threads")
    q.add_argument("--time-budget", type=float, default=None, metavar="SECONDS")
    return p


# -- helpers -----------------------------------------------------------------

def _group(args) -> GroupType:
    if not 1 <= args.rank <= MAX_RANK:
        raise UsageError(f"rank must be between 1 and {MAX_RANK}")
    try:
        return GroupType(args.family, args.rank)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _cap(args) -> int:
    cap = DEFAULT_CAP if args.cap is None else args.cap
    if cap < 1:
        raise UsageError("--cap must be positive")
    return cap


def _enabled(gt: GroupType, disabled: Sequence[str]) -> list[str]:
    known = br.rule_ids(gt)
    unknown = sorted(set(disabled) - set(known))
    if unknown:
        raise UsageError(f"unknown rule ids for {gt}: {', '.join(unknown)} (known: {', '.join(known)})")
    return [r for r in known if r not in set(disabled)]


def _word(gt: GroupType, text: str):
    try:
        return gt.check_word(parse_word(text))
    except ValueError as e:
        raise UsageError(str(e)) from None


def _config(args, gt: GroupType) -> dict:
    cfg = {
        "subcommand": args.command,
        "family": gt.family,
        "rank": gt.rank,
        "format": args.format,
        "cap": _cap(args),
        "out": args.out,
    }
    if args.command == "verify":
        cfg["target"] = args.target
        cfg["lemma"] = args.lemma
    if hasattr(args, "disable"):
        cfg["disabled_rules"] = sorted(set(args.disable))
        cfg["enabled_rules"] = _enabled(gt, args.disable)
    if hasattr(args, "word"):
        cfg["word"] = args.word
    if getattr(args, "count_iexprs", False):
        cfg["count_iexprs"] = True
    return cfg


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _report(cfg: dict, result: dict, passed: bool | None = None) -> dict:
    rep = {"format_version": FORMAT_VERSION, "config": cfg}
    if passed is not None:
        rep["passed"] = passed
    rep["result"] = result
    return rep


def _dump(rep: dict) -> str:
    return json.dumps(rep, indent=2, ensure_ascii=False) + "\n"


# -- subcommands --------------------------------------------------------------

def cmd_involutions(args, gt: GroupType):
    cap = _cap(args)
    records = []
    for w in all_involutions(gt, cap):
        rec = {"element": str(w), "length": gt.length(w), "rho": rho(gt, w)}
        if args.count_iexprs:
            rec["iexpr_count"] = count_reduced_iexprs(gt, w)
        records.append(rec)
    result = {"count": len(records), "involutions": records}
    if args.format == "text":
        lines = [f"# {gt}: {len(records)} involutions"]
        for r in records:
            extra = f"  {r['iexpr_count']}" if "iexpr_count" in r else ""
            lines.append(f"{r['element']}  l={r['length']}  rho={r['rho']}{extra}")
        return "\n".join(lines) + "\n", EXIT_OK
    return _dump(_report(_config(args, gt), result)), EXIT_OK


def cmd_iexprs(args, gt: GroupType):
    word = _word(gt, args.word)
    w = eval_iexpr(gt, word)
    reduced = is_reduced_iexpr(gt, word)
    exprs = enumerate_reduced_iexprs(gt, w, _cap(args))
    result = {
        "word": format_word(word),
        "input_reduced": reduced,
        "involution": str(w),
        "length": gt.length(w),
        "rho": rho(gt, w),
        "count": len(exprs),
        "expressions": [format_word(e) for e in exprs],
    }
    if args.format == "text":
        head = f"{result['involution']}  rho={result['rho']}  l={result['length']}"
        if not reduced:
            head += f"  (input {result['word']!r} is not reduced)"
        return "\n".join([head] + [e or "(empty)" for e in result["expressions"]]) + "\n", EXIT_OK
    return _dump(_report(_config(args, gt), result)), EXIT_OK


def cmd_graph(args, gt: GroupType):
    word = _word(gt, args.word)
    enabled = _enabled(gt, args.disable)
    w = eval_iexpr(gt, word)
    g = br.rewrite_graph(gt, w, enabled, _cap(args))
    if args.format in (None, "dot"):
        return g.to_dot(), EXIT_OK
    edges = sorted(((format_word(a), format_word(b), s.label) for (a, b), s in g.edges.items()))
    result = {
        "involution": str(w),
        "rho": rho(gt, w),
        "nodes": [format_word(v) for v in g.nodes],
        "edges": [{"a": a, "b": b, "move": m} for a, b, m in edges],
        "components": [[format_word(v) for v in c] for c in g.components()],
        "violations": g.violations,
    }
    if args.format == "text":
        lines = [f"{result['involution']}: {len(result['nodes'])} nodes, "
                 f"{len(result['edges'])} edges, {len(result['components'])} components"]
        lines += [f"{e['a']} -- {e['b']}  [{e['move']}]" for e in result["edges"]]
        return "\n".join(lines) + "\n", EXIT_OK
    return _dump(_report(_config(args, gt), result)), EXIT_OK


def _verify_eta(gt: GroupType) -> tuple[dict, bool]:
    res = hecke.verify_eta(gt)
    res["module_relation_violations"] = hecke.check_module_relations(gt)
    res["hecke_relation_violations"] = hecke.check_hecke_relations(gt)
    ok = (res["well_defined"] and res["homomorphism"] and res["rank_full"] and res["eta_a1_is_x_empty"]
          and not res["module_relation_violations"] and not res["hecke_relation_violations"])
    return res, ok


def cmd_verify(args, gt: GroupType):
    cap = _cap(args)
    progress = not args.quiet
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    deadline = None if args.time_budget is None else time.monotonic() + args.time_budget
    target = args.target
    if target != "connectivity" and args.disable:
        raise UsageError("--disable only applies to connectivity and graph")
    if target != "classification" and args.lemma:
        raise UsageError("--lemma only applies to classification")

    if target == "connectivity":
        res = br.verify_connectivity(gt, _enabled(gt, args.disable), cap, args.jobs, progress, deadline)
        ok = res["passed"]
    elif target == "preservation":
        res = br.verify_preservation(gt, cap, args.jobs, progress, deadline)
        ok = res["passed"]
    elif target == "classification":
        ids = [args.lemma] if args.lemma else [k for k in sorted(br.LEMMAS) if br.LEMMAS[k]["family"] == gt.family]
        runs = []
        for lid in ids:
            if br.LEMMAS[lid]["family"] != gt.family:
                raise UsageError(f"table {lid} is for type {br.LEMMAS[lid]['family']}")
            if progress:
                print(f"classification {lid} on {gt}", file=sys.stderr, flush=True)
            runs.append(br.verify_classification(lid, gt, cap))
            if deadline is not None and time.monotonic() > deadline:
                raise br.TimeBudgetExceeded("time budget exhausted")
        res = {"tables": runs}
        ok = all(r["passed"] for r in runs)
    elif target == "eta":
        if gt.order() > cap:
            raise CapExceeded(f"|W({gt})| = {gt.order()} exceeds cap {cap}")
        res, ok = _verify_eta(gt)
    else:
        if gt.family != "D":
            raise UsageError("coset-reps is defined for type D only")
        res = hecke.verify_coset_reps(gt.rank)
        ok = res["passed"]

    if args.format == "text":
        return f"verify {target} {gt}: {'PASS' if ok else 'FAIL'}\n", (EXIT_OK if ok else EXIT_FAIL)
    return _dump(_report(_config(args, gt), res, ok)), (EXIT_OK if ok else EXIT_FAIL)


COMMANDS = {
    "involutions": cmd_involutions,
    "iexprs": cmd_iexprs,
    "graph": cmd_graph,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        if args.format == "dot" and args.command != "graph":
            raise UsageError("--format dot is only available for graph")
        gt = _group(args)
        text, code = COMMANDS[args.command](args, gt)
    except (UsageError, ValueError, CapExceeded, br.TimeBudgetExceeded) as e:
        print(f"twinv: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
