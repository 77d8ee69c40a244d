"""Command-line front end: ``histree {generate,build,verify,structure,oracle}``.

Every invocation prints a run report (``--report text`` or ``json``). Exit
codes: 0 success / true, 1 negative verdict, 2 usage or input error,
3 internal bug.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path
from typing import Optional

from .certificates import (
    config_from_record,
    degree2_independent,
    find_bad_path,
    format_json,
    format_text,
    has_three_consecutive_deg2,
    structure_record,
    tree_record,
    verdict_record,
    verify_structure,
    verify_w_configuration,
)
from .errors import GraphError, InternalBugError, NoStarCoverError, PreconditionError
from .generators import FAMILIES, GenSpec, generate
from .graph_core import Graph, Tree
from .graph_io import format_edge_list, parse_edge_list, read_graph_file, to_graph6
from .oracle import (
    EnumerationBudget,
    all_trees_satisfy,
    count_spanning_trees,
    exists_tree_satisfying,
    for_each_spanning_tree,
    sample_trees_satisfy,
)
from .reduction_engine import find_structure
from .structure_search import StarCover, find_star_cover
from .tree_synthesis import build_good_tree_with_trace, build_tree_no_adjacent_deg2, grow_star_tree

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUG = 0, 1, 2, 3
ENV_BUDGET_TREES = "HISTREE_BUDGET_TREES"
ENV_BUDGET_SECONDS = "HISTREE_BUDGET_SECONDS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fingerprint(g: Graph) -> dict:
    return {"n": g.n, "m": g.m, "sha256": hashlib.sha256(to_graph6(g).encode()).hexdigest()}


def _load(path: str, fmt: Optional[str]):
    return read_graph_file(path, fmt)


def _budget(args) -> EnumerationBudget:
    trees = args.budget_trees
    secs = args.budget_seconds
    if trees is None and os.environ.get(ENV_BUDGET_TREES):
        trees = int(os.environ[ENV_BUDGET_TREES])
    if secs is None and os.environ.get(ENV_BUDGET_SECONDS):
        secs = float(os.environ[ENV_BUDGET_SECONDS])
    return EnumerationBudget(trees, secs)


def _write_tree(path: Optional[str], g: Graph, t: Tree) -> None:
    if path:
        Path(path).write_text(format_edge_list(g, t.edges))


# ---------------------------------------------------------------------------
# commands; each returns (report fields, exit code)
# ---------------------------------------------------------------------------

def _parse_configs(text: str):
    out = []
    for item in text.split(","):
        parts = item.strip().split(":")
        if parts[0] not in ("wa", "wab") or len(parts) != (2 if parts[0] == "wa" else 3):
            raise UsageError(f"bad config {item!r}; use wa:A or wab:A:B")
        out.append((parts[0], *map(int, parts[1:])))
    return out


def cmd_generate(args):
    params = {k: getattr(args, k) for k in ("k", "d", "m", "n", "a", "b", "extra", "name")
              if getattr(args, k) is not None}
    if args.configs:
        params["configs"] = _parse_configs(args.configs)
    gen = generate(GenSpec(args.family, params, args.seed))
    g = gen.graph
    fmt = args.format or ("g6" if args.out and args.out.endswith((".g6", ".graph6")) else "el")
    stars = gen.cover.stars if gen.cover else None
    if fmt == "g6":
        text = to_graph6(g) + "\n"
    else:
        text = format_edge_list(g, stars=stars, centres=gen.centres)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    shown = {k: (v if not isinstance(v, list) else [list(x) for x in v]) for k, v in params.items()}
    result = {"family": args.family, "params": shown, "seed": args.seed, "format": fmt,
              "out": args.out, "graph6": to_graph6(g)}
    return {"input": fingerprint(g), "result": result, "verdicts": {}}, EXIT_OK


def cmd_build(args):
    data = _load(args.input, args.format)
    g = data.graph
    rep = {"input": fingerprint(g), "verdicts": {}}
    if args.mode == "good-tree":
        t, trace = build_good_tree_with_trace(g)
        ok = find_bad_path(g, t) is None
        rep["result"] = {"tree": tree_record(t), "trace": trace}
        rep["verdicts"]["G-good"] = ok
    else:
        try:
            if args.mode == "no-adjacent-deg2":
                t = build_tree_no_adjacent_deg2(g)
            else:
                cover = _cover(g, data, args.cover)
                t = grow_star_tree(g, cover)
        except NoStarCoverError as exc:
            rep["result"] = {"error": str(exc)}
            rep["status"] = "no star cover found"
            return rep, EXIT_NEGATIVE
        ok = bool(degree2_independent(t))
        rep["result"] = {"tree": tree_record(t)}
        rep["verdicts"]["degree-2 independent"] = ok
    _write_tree(args.tree_out, g, t)
    return rep, EXIT_OK if ok else EXIT_BUG


def _cover(g, data, how) -> StarCover:
    if how == "embedded":
        if not data.stars:
            raise PreconditionError("input carries no '# star:' lines; use --cover search")
        return StarCover(tuple((c, frozenset(ls)) for c, ls in data.stars))
    search = find_star_cover(g, 6)
    if search.cover is None:
        raise NoStarCoverError(f"no star cover found ({search.status})")
    return search.cover


def cmd_verify(args):
    data = _load(args.input, args.format)
    g = data.graph
    rep = {"input": fingerprint(g), "verdicts": {}}
    cert_text = Path(args.certificate).read_text()
    if args.check == "w-config":
        try:
            cfg = config_from_record(json.loads(cert_text))
        except (ValueError, KeyError, TypeError) as exc:
            raise GraphError(f"malformed configuration file: {exc}") from None
        v = verify_w_configuration(g, cfg)
        rep["verdicts"]["w-config"] = verdict_record(v)
        return rep, EXIT_OK if v else EXIT_NEGATIVE
    tdata = parse_edge_list(cert_text, g.n)
    t = Tree(g, tdata.graph.edges)
    if not t.is_spanning:
        raise GraphError("tree file does not span the graph")
    rep["result"] = {"tree": tree_record(t)}
    if args.check == "good":
        w = find_bad_path(g, t)
        rep["verdicts"]["G-good"] = {"ok": w is None,
                                     "witness": None if w is None else list(w.vertices)}
        return rep, EXIT_OK if w is None else EXIT_NEGATIVE
    if args.check == "deg2-independent":
        v = degree2_independent(t)
        rep["verdicts"]["degree-2 independent"] = verdict_record(v)
        return rep, EXIT_OK if v else EXIT_NEGATIVE
    ok = not has_three_consecutive_deg2(t)
    rep["verdicts"]["no three consecutive degree-2"] = ok
    return rep, EXIT_OK if ok else EXIT_NEGATIVE


def _s_set(spec: str, g: Graph, data) -> set[int]:
    spec = spec.strip()
    if spec in ("auto", "auto+centres"):
        s = {v for v in range(g.n) if g.degree(v) >= 4}
        if spec == "auto+centres":
            s |= set(data.centres)
        return s
    try:
        s = {int(x) for x in spec.replace(",", " ").split()}
    except ValueError:
        raise UsageError(f"bad --s value {spec!r}") from None
    return s | {v for v in range(g.n) if g.degree(v) >= 4}


def cmd_structure(args):
    data = _load(args.input, args.format)
    g = data.graph
    s = _s_set(args.s, g, data)
    r = find_structure(g, s)
    v = verify_structure(g, s, r)
    rep = {"input": fingerprint(g), "result": {"S": sorted(s), "structure": structure_record(r)},
           "verdicts": {"structure": verdict_record(v)}}
    return rep, EXIT_OK if v else EXIT_BUG


def cmd_oracle(args):
    data = _load(args.input, args.format)
    g = data.graph
    rep = {"input": fingerprint(g), "verdicts": {}}
    budget = _budget(args)
    if args.count:
        res = for_each_spanning_tree(g, None, budget)
        kirchhoff = count_spanning_trees(g)
        rep["result"] = {"enumerated": res.count, "status": res.status, "kirchhoff": kirchhoff}
        agree = res.completed and res.count == kirchhoff
        rep["verdicts"]["counts agree"] = agree if res.completed else "unknown"
        return rep, EXIT_OK if agree else EXIT_NEGATIVE
    if args.sample:
        sv = sample_trees_satisfy(g, args.sample, args.samples, args.seed or 0)
        rep["result"] = {"quantifier": "sample", "predicate": args.sample, "samples": sv.samples,
                         "verdict": sv.verdict,
                         "counterexample": None if sv.counterexample is None
                         else [list(e) for e in sv.counterexample]}
        rep["verdicts"][args.sample] = sv.verdict
        return rep, EXIT_OK if sv.verdict == "no-counterexample" else EXIT_NEGATIVE
    quant, pred = ("all", args.all) if args.all else ("exists", args.exists)
    fn = all_trees_satisfy if quant == "all" else exists_tree_satisfying
    qv = fn(g, pred, budget)
    rep["result"] = {"quantifier": quant, "predicate": pred, "verdict": qv.verdict,
                     "count": qv.count, "status": qv.status, "truncated": qv.status == "truncated",
                     "witness": None if qv.witness is None else [list(e) for e in qv.witness]}
    rep["verdicts"][pred] = qv.verdict
    return rep, EXIT_OK if qv.verdict == "true" else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("g6", "el"), default=None,
                        help="graph file format (default: from the file extension)")
    common.add_argument("--report", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--budget-trees", type=int, default=None)
    common.add_argument("--budget-seconds", type=float, default=None)

    p = _Parser(prog="histree", description="Spanning trees with few degree-2 vertices: "
                "generate graphs, build and verify trees, run the brute-force oracle.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", parents=[common], help="write a named graph family")
    g.add_argument("family", choices=FAMILIES)
    for name in ("k", "d", "m", "n", "a", "b", "extra"):
        g.add_argument(f"--{name}", type=int, default=None)
    g.add_argument("--name", default=None, help="fixture name for case-fixture")
    g.add_argument("--configs", default=None, help="w-tree leaves, e.g. wa:1,wa:2,wab:1:2")
    g.add_argument("--out", "-o", default=None)
    g.set_defaults(func=cmd_generate)

    b = sub.add_parser("build", parents=[common], help="construct a spanning tree")
    b.add_argument("input")
    b.add_argument("--mode", choices=("good-tree", "no-adjacent-deg2", "star-grow"),
                   default="good-tree")
    b.add_argument("--cover", choices=("embedded", "search"), default="embedded")
    b.add_argument("--tree-out", default=None)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", parents=[common], help="check a certificate")
    v.add_argument("input")
    v.add_argument("certificate", help="tree edge list, or JSON configuration for w-config")
    v.add_argument("--check", required=True,
                   choices=("good", "deg2-independent", "no-three-consecutive-deg2", "w-config"))
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("structure", parents=[common], help="find a (C), (P) or (W) structure")
    s.add_argument("input")
    s.add_argument("--s", default="auto", help="auto, auto+centres, or extra vertex ids")
    s.set_defaults(func=cmd_structure)

    o = sub.add_parser("oracle", parents=[common], help="brute force over spanning trees")
    o.add_argument("input")
    q = o.add_mutually_exclusive_group(required=True)
    q.add_argument("--all", metavar="PRED")
    q.add_argument("--exists", metavar="PRED")
    q.add_argument("--count", action="store_true")
    q.add_argument("--sample", metavar="PRED")
    o.add_argument("--samples", type=int, default=1000)
    o.set_defaults(func=cmd_oracle)
    return p


def _emit(report: dict, fmt: str, stream) -> None:
    stream.write(format_json(report) + "\n" if fmt == "json" else format_text(report))


def main(argv: Optional[list] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    fmt = "json" if "json" in argv and "--report" in argv else "text"
    report: dict = {"command": argv}
    start = time.perf_counter()
    try:
        args = parser.parse_args(argv)
        fmt = args.report
        fields, code = args.func(args)
        report.update(fields)
        report.setdefault("status", {EXIT_OK: "ok", EXIT_NEGATIVE: "negative",
                                     EXIT_BUG: "internal-bug"}[code])
    except UsageError as exc:
        report.update(status="usage-error", error=str(exc))
        code = EXIT_USAGE
    except (GraphError, PreconditionError, OSError) as exc:
        report.update(status="input-error", error=str(exc))
        code = EXIT_USAGE
    except NoStarCoverError as exc:
        report.update(status="no star cover found", error=str(exc))
        code = EXIT_NEGATIVE
    except InternalBugError as exc:
        report.update(status="internal-bug", error=str(exc), trace=list(exc.trace))
        code = EXIT_BUG
    report["exit_code"] = code
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    to_stderr = code == EXIT_USAGE or (report.get("command") and argv[:1] == ["generate"]
                                       and "--out" not in argv and "-o" not in argv)
    _emit(report, fmt, sys.stderr if to_stderr else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
