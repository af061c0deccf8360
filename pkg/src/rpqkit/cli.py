"""Command-line entry point: ``rpqkit <command> ...``."""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys

from .bench import BenchSession, bench_delay, layered_graph
from .colorcoding import ColorCodingParams
from .engine import SEMANTICS, enumerate_answers, evaluate, plan
from .gadgets import KINDS, build_gadget
from .graph import Graph, Path, PointedGraph, format_path
from .lang import QuerySyntaxError, UnsupportedConstructError, parse
from .nfa import is_finite_language
from .oracle import OracleConfig, OracleSizeError, oracle_enumerate
from .solvers import DEFAULT_BUDGET
from .ste import classify


class UsageError(Exception):
    pass


def _path_record(p: Path) -> dict:
    return {"length": len(p), "nodes": [str(v) for v in p.nodes], "labels": [str(a) for a in p.word]}


def _path_line(p: Path) -> str:
    return f"{len(p)}\t{format_path(p)}"


def _load_instance(args) -> PointedGraph:
    try:
        g = Graph.read_tsv(args.graph, undirected=args.undirected)
    except OSError as exc:
        raise UsageError(f"cannot read graph: {exc}") from exc
    except ValueError as exc:
        raise UsageError(f"{args.graph}: {exc}") from exc
    for v in (args.source, args.target):
        if v not in g:
            raise UsageError(f"node {v!r} is not in the graph")
    return PointedGraph(g, args.source, args.target)


def _query(text: str):
    try:
        return parse(text)
    except QuerySyntaxError as exc:
        raise UsageError(f"bad expression {text!r}: {exc}") from exc


def _seed(args) -> int:
    env = os.environ.get("RPQ_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise UsageError(f"RPQ_SEED must be an integer, got {env!r}") from exc
    return args.seed


def _emit(out, args, record: dict, text: str) -> None:
    if args.json:
        print(json.dumps(record, sort_keys=True), file=out)
    else:
        print(text, file=out)


# ---- commands --------------------------------------------------------------


def _classify_one(expr: str, args, out) -> bool:
    try:
        report = classify(parse(expr), budget=args.budget)
    except UnsupportedConstructError as exc:
        report = {"expression": expr, "ste": False, "reason": str(exc)}
    except QuerySyntaxError as exc:
        raise UsageError(f"bad expression {expr!r}: {exc}") from exc
    if args.json:
        print(json.dumps(report, sort_keys=True), file=out)
    else:
        print(f"expression: {report['expression']}", file=out)
        if report["ste"]:
            print("STE: yes", file=out)
            print(f"k1: {report['k1']}  k2: {report['k2']}  k_r: {report['k_r']}", file=out)
            left, right = report["cut_borders"]
            print(f"cut borders: ({left}, {right})  bordered value: {report['bordered_value']}", file=out)
            conflicts = ", ".join(f"{side}:{pos}" for side, pos in report["conflict_positions"])
            print(f"conflict positions: {conflicts or 'none'}", file=out)
        else:
            print(f"STE: no ({report['reason']})", file=out)
        if "downward_closed" in report:
            print(f"downward closed: {report['downward_closed']}", file=out)
        for sem in ("simple", "trail"):
            if sem in report:
                print(f"{sem}: {report[sem]}", file=out)
    return report["ste"]


def _query_lines(path: str) -> list:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [line.strip() for line in fh]
    except OSError as exc:
        raise UsageError(f"cannot read queries: {exc}") from exc
    return [line for line in lines if line and not line.startswith("#")]


def cmd_classify(args, out) -> int:
    if (args.expr is None) == (args.file is None):
        raise UsageError("give exactly one of an expression or --file")
    queries = [args.expr] if args.file is None else _query_lines(args.file)
    all_ste = True
    for i, expr in enumerate(queries):
        if i and not args.json:
            print(file=out)
        all_ste &= _classify_one(expr, args, out)
    return 1 if args.strict and not all_ste else 0


def _solver_opts(args) -> dict:
    if args.method == "color":
        params = ColorCodingParams(seed=_seed(args), failure_bound=args.delta)
        return {"bounded": "color", "params": params}
    return {}


def cmd_eval(args, out) -> int:
    pg = _load_instance(args)
    query = _query(args.expr)
    route = plan(query, args.semantics, args.budget, args.conflict_budget)
    found = evaluate(pg, query, args.semantics, args.budget, args.conflict_budget, **_solver_opts(args))
    record = {"answer": found is not None, "route": route, "semantics": args.semantics}
    if found is not None:
        record["path"] = _path_record(found)
    text = "no" if found is None else f"yes\t{_path_line(found)}"
    _emit(out, args, record, text)
    return 1 if args.strict and found is None else 0


def cmd_enum(args, out) -> int:
    pg = _load_instance(args)
    query = _query(args.expr)
    if args.limit is not None and args.limit < 0:
        raise UsageError("--limit must be nonnegative")
    if (
        args.semantics == "arbitrary"
        and args.limit is None
        and args.max_length is None
        and not is_finite_language(query)
    ):
        raise UsageError("arbitrary semantics on an infinite language needs --limit or --max-length")
    order = None if args.order == "default" else args.order
    stream = enumerate_answers(
        pg, query, args.semantics, order, args.max_length, args.budget, args.conflict_budget,
        **_solver_opts(args),
    )
    count = 0
    for p in itertools.islice(stream, args.limit):
        _emit(out, args, _path_record(p), _path_line(p))
        count += 1
    return 1 if args.strict and count == 0 else 0


def cmd_oracle(args, out) -> int:
    pg = _load_instance(args)
    query = _query(args.expr)
    cfg = OracleConfig(query, args.semantics, args.max_length, override_guard=args.force)
    try:
        answers = sorted(oracle_enumerate(pg, cfg))
    except OracleSizeError as exc:
        raise UsageError(f"{exc}; pass --force to run anyway") from exc
    for p in itertools.islice(answers, args.limit):
        _emit(out, args, _path_record(p), _path_line(p))
    return 1 if args.strict and not answers else 0


def cmd_gen_gadget(args, out) -> int:
    try:
        g = Graph.read_tsv(args.graph, undirected=args.undirected)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read graph: {exc}") from exc
    try:
        inst = build_gadget(args.kind, g, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    meta = inst.metadata()
    meta_text = json.dumps(meta, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(inst.graph.to_tsv())
        with open(args.output + ".meta.json", "w", encoding="utf-8") as fh:
            fh.write(meta_text)
        if args.json:
            print(json.dumps(meta, sort_keys=True), file=out)
        else:
            print(f"wrote {args.output} ({meta['nodes']} nodes, {meta['edges']} edges)", file=out)
            print(f"wrote {args.output}.meta.json", file=out)
    else:
        out.write(inst.graph.to_tsv())
        sys.stderr.write(meta_text)
    return 0


def cmd_bench_delay(args, out) -> int:
    if args.graph is not None:
        if args.source is None or args.target is None:
            raise UsageError("a graph needs a source and a target")
        instances = [(args.graph, _load_instance(args))]
    else:
        instances = [(f"layered-{n}", layered_graph(n)) for n in args.layers]
    _query(args.expr)
    for name, pg in instances:
        session = BenchSession(pg, args.expr, args.semantics, None, args.limit)
        for run in range(args.runs):
            report = bench_delay(session)
            record = {"instance": name, "run": run, **report.summary()}
            text = (
                f"{name}\trun {run}\tcount {report.count}"
                f"\tfirst {report.first_output or 0.0:.6f}s"
                f"\tmax {report.max_delay:.6f}s\tmedian {report.median_delay:.6f}s"
            )
            _emit(out, args, record, text)
    return 0


# ---- parser ----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON records")
    common.add_argument("--strict", action="store_true", help="exit 1 on a 'no' result")

    instance = argparse.ArgumentParser(add_help=False)
    instance.add_argument("graph", help="graph file, one src<TAB>label<TAB>dst per line")
    instance.add_argument("source")
    instance.add_argument("target")
    instance.add_argument("--undirected", action="store_true", help="read every edge in both directions")

    tuning = argparse.ArgumentParser(add_help=False)
    tuning.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="largest bordered value routed to the STE solver")
    tuning.add_argument("--conflict-budget", type=int, default=2, help="largest conflict count routed to the trail STE solver")
    tuning.add_argument("--method", choices=("repfam", "color"), default="repfam", help="bounded-length subroutine")
    tuning.add_argument("--seed", type=int, default=0, help="color-coding seed (RPQ_SEED overrides)")
    tuning.add_argument("--delta", type=float, default=0.01, help="color-coding failure bound")

    parser = _Parser(prog="rpqkit", description="Regular path queries over edge-labeled graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="classify an expression")
    p.add_argument("expr", nargs="?")
    p.add_argument("--file", help="classify every non-empty line of this file")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("eval", parents=[common, instance, tuning], help="find one matching path")
    p.add_argument("--semantics", choices=SEMANTICS, default="simple")
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("enum", parents=[common, instance, tuning], help="enumerate matching paths")
    p.add_argument("--semantics", choices=SEMANTICS, default="simple")
    p.add_argument("--expr", required=True)
    p.add_argument("--order", choices=("default", "radix", "shortest", "arrival"), default="default")
    p.add_argument("--limit", type=int)
    p.add_argument("--max-length", type=int, help="length cap for arbitrary semantics")
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("oracle", parents=[common, instance], help="brute-force answer set")
    p.add_argument("--semantics", choices=SEMANTICS, default="simple")
    p.add_argument("--expr", required=True)
    p.add_argument("--max-length", type=int, default=10, help="length cap for arbitrary semantics")
    p.add_argument("--limit", type=int)
    p.add_argument("--force", action="store_true", help="skip the instance size guard")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen-gadget", parents=[common], help="clique-reduction instance generator")
    p.add_argument("graph", help="undirected input graph in the edge TSV format")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--undirected", action="store_true")
    p.add_argument("-o", "--output", help="instance TSV path; metadata goes to PATH.meta.json")
    p.set_defaults(func=cmd_gen_gadget)

    p = sub.add_parser("bench-delay", parents=[common], help="time inter-output delays")
    p.add_argument("graph", nargs="?")
    p.add_argument("source", nargs="?")
    p.add_argument("target", nargs="?")
    p.add_argument("--undirected", action="store_true")
    p.add_argument("--expr", default="(a+b)*")
    p.add_argument("--semantics", choices=SEMANTICS, default="simple")
    p.add_argument("--layers", type=int, nargs="+", default=[8, 12])
    p.add_argument("--limit", type=int, default=100)
    p.add_argument("--runs", type=int, default=5)
    p.set_defaults(func=cmd_bench_delay)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"rpqkit: error: {exc}", file=sys.stderr)
        return 2


def cli_main(argv=None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
