"""Command-line interface: ``ism <subcommand> ...``.

Exit status: 0 on success, 1 on usage or input errors, 2 when a computation
fails. Data goes to stdout (or ``--output``); messages go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import FIXTURES, load_fixture
from .analysis import (
    ALL_METRICS,
    DEFAULT_GRID,
    records_csv,
    correlation_csv,
    correlation_json,
    correlation_table,
    parse_grid,
    rank,
    sweep,
)
from .classic import STRUCTURAL_METRICS, betweenness_centrality, closeness_centrality, degree_centrality
from .generators import GeneratorSpec, generate
from .graph import EdgeListError, read_edge_list, serialize_edge_list
from .metrics import in_centrality, ism_betweenness, out_centrality
from .reference import WalkLimitExceeded, enumerate_walks, spread_probability_reference
from .spread import SpreadConfig, influence_matrix

WALK_CAP = 10**6
ROW_FIELDS = ("node", "metric", "edge_prob", "l_max", "value", "rank", "status")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _probability(text: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError(f"probability {p} outside [0, 1]")
    return p


def _nonneg_int(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if k < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return k


def _metric_list(text: str) -> tuple[str, ...]:
    items = tuple(m.strip() for m in text.split(",") if m.strip())
    bad = [m for m in items if m not in ALL_METRICS]
    if bad or not items:
        raise argparse.ArgumentTypeError(
            f"unknown metric(s) {', '.join(bad) or '(none)'}; choose from {', '.join(ALL_METRICS)}")
    return items


def _grid(text: str):
    try:
        return parse_grid(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_source(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--fixture", choices=FIXTURES, help="bundled network")
    src.add_argument("--graph", metavar="PATH", help="edge-list file")
    src.add_argument("--generator", metavar="SPEC",
                     help="random network, e.g. ER:n=1000,p=0.01 | WS:n=1000,k=10,p=0.5 | BA:n=1000,m=5")
    p.add_argument("--directed", action="store_true", help="read --graph edges as directed")
    p.add_argument("--default-prob", type=_probability, default=1.0,
                   help="probability of edges listed without one (default 1.0)")
    p.add_argument("--seed", type=int, default=1729, help="generator seed (default 1729)")


def _add_output(p: argparse.ArgumentParser, formats=("csv", "json")):
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--output", "-o", metavar="PATH", help="write data here instead of stdout")
    p.add_argument("--backend", choices=("cython", "python"), help="force a kernel implementation")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ism", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write a random network as an edge list")
    p.add_argument("--generator", metavar="SPEC", required=True,
                   help="ER:n=..,p=.. | WS:n=..,k=..,p=.. | BA:n=..,m=..")
    p.add_argument("--seed", type=int, default=1729)
    p.add_argument("--output", "-o", metavar="PATH")

    p = sub.add_parser("matrix", help="influence matrix")
    _add_source(p)
    p.add_argument("--edge-prob", type=_probability, help="uniform edge probability override")
    p.add_argument("--lmax", type=_nonneg_int, default=20)
    _add_output(p)

    p = sub.add_parser("centrality", help="centralities at one edge probability")
    _add_source(p)
    p.add_argument("--edge-prob", type=_probability, help="uniform edge probability override")
    p.add_argument("--lmax", type=_nonneg_int, default=20)
    p.add_argument("--metrics", type=_metric_list, default=("out", "in"),
                   help=f"comma list from {','.join(ALL_METRICS)} (default out,in)")
    _add_output(p)

    p = sub.add_parser("sweep", help="centralities over an edge-probability grid")
    _add_source(p)
    p.add_argument("--grid", type=_grid, default=DEFAULT_GRID,
                   help="start:stop:step and/or comma list (default 0.01,0.1:1.0:0.1)")
    p.add_argument("--lmax", type=_nonneg_int, default=20)
    p.add_argument("--metrics", type=_metric_list, default=ALL_METRICS)
    _add_output(p)

    p = sub.add_parser("compare", help="Pearson correlation of two metrics over a grid")
    _add_source(p)
    p.add_argument("--grid", type=_grid, default=parse_grid("0.1:0.9:0.1"))
    p.add_argument("--lmax", type=_nonneg_int, default=20)
    p.add_argument("--a", required=True, choices=ALL_METRICS, dest="metric_a")
    p.add_argument("--b", required=True, choices=ALL_METRICS, dest="metric_b")
    _add_output(p)

    p = sub.add_parser("walks", help="list every walk from source to target")
    _add_source(p)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--edge-prob", type=_probability, help="uniform edge probability override")
    p.add_argument("--lmax", type=_nonneg_int, default=20)
    p.add_argument("--cap", type=int, default=WALK_CAP, help=f"refuse beyond this many walks (default {WALK_CAP})")
    _add_output(p)
    return parser


def _load_graph(args):
    if args.fixture:
        return load_fixture(args.fixture), args.fixture
    if args.graph:
        try:
            g = read_edge_list(args.graph, undirected=not args.directed,
                               default_probability=args.default_prob)
        except OSError as exc:
            raise UsageError(f"cannot read {args.graph}: {exc.strerror or exc}") from None
        except EdgeListError as exc:
            raise UsageError(f"{args.graph}: {exc}") from None
        return g, args.graph
    try:
        spec = GeneratorSpec.parse(args.generator, seed=args.seed)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad generator spec: {exc}") from None
    return generate(spec), args.generator


def _emit(args, text: str):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_generate(args):
    try:
        spec = GeneratorSpec.parse(args.generator, seed=args.seed)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad generator spec: {exc}") from None
    _emit(args, serialize_edge_list(generate(spec)))
    return 0


def _cmd_matrix(args):
    g, _ = _load_graph(args)
    m = influence_matrix(g, SpreadConfig(args.lmax, args.edge_prob), backend=args.backend)
    _emit(args, m.to_csv() if args.format == "csv" else m.to_json() + "\n")
    return 0


def _cmd_centrality(args):
    g, _ = _load_graph(args)
    cfg = SpreadConfig(args.lmax, args.edge_prob)
    records, failed = [], False
    matrix = None
    for metric in args.metrics:
        try:
            if metric in STRUCTURAL_METRICS:
                vec = {"degree": degree_centrality, "closeness": closeness_centrality,
                       "betweenness": betweenness_centrality}[metric](g)
            else:
                if matrix is None:
                    matrix = influence_matrix(g, cfg, backend=args.backend)
                if metric == "out":
                    vec = out_centrality(matrix)
                elif metric == "in":
                    vec = in_centrality(matrix)
                else:
                    vec = ism_betweenness(g, cfg, base=matrix, backend=args.backend)
        except (ValueError, ArithmeticError) as exc:
            failed = True
            print(f"ism: {metric}: {exc}", file=sys.stderr)
            records.append({"node": None, "metric": metric, "edge_prob": args.edge_prob,
                            "l_max": args.lmax, "value": None, "rank": None, "status": f"error: {exc}"})
            continue
        ranks = rank(vec)
        structural = metric in STRUCTURAL_METRICS
        for node, value in zip(vec.nodes, vec.values.tolist()):
            records.append({"node": node, "metric": metric,
                            "edge_prob": None if structural else args.edge_prob,
                            "l_max": None if structural else args.lmax,
                            "value": value, "rank": ranks[node], "status": "ok"})
    if args.format == "csv":
        _emit(args, records_csv(records, ROW_FIELDS))
    else:
        _emit(args, json.dumps({"rows": records}) + "\n")
    return 2 if failed else 0


def _cmd_sweep(args):
    g, name = _load_graph(args)
    result = sweep(g, args.grid, SpreadConfig(args.lmax), args.metrics, graph_id=name,
                   on_error="record", backend=args.backend)
    for (metric, p), msg in result.errors.items():
        print(f"ism: {metric} at {p if p is not None else 'structural'}: {msg}", file=sys.stderr)
    _emit(args, result.to_csv() if args.format == "csv" else result.to_json() + "\n")
    return 2 if result.errors else 0


def _cmd_compare(args):
    g, name = _load_graph(args)
    metrics = tuple(dict.fromkeys((args.metric_a, args.metric_b)))
    result = sweep(g, args.grid, SpreadConfig(args.lmax), metrics, graph_id=name,
                   on_error="record", backend=args.backend)
    rows = correlation_table(result, args.metric_a, args.metric_b)
    for r in rows:
        if r.status != "ok":
            print(f"ism: edge probability {r.edge_prob}: {r.status}", file=sys.stderr)
    _emit(args, correlation_csv(rows) if args.format == "csv" else correlation_json(rows) + "\n")
    return 2 if result.errors else 0


def _cmd_walks(args):
    g, _ = _load_graph(args)
    if args.source == args.target:
        raise UsageError("--source and --target must differ")
    for v in (args.source, args.target):
        if v not in g:
            raise UsageError(f"node {v} is not in the graph")
    cfg = SpreadConfig(args.lmax, args.edge_prob)
    walks = enumerate_walks(g, args.source, args.target, cfg, limit=args.cap)
    total = spread_probability_reference(g, args.source, args.target, cfg)
    records = [{"index": k, "walk": "-".join(map(str, w.nodes)), "edges": w.length,
                "probability": w.probability} for k, w in enumerate(walks, start=1)]
    if args.format == "csv":
        _emit(args, records_csv(records, ("index", "walk", "edges", "probability")))
    else:
        _emit(args, json.dumps({"source": args.source, "target": args.target, "l_max": args.lmax,
                                "walks": records, "combined_probability": total}) + "\n")
    print(f"{len(walks)} walks, combined probability {total!r}", file=sys.stderr)
    return 0


COMMANDS = {
    "generate": _cmd_generate,
    "matrix": _cmd_matrix,
    "centrality": _cmd_centrality,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
    "walks": _cmd_walks,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"ism: error: {exc}", file=sys.stderr)
        return 1
    except WalkLimitExceeded as exc:
        print(f"ism: {exc}; raise --cap or lower --lmax", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, KeyError) as exc:
        print(f"ism: computation failed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
