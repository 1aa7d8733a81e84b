"""Command-line driver: ``floodgraph <command> [options]``.

Exit codes: 0 on success, 1 on usage errors, 2 on data errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import oracle
from .errors import GraphError, InstanceTooLarge
from .fileio import (
    parse_graph_file,
    read_pgm,
    write_dot,
    write_graph_file,
    write_labels,
    write_minima,
)
from .fixtures import random_graph
from .flooding import (
    FloodingGraph,
    catchment_basins,
    flooding_graph_from_edges,
    flooding_graph_from_nodes,
    is_flooding_graph,
    regional_minima_edge,
    regional_minima_node,
)
from .graph import WeightedGraph
from .pruning import INFINITY, orient, transport, watershed, zeta_iter

SEED_NODES = 8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _depth(text: str):
    if text.lower() in ("inf", "infinity"):
        return INFINITY
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'inf', got {text!r}") from None
    if k < 0:
        raise argparse.ArgumentTypeError("depth must be non-negative")
    return k


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--in", dest="infile", metavar="FILE", help="graph text file")
    src.add_argument("--pgm", metavar="FILE", help="PGM image (P2 or P5)")
    src.add_argument("--seed", type=int, metavar="N", help="random node-weighted graph")
    common.add_argument("--from", dest="source", choices=("edges", "nodes"),
                        help="weights the flooding graph is built from (default: auto)")
    common.add_argument("--out", metavar="FILE", help="write the result here instead of stdout")
    common.add_argument("--dot", metavar="FILE", help="also write a DOT rendering")
    common.add_argument("--report-choices", action="store_true",
                        help="print the number of arbitrary tie-breaks to stderr")

    parser = _Parser(prog="floodgraph", description="Flooding graphs, lexicographic pruning and watersheds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("flood", parents=[common], help="build the flooding graph")
    sub.add_parser("minima", parents=[common], help="list regional minima")
    sub.add_parser("basins", parents=[common], help="catchment basins (possibly overlapping)")
    prune = sub.add_parser("prune", parents=[common], help="prune k times and output the pruned flooding graph")
    prune.add_argument("--k", type=_depth, required=True, help="pruning depth, integer or 'inf'")
    ws = sub.add_parser("watershed", parents=[common], help="watershed partition")
    ws.add_argument("--method", type=int, choices=range(1, 6), required=True)
    ws.add_argument("--k", type=_depth, help="pruning depth for method 2")
    sub.add_parser("check", parents=[common], help="validate against the brute-force oracles")
    return parser


def _load(args) -> WeightedGraph:
    if args.pgm:
        return read_pgm(Path(args.pgm).read_bytes())
    if args.infile:
        return parse_graph_file(Path(args.infile).read_bytes())
    if args.seed is not None:
        return random_graph(np.random.default_rng(args.seed), SEED_NODES, kind="node")
    raise UsageError("one of --in, --pgm or --seed is required")


def to_flooding(g: WeightedGraph, source: str | None = None) -> FloodingGraph:
    if source is None:
        if g.node_weights is not None and g.edge_weights is not None:
            if is_flooding_graph(g):
                return FloodingGraph.from_graph(g)
            raise GraphError("graph has both weight maps but is not a flooding graph; pass --from")
        if g.node_weights is not None:
            source = "nodes"
        elif g.edge_weights is not None:
            source = "edges"
        else:
            raise GraphError("graph has no weights")
    if source == "nodes":
        return flooding_graph_from_nodes(g)
    return flooding_graph_from_edges(g)


def _check(g: WeightedGraph, fg: FloodingGraph) -> list[str]:
    oracle._guard(g.node_count)
    problems = oracle.flooding_graph_check(fg)
    fast = [(m.altitude, frozenset(m.nodes)) for m in regional_minima_node(fg)]
    if sorted(fast, key=lambda t: (t[0], min(t[1]))) != oracle.minima_oracle(fg, fg.node_weights, "node"):
        problems.append("node minima disagree with the oracle")
    if g.edge_weights is not None and g.edge_count:
        try:
            fast_e = regional_minima_edge(g)
        except GraphError:
            fast_e = None
        if fast_e is not None:
            got = sorted(((m.altitude, frozenset(m.nodes)) for m in fast_e), key=lambda t: (t[0], min(t[1])))
            if got != oracle.minima_oracle(g, g.edge_weights, "edge"):
                problems.append("edge minima disagree with the oracle")
    expected = [set(b) for _, b in oracle.basins_oracle(fg, fg.node_weights, "node")]
    if [set(b) for b in catchment_basins(fg).basin_sets()] != expected:
        problems.append("catchment basins disagree with the oracle")
    og = orient(fg)
    for k in range(1, 4):
        got = zeta_iter(og, k).arrow_set()
        if not got <= oracle.lex_prune_oracle(og, k + 1):
            problems.append(f"pruning depth {k} keeps an arrow that starts no steepest path")
    return problems


def run(args, stdout, stderr) -> int:
    g = _load(args)
    fg = to_flooding(g, args.source)
    dot = None
    choices = 0

    if args.command == "flood":
        out = write_graph_file(fg)
        dot = write_dot(fg, removed=g if g.edge_weights is not None else None)
    elif args.command == "minima":
        minima = regional_minima_node(fg)
        out = write_minima(minima)
        dot = write_dot(fg)
    elif args.command == "basins":
        out = write_labels(catchment_basins(fg))
        dot = write_dot(fg)
    elif args.command == "prune":
        og = orient(fg)
        pruned = zeta_iter(og, args.k)
        out = write_graph_file(transport(pruned, fg))
        dot = write_dot(pruned, removed=og)
    elif args.command == "watershed":
        result = watershed(fg, args.method, args.k)
        out = write_labels(result)
        dot = write_dot(fg)
        choices = result.choices
    elif args.command == "check":
        problems = _check(g, fg)
        out = "".join(p + "\n" for p in problems).encode() if problems else b"ok\n"
        if problems:
            _emit(args.out, out, stdout)
            return 2
    else:  # pragma: no cover - argparse rejects unknown commands
        raise UsageError(f"unknown command {args.command}")

    _emit(args.out, out, stdout)
    if args.report_choices:
        stderr.write(f"choices {choices}\n")
    if args.dot and dot is not None:
        Path(args.dot).write_bytes(dot)
    return 0


def _emit(path, data: bytes, stdout):
    if path:
        Path(path).write_bytes(data)
    else:
        stdout.buffer.write(data) if hasattr(stdout, "buffer") else stdout.write(data.decode())
        stdout.flush()


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return run(args, stdout, stderr)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 1
    except InstanceTooLarge as exc:
        stderr.write(f"error: instance too large: {exc}\n")
        return 2
    except (GraphError, OSError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
