"""Text graph files, PGM ingestion, label files and DOT export.

Graph text format::

    # comment
    graph 4
    n 0 1          # node weight, or "_" when absent
    e 0 1 1        # edge u v weight, or "_" when absent

Node lines are optional.  A weight map is either total or absent: mixing
numbers and ``_`` within one map is an error.
"""

from __future__ import annotations

import re

import numpy as np

from .errors import (
    DanglingEndpoint,
    GraphSyntaxError,
    PartialWeightMap,
    TruncatedData,
    UnknownNode,
    UnsupportedFormat,
)
from .flooding import BasinCover, MinimaSet, regional_minima_edge, regional_minima_node
from .graph import WeightedGraph, edge_key
from .oriented import OrientedGraph
from .pruning import LabelMap, oriented_minima


def _text(data: bytes | str) -> str:
    return data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data


# -- graph text files --------------------------------------------------------------


def write_graph_file(g: WeightedGraph) -> bytes:
    lines = [f"graph {g.node_count}"]
    if g.node_weights is not None:
        lines += [f"n {i} {int(w)}" for i, w in enumerate(g.node_weights)]
    ew = g.edge_weights
    for k, (u, v) in enumerate(g.edges.tolist()):
        lines.append(f"e {u} {v} {'_' if ew is None else int(ew[k])}")
    return ("\n".join(lines) + "\n").encode()


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphSyntaxError(lineno, f"{what} must be an integer, got {token!r}") from None


def _weight(token: str, lineno: int) -> int | None:
    return None if token == "_" else _int(token, lineno, "weight")


def _total_or_absent(values: list, size: int, what: str) -> list[int] | None:
    given = [v for v in values if v is not None]
    if not given:
        return None
    if len(given) != size:
        missing = next(i for i, v in enumerate(values) if v is None)
        raise PartialWeightMap(f"{what} {missing} has no weight while others do")
    return values


def parse_graph_file(data: bytes | str) -> WeightedGraph:
    node_count = None
    node_w: list[int | None] = []
    seen_nodes: set[int] = set()
    edges: list[tuple[int, int]] = []
    edge_w: list[int | None] = []
    for lineno, raw in enumerate(_text(data).splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        kind, args = tokens[0], tokens[1:]
        if node_count is None:
            if kind != "graph" or len(args) != 1:
                raise GraphSyntaxError(lineno, "expected header 'graph <node_count>'")
            node_count = _int(args[0], lineno, "node count")
            if node_count < 0:
                raise GraphSyntaxError(lineno, "node count must be non-negative")
            node_w = [None] * node_count
        elif kind == "n":
            if len(args) != 2:
                raise GraphSyntaxError(lineno, "expected 'n <id> <weight|_>'")
            i = _int(args[0], lineno, "node id")
            if not 0 <= i < node_count:
                raise UnknownNode(f"line {lineno}: node {i} outside [0, {node_count})")
            if i in seen_nodes:
                raise GraphSyntaxError(lineno, f"node {i} listed twice")
            seen_nodes.add(i)
            node_w[i] = _weight(args[1], lineno)
        elif kind == "e":
            if len(args) != 3:
                raise GraphSyntaxError(lineno, "expected 'e <u> <v> <weight|_>'")
            u, v = _int(args[0], lineno, "endpoint"), _int(args[1], lineno, "endpoint")
            for x in (u, v):
                if not 0 <= x < node_count:
                    raise DanglingEndpoint(f"line {lineno}: endpoint {x} outside [0, {node_count})")
            edges.append(edge_key(u, v))
            edge_w.append(_weight(args[2], lineno))
        else:
            raise GraphSyntaxError(lineno, f"unknown record {kind!r}")
    if node_count is None:
        raise GraphSyntaxError(1, "missing header 'graph <node_count>'")
    nw = _total_or_absent(node_w, node_count, "node")
    ew = _total_or_absent(edge_w, len(edges), "edge")
    return WeightedGraph(node_count, edges, nw, ew)


# -- PGM ----------------------------------------------------------------------------


_PGM_HEADER = re.compile(rb"(?:\s|#[^\n]*\n?)*(\S+)")


def read_pgm_array(data: bytes) -> np.ndarray:
    """Decode a plain (P2) or raw (P5) PGM image into an ``int64`` array."""
    pos, fields = 0, []
    for _ in range(4):
        m = _PGM_HEADER.match(data, pos)
        if m is None:
            raise TruncatedData("PGM header ends early")
        fields.append(m.group(1))
        pos = m.end()
    magic = fields[0]
    if magic not in (b"P2", b"P5"):
        raise UnsupportedFormat(f"not a grey PGM file (magic {magic[:2]!r})")
    try:
        width, height, maxval = (int(f) for f in fields[1:])
    except ValueError:
        raise UnsupportedFormat("malformed PGM header") from None
    if width < 0 or height < 0 or not 0 < maxval <= 65535:
        raise UnsupportedFormat(f"unsupported PGM geometry or maxval {maxval}")
    count = width * height

    if magic == b"P5":
        body = data[pos + 1:]
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        if len(body) < count * dtype.itemsize:
            raise TruncatedData(f"expected {count} samples, got {len(body) // dtype.itemsize}")
        pixels = np.frombuffer(body, dtype=dtype, count=count).astype(np.int64)
    else:
        body = re.sub(rb"#[^\n]*", b"", data[pos:]).split()
        if len(body) < count:
            raise TruncatedData(f"expected {count} samples, got {len(body)}")
        try:
            pixels = np.array([int(t) for t in body[:count]], dtype=np.int64)
        except ValueError:
            raise UnsupportedFormat("non-numeric sample in P2 data") from None
    if pixels.size and (pixels.max() > maxval or pixels.min() < 0):
        raise UnsupportedFormat("sample outside [0, maxval]")
    return pixels.reshape(height, width)


def write_pgm(image: np.ndarray, *, plain: bool = False, maxval: int | None = None) -> bytes:
    image = np.asarray(image, dtype=np.int64)
    height, width = image.shape
    maxval = int(max(image.max(initial=0), 1)) if maxval is None else maxval
    if plain:
        rows = "\n".join(" ".join(str(int(x)) for x in row) for row in image)
        return f"P2\n{width} {height}\n{maxval}\n{rows}\n".encode()
    dtype = ">u2" if maxval > 255 else "u1"
    return f"P5\n{width} {height}\n{maxval}\n".encode() + image.astype(dtype).tobytes()


def grid_graph(image: np.ndarray) -> WeightedGraph:
    """4-connected pixel graph; node ``row * width + col`` weighted by its grey value."""
    image = np.asarray(image, dtype=np.int64)
    height, width = image.shape
    ids = np.arange(height * width).reshape(height, width)
    right = np.stack([ids[:, :-1].ravel(), ids[:, 1:].ravel()], axis=1)
    down = np.stack([ids[:-1, :].ravel(), ids[1:, :].ravel()], axis=1)
    edges = np.concatenate([right, down])
    edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
    return WeightedGraph(height * width, edges, node_weights=image.ravel())


def read_pgm(data: bytes) -> WeightedGraph:
    return grid_graph(read_pgm_array(data))


# -- labels and minima ----------------------------------------------------------------


def write_labels(result: LabelMap | BasinCover) -> bytes:
    if isinstance(result, LabelMap):
        per_node = [(int(x),) for x in result.labels]
    else:
        per_node = list(result.membership)
    lines = [f"label {i} {','.join(map(str, labs)) or '-'}" for i, labs in enumerate(per_node)]
    return "".join(line + "\n" for line in lines).encode()


def parse_labels(data: bytes | str) -> list[tuple[int, ...]]:
    out: dict[int, tuple[int, ...]] = {}
    for lineno, raw in enumerate(_text(data).splitlines(), start=1):
        tokens = raw.split()
        if not tokens:
            continue
        if tokens[0] != "label" or len(tokens) != 3:
            raise GraphSyntaxError(lineno, "expected 'label <node> <labels>'")
        node = _int(tokens[1], lineno, "node id")
        labs = () if tokens[2] == "-" else tuple(_int(t, lineno, "label") for t in tokens[2].split(","))
        out[node] = labs
    return [out[i] for i in sorted(out)]


def write_minima(minima: MinimaSet) -> bytes:
    lines = [f"minimum {m.label} {m.altitude} {','.join(map(str, m.nodes))}" for m in minima]
    return "".join(line + "\n" for line in lines).encode()


# -- DOT ------------------------------------------------------------------------------

PALETTE = ("#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628", "#f781bf")


def _node_lines(node_count, weights, minima: MinimaSet | None) -> list[str]:
    lines = []
    label_of = minima.label_of if minima is not None else None
    for i in range(node_count):
        attrs = [f'label="{i}' + ("" if weights is None else f":{int(weights[i])}") + '"']
        if label_of is not None and label_of[i] >= 0:
            attrs.append(f'style=filled, fillcolor="{PALETTE[label_of[i] % len(PALETTE)]}"')
        lines.append(f"  {i} [{', '.join(attrs)}];")
    return lines


def write_dot(obj: WeightedGraph | OrientedGraph, *, removed: WeightedGraph | OrientedGraph | None = None,
              color_minima: bool = True, name: str = "G") -> bytes:
    """Render a graph in DOT.

    Weights become labels.  Elements of ``removed`` (typically the graph before
    a pruning step) that are absent from ``obj`` are drawn dashed.  Regional
    minima are filled with one colour each.
    """
    if isinstance(obj, OrientedGraph):
        minima = oriented_minima(obj) if color_minima and obj.node_count else None
        lines = [f"digraph {name} {{"] + _node_lines(obj.node_count, obj.node_weights, minima)
        for (p, q), w in zip(obj.arrows.tolist(), obj.arrow_weights.tolist()):
            lines.append(f'  {p} -> {q} [label="{w}"];')
        if removed is not None:
            kept = obj.arrow_set()
            for p, q in removed.arrows.tolist():
                if (p, q) not in kept:
                    lines.append(f"  {p} -> {q} [style=dashed];")
    else:
        minima = None
        if color_minima and obj.node_count:
            if obj.node_weights is not None:
                minima = regional_minima_node(obj)
            elif obj.edge_weights is not None:
                minima = regional_minima_edge(obj)
        lines = [f"graph {name} {{"] + _node_lines(obj.node_count, obj.node_weights, minima)
        ew = obj.edge_weights
        for k, (u, v) in enumerate(obj.edges.tolist()):
            attr = "" if ew is None else f' [label="{int(ew[k])}"]'
            lines.append(f"  {u} -- {v}{attr};")
        if removed is not None:
            rw = removed.edge_weights
            for k, (u, v) in enumerate(removed.edges.tolist()):
                if not obj.has_edge(u, v):
                    label = "" if rw is None else f'label="{int(rw[k])}", '
                    lines.append(f"  {u} -- {v} [{label}style=dashed];")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode()
