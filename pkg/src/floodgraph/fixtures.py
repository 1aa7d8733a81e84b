"""Small named graphs and random instance generators.

Named fixtures use letters for nodes in their docstrings: ``a=0, b=1, ...``.
"""

from __future__ import annotations

import numpy as np

from .flooding import FloodingGraph, flooding_graph_from_edges, flooding_graph_from_nodes
from .graph import WeightedGraph


def _path_edges(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def f1() -> WeightedGraph:
    """Edge-weighted path a-b-c-d with ab=1, bc=3, cd=2."""
    return WeightedGraph(4, _path_edges(4), edge_weights=[1, 3, 2])


def f2() -> WeightedGraph:
    """Node-weighted path a:2, b:1, c:3; b is an isolated minimum."""
    return WeightedGraph(3, _path_edges(3), node_weights=[2, 1, 3])


def f3() -> WeightedGraph:
    """Node-weighted path a:3, b:3, c:1; plateau {a, b} drains into c."""
    return WeightedGraph(3, _path_edges(3), node_weights=[3, 3, 1])


def overlap() -> WeightedGraph:
    """Node-weighted path 1-2-3-2-1: the middle node drains both ways."""
    return WeightedGraph(5, _path_edges(5), node_weights=[1, 2, 3, 2, 1])


def ladder() -> WeightedGraph:
    """Three descents from one node ``p`` of weight 4.

    ``p -> q1 (3) -> r1 (1)``, ``p -> q2 (3) -> r2 (2)`` and ``p -> q3 (4) -> s (0)``.
    Comparing one node leaves three candidate arrows at ``p``, two nodes leave
    the two arrows towards weight 3, and three nodes single out ``q1``.
    Node ids: p=0, q1=1, r1=2, q2=3, r2=4, q3=5, s=6.
    """
    edges = [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]
    return WeightedGraph(7, edges, node_weights=[4, 3, 1, 3, 2, 4, 0])


LADDER_TIE_NODE = 0


def four_basins() -> WeightedGraph:
    """Edge-weighted graph whose oriented flooding graph splits into four
    single-minimum components after one pruning round.

    Minima edges ab=1, cd=2, ef=1, gh=2.  Node i hangs between b and d, node j
    between f and h, all four links at weight 3, and the i-j link (6) is
    dropped when the flooding graph is built.  The first round cuts the two
    arrows i->d and j->h that lead to the higher minima.
    Node ids: a..h = 0..7, i=8, j=9.
    """
    edges = [
        (0, 1), (2, 3), (4, 5), (6, 7),
        (1, 8), (3, 8), (5, 9), (7, 9),
        (8, 9),
    ]
    return WeightedGraph(10, edges, edge_weights=[1, 2, 1, 2, 3, 3, 3, 3, 6])


def staircase() -> WeightedGraph:
    """Node-weighted graph with a plateau that needs three pruning rounds.

    Minima: a (3), b (3), e (1), h (2).  The plateau {c, f} at 3 drains
    through f into e.  Node d (6) sees three neighbours at 3 (a, b, c) and
    only the fourth node of the descents separates them: d-c-f-e reads
    6,3,3,1 against 6,3,3,3.  Node g (6) is settled one round earlier.
    Node ids: a..h = 0..7.
    """
    edges = [(0, 3), (1, 3), (1, 6), (2, 3), (2, 5), (2, 6), (4, 5), (5, 6), (5, 7)]
    return WeightedGraph(8, edges, node_weights=[3, 3, 3, 6, 1, 3, 6, 2])


def ramp_image(width: int = 16, height: int = 16, ridge: int = 8) -> np.ndarray:
    """Two-basin grey ramp: rows above ``ridge`` climb from row 0, rows below
    climb from the last row, and the ridge row is the highest.

    Pixels of the ridge row drain downwards because the row below is lower
    than the row above, so the partition splits between rows ``ridge - 1``
    and ``ridge``.
    """
    rows = np.empty(height, dtype=np.int64)
    rows[:ridge] = np.arange(ridge)
    rows[ridge + 1:] = np.arange(height - ridge - 2, -1, -1)
    rows[ridge] = max(rows[ridge - 1], rows[ridge + 1]) + 1
    return np.repeat(rows[:, None], width, axis=1)


# -- random instances -----------------------------------------------------------


def random_graph(
    rng: np.random.Generator,
    n: int,
    *,
    kind: str = "node",
    max_weight: int = 9,
    density: float | None = None,
    loops: bool = False,
) -> WeightedGraph:
    """Random simple graph with ``n`` nodes and weights in ``[0, max_weight]``.

    Edge-weighted graphs always get a spanning tree first so that no node is
    isolated; node-weighted graphs may contain isolated nodes.
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    p = rng.uniform(0.15, 0.5) if density is None else density
    chosen = {pairs[k] for k in np.flatnonzero(rng.random(len(pairs)) < p)} if pairs else set()
    if kind == "edge" or rng.random() < 0.7:
        order = rng.permutation(n)
        for t in range(1, n):
            a, b = int(order[t]), int(order[rng.integers(t)])
            chosen.add((min(a, b), max(a, b)))
    if loops:
        chosen |= {(i, i) for i in range(n) if rng.random() < 0.15}
    edges = sorted(chosen)
    if kind == "edge":
        if n == 1 and not edges:
            edges = [(0, 0)]
        return WeightedGraph(n, edges, edge_weights=rng.integers(0, max_weight + 1, len(edges)))
    if kind == "node":
        return WeightedGraph(n, edges, node_weights=rng.integers(0, max_weight + 1, n))
    raise ValueError("kind must be 'node' or 'edge'")


def random_flooding_graph(rng: np.random.Generator, n: int, **kw) -> FloodingGraph:
    """Flooding graph built from a random node- or edge-weighted graph."""
    kind = kw.pop("kind", None) or ("node" if rng.random() < 0.5 else "edge")
    g = random_graph(rng, n, kind=kind, **kw)
    if kind == "edge":
        return flooding_graph_from_edges(g)
    return flooding_graph_from_nodes(g)
