"""Brute-force reference implementations.

Everything here follows the definitions literally (subset enumeration, path
enumeration) and shares nothing with the fast modules except the graph data
model.  Instances are capped at ``MAX_NODES`` nodes; above that the oracles
raise instead of running for hours.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from itertools import combinations

from .errors import InstanceTooLarge
from .graph import WeightedGraph

MAX_NODES = 12
INFINITY = math.inf


def _guard(node_count: int):
    if node_count > MAX_NODES:
        raise InstanceTooLarge(f"oracle limited to {MAX_NODES} nodes, got {node_count}")


def _edges(g: WeightedGraph) -> list[tuple[int, int]]:
    return [tuple(e) for e in g.edges.tolist()]


def _adjacent(g: WeightedGraph) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {i: set() for i in range(g.node_count)}
    for a, b in _edges(g):
        adj[a].add(b)
        adj[b].add(a)
    return adj


def components_oracle(g: WeightedGraph, keep=None) -> list[frozenset[int]]:
    """Connected components by depth-first search over the kept edges."""
    adj: dict[int, list[int]] = {i: [] for i in range(g.node_count)}
    for k, (a, b) in enumerate(_edges(g)):
        if keep is None or keep[k]:
            adj[a].append(b)
            adj[b].append(a)
    seen: set[int] = set()
    out = []
    for s in range(g.node_count):
        if s in seen:
            continue
        comp, stack = {s}, [s]
        while stack:
            for y in adj[stack.pop()]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out.append(frozenset(comp))
    return out


# -- regional minima --------------------------------------------------------------


def _nonempty_subsets(items):
    for r in range(1, len(items) + 1):
        yield from combinations(items, r)


def _connected(nodes: set[int], links: list[tuple[int, int]]) -> bool:
    start = next(iter(nodes))
    reached, stack = {start}, [start]
    while stack:
        x = stack.pop()
        for a, b in links:
            for s, t in ((a, b), (b, a)):
                if s == x and t in nodes and t not in reached:
                    reached.add(t)
                    stack.append(t)
    return reached == nodes


def minima_oracle(g: WeightedGraph, weights, kind: str) -> list[tuple[int, frozenset[int]]]:
    """All regional minima as ``(altitude, node set)``, sorted.

    ``kind == "node"``: flat connected node sets whose outside neighbours are
    all strictly higher.  ``kind == "edge"``: chain-connected sets of equal
    weight edges such that every other edge touching them is strictly higher.
    """
    _guard(g.node_count)
    w = [int(x) for x in weights]
    edges = _edges(g)
    found = []
    if kind == "node":
        adj = _adjacent(g)
        for lam in sorted(set(w)):
            level = [i for i in range(g.node_count) if w[i] == lam]
            for subset in _nonempty_subsets(level):
                s = set(subset)
                inner = [(a, b) for a, b in edges if a in s and b in s and a != b]
                if not _connected(s, inner):
                    continue
                outside = {y for x in s for y in adj[x]} - s
                if all(w[y] > lam for y in outside):
                    found.append((lam, frozenset(s)))
    elif kind == "edge":
        for lam in sorted(set(w)):
            level = [k for k, x in enumerate(w) if x == lam]
            for subset in _nonempty_subsets(level):
                chosen = [edges[k] for k in subset]
                nodes = {x for e in chosen for x in e}
                if not _connected(nodes, chosen):
                    continue
                others = [k for k, (a, b) in enumerate(edges) if k not in subset and (a in nodes or b in nodes)]
                if all(w[k] > lam for k in others):
                    found.append((lam, frozenset(nodes)))
    else:
        raise ValueError("kind must be 'node' or 'edge'")
    return sorted(found, key=lambda t: (t[0], min(t[1])))


# -- catchment basins -------------------------------------------------------------


def _simple_node_paths(adj, w, start) -> Iterator[list[int]]:
    stack = [[start]]
    while stack:
        path = stack.pop()
        yield path
        x = path[-1]
        for y in adj[x]:
            if y not in path and w[y] <= w[x]:
                stack.append(path + [y])


def _simple_chains(g: WeightedGraph, w, start) -> Iterator[list[int]]:
    """Node sequences of simple flooding chains starting at ``start``."""
    edges = _edges(g)
    incident: dict[int, list[int]] = {i: [] for i in range(g.node_count)}
    for k, (a, b) in enumerate(edges):
        incident[a].append(k)
        if a != b:
            incident[b].append(k)
    lowest = {i: min((w[k] for k in incident[i]), default=None) for i in range(g.node_count)}
    stack = [([start], None)]
    while stack:
        path, last = stack.pop()
        yield path
        x = path[-1]
        for k in incident[x]:
            a, b = edges[k]
            y = b if a == x else a
            if y in path or w[k] != lowest[x] or (last is not None and w[k] > last):
                continue
            stack.append((path + [y], w[k]))


def basins_oracle(g: WeightedGraph, weights, kind: str) -> list[tuple[frozenset[int], frozenset[int]]]:
    """``(minimum nodes, basin nodes)`` pairs, in the order of ``minima_oracle``.

    A node is in the basin of a minimum when some simple flooding path
    (``kind == "node"``) or flooding chain (``kind == "edge"``) links it to a
    node of that minimum.
    """
    minima = minima_oracle(g, weights, kind)
    w = [int(x) for x in weights]
    adj = _adjacent(g)
    reached: dict[int, set[int]] = {}
    for start in range(g.node_count):
        paths = _simple_node_paths(adj, w, start) if kind == "node" else _simple_chains(g, w, start)
        reached[start] = {x for p in paths for x in p}
    return [
        (nodes, frozenset(s for s in range(g.node_count) if reached[s] & nodes))
        for _, nodes in minima
    ]


# -- lexicographic pruning ----------------------------------------------------------


def _successors(og) -> dict[int, list[int]]:
    succ: dict[int, list[int]] = {i: [] for i in range(og.node_count)}
    for p, q in og.arrows.tolist():
        succ[p].append(q)
    return succ


def oriented_minimum_nodes(og) -> set[int]:
    """Nodes every descendant of which can climb back to them."""
    succ = _successors(og)

    def reach(p):
        seen, stack = {p}, [p]
        while stack:
            for y in succ[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    down = {p: reach(p) for p in range(og.node_count)}
    return {p for p in range(og.node_count) if all(p in down[q] for q in down[p])}


def walks(og, start: int, length: int) -> Iterator[list[int]]:
    """All arrow walks with ``length`` nodes starting at ``start``."""
    succ = _successors(og)
    stack = [[start]]
    while stack:
        w = stack.pop()
        if len(w) == length:
            yield w
            continue
        for q in succ[w[-1]]:
            stack.append(w + [q])


def _descents(og, start: int, in_min: set[int]) -> Iterator[list[int]]:
    """Simple arrow paths from ``start`` stopped at the first minimum node."""
    succ = _successors(og)
    stack = [[start]]
    while stack:
        path = stack.pop()
        x = path[-1]
        if x in in_min:
            yield path
            continue
        for q in succ[x]:
            if q not in path:
                stack.append(path + [q])


def steepest_weights(og, start: int, k) -> tuple[int, ...]:
    """The smallest weight sequence of length ``k`` among paths from ``start``."""
    return min(_candidates(og, start, k, oriented_minimum_nodes(og)))[0]


def _candidates(og, start, k, in_min):
    w = [int(x) for x in og.node_weights]
    if k == INFINITY:
        paths = list(_descents(og, start, in_min))
        length = max(len(p) for p in paths) + 1
        for p in paths:
            seq = [w[x] for x in p]
            seq += [seq[-1]] * (length - len(seq))
            yield tuple(seq), p
    else:
        for p in walks(og, start, k):
            yield tuple(w[x] for x in p), p


def lex_prune_oracle(og, k) -> frozenset[tuple[int, int]]:
    """Arrows that begin a path steepest over its first ``k`` nodes.

    Finite ``k`` compares every arrow walk of ``k`` nodes; under property (P)
    each such walk continues into a minimum, and a walk that settles inside a
    minimum is exactly the padded path.  ``k == INFINITY`` compares simple
    descents padded with their minimum's altitude.
    """
    _guard(og.node_count)
    if k != INFINITY and k < 1:
        raise ValueError("k must be >= 1")
    succ = _successors(og)
    if k == 1:
        return frozenset((p, q) for p in succ for q in succ[p])
    in_min = oriented_minimum_nodes(og)
    kept = set()
    for p in range(og.node_count):
        if p in in_min:
            kept.update((p, q) for q in succ[p])
            continue
        cands = list(_candidates(og, p, k, in_min))
        best = min(seq for seq, _ in cands)
        kept.update((p, path[1]) for seq, path in cands if seq == best)
    return frozenset(kept)


# -- flooding graph validation ----------------------------------------------------


def flooding_graph_check(g: WeightedGraph) -> list[str]:
    """Violations of the flooding-graph conditions, empty when ``g`` is valid."""
    if g.node_weights is None or g.edge_weights is None:
        return ["graph lacks node weights or edge weights"]
    n = [int(x) for x in g.node_weights]
    e = [int(x) for x in g.edge_weights]
    edges = _edges(g)
    incident: dict[int, list[int]] = {i: [] for i in range(g.node_count)}
    for k, (a, b) in enumerate(edges):
        incident[a].append(k)
        if a != b:
            incident[b].append(k)

    problems = []
    for k, (a, b) in enumerate(edges):
        if e[k] != max(n[a], n[b]):
            problems.append(f"edge ({a}, {b}): weight {e[k]} != max of endpoints {max(n[a], n[b])}")
        low_a = min(e[j] for j in incident[a])
        low_b = min(e[j] for j in incident[b])
        if e[k] != low_a and e[k] != low_b:
            problems.append(f"edge ({a}, {b}): lowest edge of neither endpoint")
    for i in range(g.node_count):
        if not incident[i]:
            problems.append(f"node {i}: no incident edge")
            continue
        low = min(e[j] for j in incident[i])
        if n[i] != low:
            problems.append(f"node {i}: weight {n[i]} != lowest incident edge {low}")
        others = [b if a == i else a for a, b in (edges[j] for j in incident[i])]
        if all(n[y] > n[i] for y in others):
            problems.append(f"node {i}: isolated regional minimum without a loop")
    return problems
