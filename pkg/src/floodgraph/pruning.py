"""Oriented flooding graphs, lexicographic pruning and watershed partitions.

The flooding graph is turned into an oriented graph whose arrows point
downhill (both ways on plateaus).  ``zeta`` then prunes it locally: every
arrow takes the weight of its extremity, every node the lowest weight among
its arrows, and arrows heavier than their origin disappear.  After ``k``
rounds only the first arrows of the paths that are lexicographically steepest
over ``k + 1`` nodes survive.

``watershed`` turns the pruned graph into a partition using one of five
tie-breaking strategies.  Every arbitrary decision it takes is counted.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .errors import DoesNotReachMinimum, MissingDepth, NoMinima, NoOutgoingArrow, NotAPath
from .flooding import BasinCover, FloodingGraph, MinimaSet, regional_minima_node
from .morphology import dilate_nodes_to_edges
from .oriented import OrientedGraph

INFINITY = math.inf

_BIG = np.iinfo(np.int64).max


def _check_depth(k, minimum: int = 0):
    if k == INFINITY:
        return k
    if int(k) != k or k < minimum:
        raise ValueError(f"steepness depth must be an integer >= {minimum} or INFINITY, got {k!r}")
    return int(k)


# -- oriented flooding graph ------------------------------------------------------


def orient(fg: FloodingGraph) -> OrientedGraph:
    """Replace every edge by downhill arrows; plateau edges give both arrows.

    Loops become self-arrows.  Arrow weights are the origin weights, so the
    result is an oriented flooding graph.
    """
    fg = FloodingGraph.from_graph(fg)
    n = fg.node_weights
    arrows = []
    for p, q in fg.edges.tolist():
        if p == q:
            arrows.append((p, p))
            continue
        if n[p] >= n[q]:
            arrows.append((p, q))
        if n[q] >= n[p]:
            arrows.append((q, p))
    arrows = np.array(arrows, dtype=np.int64).reshape(-1, 2)
    return OrientedGraph(fg.node_count, arrows, n[arrows[:, 0]], n.copy())


def zeta(og: OrientedGraph) -> OrientedGraph:
    """One pruning round, fused into a single pass over the arrows."""
    w = og.node_weights[og.extremities]
    lowest = np.full(og.node_count, _BIG, dtype=np.int64)
    np.minimum.at(lowest, og.origins, w)
    if og.node_count and (og.out_degree() == 0).any():
        raise NoOutgoingArrow(int(np.flatnonzero(og.out_degree() == 0)[0]))
    keep = w <= lowest[og.origins]
    return OrientedGraph(og.node_count, og.arrows[keep], lowest[og.origins[keep]], lowest)


def _same_state(a: OrientedGraph, b: OrientedGraph) -> bool:
    # zeta only ever removes arrows, so equal counts mean equal arrow sets
    return a.arrow_count == b.arrow_count and np.array_equal(a.node_weights, b.node_weights)


def zeta_states(og: OrientedGraph) -> Iterator[tuple[int, OrientedGraph]]:
    """Yield ``(k, zeta^k(og))`` for k = 0, 1, ... up to the fixed point.

    The fixed point is a fixed point of the whole state (arrows and weights):
    an iteration that removes nothing can still move weights and enable later
    removals.
    """
    k, cur = 0, og
    yield k, cur
    while True:
        nxt = zeta(cur)
        if _same_state(cur, nxt):
            return
        k, cur = k + 1, nxt
        yield k, cur


def zeta_iter(og: OrientedGraph, k) -> OrientedGraph:
    """Apply ``zeta`` ``k`` times; ``INFINITY`` iterates to the fixed point."""
    k = _check_depth(k)
    if k == INFINITY:
        for _, cur in zeta_states(og):
            pass
        return cur
    cur = og
    for _ in range(k):
        cur = zeta(cur)
    return cur


def lex_prune(og: OrientedGraph, k) -> OrientedGraph:
    """Keep the first arrows of the paths steepest over their first ``k`` nodes."""
    k = _check_depth(k, minimum=1)
    return zeta_iter(og, k if k == INFINITY else k - 1)


def transport(og_pruned: OrientedGraph, fg: FloodingGraph) -> FloodingGraph:
    """Keep the edges of ``fg`` that still carry an arrow in either direction.

    Node and edge weights of ``fg`` are kept unchanged.
    """
    surviving = {(min(p, q), max(p, q)) for p, q in og_pruned.arrows.tolist()}
    keep = np.array([tuple(e) in surviving for e in fg.edges.tolist()], dtype=bool)
    return FloodingGraph.from_graph(fg.with_edges(keep))


# -- minima, basins, path comparison -------------------------------------------


def oriented_minima(og: OrientedGraph) -> MinimaSet:
    """Bottom strongly connected components, labelled like node minima."""
    mask = og.minimum_mask
    scc = og.strong_components
    groups = {}
    for node in np.flatnonzero(mask).tolist():
        groups.setdefault(int(scc[node]), []).append(node)
    triples = []
    for nodes in groups.values():
        inside = set(nodes)
        arrows = {(p, q) for p, q in og.arrows.tolist() if p in inside}
        triples.append((og.node_weights[nodes[0]], nodes, arrows))
    return MinimaSet.from_groups(og.node_count, triples)


def oriented_basins(og: OrientedGraph) -> BasinCover:
    """Nodes having an oriented path to each minimum."""
    minima = oriented_minima(og)
    basins = []
    for m in minima:
        seen = set(m.nodes)
        queue = deque(m.nodes)
        while queue:
            q = queue.popleft()
            for p in og.predecessors(q):
                if p not in seen:
                    seen.add(p)
                    queue.append(p)
        basins.append(tuple(sorted(seen)))
    return BasinCover(minima, tuple(basins))


def head_to_tail_nodes(og: OrientedGraph) -> frozenset[int]:
    """Nodes outside the minima that still lie on an oriented cycle.

    The simplest such cycle is a pair of opposed arrows ``p -> q``, ``q -> p``
    on a plateau.  Once none remain, every node outside the minima drains
    through an acyclic arrow graph and keeping one arrow per node yields a
    partition.
    """
    scc = og.strong_components
    sizes = np.bincount(scc, minlength=scc.max() + 1 if scc.size else 0)
    cyclic = sizes[scc] > 1
    selfs = og.origins[og.origins == og.extremities]
    cyclic[selfs] = True
    return frozenset(np.flatnonzero(cyclic & ~og.minimum_mask).tolist())


class Order(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def path_weights(og: OrientedGraph, path: Sequence[int], length: int) -> list[int]:
    """Node weights along ``path``, extended at its last node's altitude."""
    w = [int(og.node_weights[p]) for p in path[:length]]
    w += [w[-1]] * (length - len(w))
    return w


def _validate_path(og: OrientedGraph, path: Sequence[int]):
    if not path:
        raise NotAPath("empty path")
    arrows = og.arrow_set()
    for p, q in zip(path, path[1:]):
        if (p, q) not in arrows:
            raise NotAPath(f"no arrow {p} -> {q}")
    if not og.minimum_mask[path[-1]]:
        raise DoesNotReachMinimum(f"path ends at {path[-1]}, outside every regional minimum")


def compare_paths(og: OrientedGraph, pi: Sequence[int], chi: Sequence[int], k) -> Order:
    """Lexicographic comparison of two downhill paths over their first ``k`` nodes.

    Each path is padded beyond its last node (inside a minimum) with that
    minimum's altitude, which realises the endless cycling inside the minimum.
    """
    k = _check_depth(k, minimum=1)
    _validate_path(og, pi)
    _validate_path(og, chi)
    length = max(len(pi), len(chi)) + 1 if k == INFINITY else k
    a, b = path_weights(og, pi, length), path_weights(og, chi, length)
    return Order((a > b) - (a < b))


# -- watershed partitions ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LabelMap:
    """One minimum label per node, plus an audit trail of the run."""

    labels: np.ndarray
    minima: MinimaSet
    method: int
    choices: int = 0
    iterations: int = 0
    fallback: bool = False

    def regions(self) -> list[tuple[int, ...]]:
        return [tuple(np.flatnonzero(self.labels == m.label).tolist()) for m in self.minima]


def _priority_flood(fg: FloodingGraph, minima: MinimaSet) -> tuple[np.ndarray, int]:
    n, e = fg.node_weights, fg.edge_weights
    labels = minima.label_of.copy()
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(fg.node_count)]
    for k, (a, b) in enumerate(fg.edges.tolist()):
        if a != b:
            adjacency[a].append((b, int(e[k])))
            adjacency[b].append((a, int(e[k])))

    heap: list[tuple[int, int, int, int]] = []

    def push_from(v: int, label: int):
        for u, w in adjacency[v]:
            if labels[u] < 0 and n[u] >= n[v]:
                heapq.heappush(heap, (w, int(n[u]), u, label))

    for m in minima:
        for v in m.nodes:
            push_from(v, m.label)

    choices = 0
    while heap:
        w, nu, u, label = heapq.heappop(heap)
        if labels[u] >= 0:
            continue
        rivals = {label}
        while heap and heap[0][:3] == (w, nu, u):
            rivals.add(heapq.heappop(heap)[3])
        if len(rivals) > 1:
            choices += 1
        labels[u] = label
        push_from(u, label)
    return labels, choices


def _relabel(minima_from: MinimaSet, minima_to: MinimaSet) -> np.ndarray:
    """Map labels of ``minima_from`` onto the labels of the same node sets in ``minima_to``."""
    return np.array([minima_to.label_of[m.nodes[0]] for m in minima_from], dtype=np.int64)


def _single_arrow_labels(og: OrientedGraph, minima: MinimaSet) -> tuple[np.ndarray, int]:
    """Keep one arrow per node outside the minima (smallest extremity) and follow it."""
    og_minima = oriented_minima(og)
    own = _relabel(og_minima, minima)
    in_min = og.minimum_mask
    scc_label = {}
    for m_og, lab in zip(og_minima, own):
        for x in m_og.nodes:
            scc_label[x] = int(lab)
    choices = 0
    nxt = np.full(og.node_count, -1, dtype=np.int64)
    for p in range(og.node_count):
        if in_min[p]:
            continue
        succ = og.successors(p)
        if len(set(succ)) > 1:
            choices += 1
        nxt[p] = min(succ)

    labels = np.full(og.node_count, -1, dtype=np.int64)
    for x, lab in scc_label.items():
        labels[x] = lab
    for p in range(og.node_count):
        trail = []
        q = p
        while labels[q] < 0:
            trail.append(q)
            q = int(nxt[q])
            if len(trail) > og.node_count:
                raise RuntimeError("arrow cycle outside the minima")
        labels[trail] = labels[q]
    return labels, choices


def _method3(og: OrientedGraph, minima: MinimaSet) -> LabelMap:
    for k, cur in zeta_states(og):
        if not head_to_tail_nodes(cur):
            break
    else:
        raise RuntimeError("cycles outside the minima survived the fixed point")
    labels, choices = _single_arrow_labels(cur, minima)
    return LabelMap(labels, minima, 3, choices, k)


def _components_labels(og: OrientedGraph, minima: MinimaSet) -> np.ndarray | None:
    """Label weak components if each holds exactly one minimum, else ``None``."""
    comp = og.weak_component_labels()
    per_comp: dict[int, set[int]] = {}
    for m in minima:
        per_comp.setdefault(int(comp[m.nodes[0]]), set()).add(m.label)
    if any(len(s) != 1 for s in per_comp.values()) or len(per_comp) != comp.max() + 1:
        return None
    lookup = np.array([next(iter(per_comp[c])) for c in range(comp.max() + 1)], dtype=np.int64)
    return lookup[comp]


def _method4(og: OrientedGraph, minima: MinimaSet, method: int = 4) -> LabelMap:
    for k, cur in zeta_states(og):
        labels = _components_labels(cur, minima)
        if labels is not None:
            return LabelMap(labels, minima, method, 0, k)
    fallback = _method3(cur, minima)
    return LabelMap(fallback.labels, minima, method, fallback.choices, k + fallback.iterations, True)


def perturb_minima(fg: FloodingGraph, minima: MinimaSet | None = None) -> FloodingGraph:
    """Make all minima altitudes distinct without changing any strict comparison.

    Weights are scaled by ``node_count + 1`` and each minimum adds its label.
    """
    minima = regional_minima_node(fg) if minima is None else minima
    scale = fg.node_count + 1
    n = fg.node_weights.astype(object) * scale
    lab = minima.label_of
    n[lab >= 0] += lab[lab >= 0]
    if any(abs(int(x)) > _BIG for x in n):
        raise OverflowError("weights too large to widen without overflow")
    n = np.array(n, dtype=np.int64)
    base = fg.as_graph().with_weights(node_weights=n, edge_weights=None)
    return FloodingGraph(fg.node_count, fg.edges, n, dilate_nodes_to_edges(base))


def watershed(fg: FloodingGraph, method: int, k=None) -> LabelMap:
    """Partition the nodes of a flooding graph into one region per minimum.

    method 1
        Seeded priority flood on ``fg``; ties go to the first label popped.
    method 2
        ``k`` pruning rounds, transport back onto ``fg``, then method 1.
    method 3
        Prune until no cycle remains outside the minima, then keep the arrow
        to the smallest extremity at each node with several arrows.
    method 4
        Prune until every weakly connected component holds one minimum;
        falls back to method 3 at the fixed point.
    method 5
        Make minima altitudes distinct, then proceed as method 4.
    """
    fg = FloodingGraph.from_graph(fg)
    minima = regional_minima_node(fg)
    if len(minima) == 0:
        raise NoMinima("the graph has no regional minimum")

    if method == 1:
        labels, choices = _priority_flood(fg, minima)
        return LabelMap(labels, minima, 1, choices)
    if method == 2:
        if k is None:
            raise MissingDepth("method 2 needs a pruning depth k")
        k = _check_depth(k)
        if k == INFINITY:
            for k, pruned in zeta_states(orient(fg)):
                pass
        else:
            pruned = zeta_iter(orient(fg), k)
        reduced = transport(pruned, fg)
        inner = regional_minima_node(reduced)
        labels, choices = _priority_flood(reduced, inner)
        labels = _relabel(inner, minima)[labels]
        return LabelMap(labels, minima, 2, choices, k)
    if method == 3:
        return _method3(orient(fg), minima)
    if method == 4:
        return _method4(orient(fg), minima)
    if method == 5:
        widened = perturb_minima(fg, minima)
        wide_minima = regional_minima_node(widened)
        result = _method4(orient(widened), wide_minima, method=5)
        labels = _relabel(wide_minima, minima)[result.labels]
        return LabelMap(labels, minima, 5, result.choices, result.iterations, result.fallback)
    raise ValueError(f"unknown watershed method {method!r}; expected 1..5")
