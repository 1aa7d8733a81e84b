"""Regional minima, flooding paths and chains, catchment basins, flooding graphs."""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .errors import IsolatedNode, NotAFloodingGraph
from .graph import Edge, WeightedGraph, component_labels, edge_key
from .morphology import (
    dilate_nodes_to_edges,
    erode_edges_to_nodes,
    invariant_edge_mask,
)


@dataclass(frozen=True)
class Minimum:
    label: int
    nodes: tuple[int, ...]
    edges: frozenset[Edge]
    altitude: int


@dataclass(frozen=True)
class MinimaSet:
    """Regional minima labelled by ascending ``(altitude, smallest node)``."""

    minima: tuple[Minimum, ...]
    node_count: int

    @classmethod
    def from_groups(cls, node_count: int, groups) -> MinimaSet:
        """``groups`` yields ``(altitude, nodes, edges)`` triples in any order."""
        ordered = sorted(
            ((int(alt), tuple(sorted(int(x) for x in nodes)), frozenset(edges)) for alt, nodes, edges in groups),
            key=lambda t: (t[0], t[1][0]),
        )
        return cls(
            tuple(Minimum(k, nodes, edges, alt) for k, (alt, nodes, edges) in enumerate(ordered)),
            node_count,
        )

    def __len__(self):
        return len(self.minima)

    def __iter__(self):
        return iter(self.minima)

    def __getitem__(self, label: int) -> Minimum:
        return self.minima[label]

    def node_sets(self) -> list[frozenset[int]]:
        return [frozenset(m.nodes) for m in self.minima]

    @cached_property
    def label_of(self) -> np.ndarray:
        """Minimum label per node, ``-1`` outside every minimum."""
        out = np.full(self.node_count, -1, dtype=np.int64)
        for m in self.minima:
            out[list(m.nodes)] = m.label
        return out


@dataclass(frozen=True)
class BasinCover:
    """Catchment basin of every minimum; basins may overlap."""

    minima: MinimaSet
    basins: tuple[tuple[int, ...], ...]

    @cached_property
    def membership(self) -> tuple[tuple[int, ...], ...]:
        """Sorted tuple of basin labels for each node."""
        out: list[list[int]] = [[] for _ in range(self.minima.node_count)]
        for label, nodes in enumerate(self.basins):
            for x in nodes:
                out[x].append(label)
        return tuple(tuple(labels) for labels in out)

    def labels_of(self, node: int) -> tuple[int, ...]:
        return self.membership[node]

    @property
    def overlap(self) -> tuple[int, ...]:
        return tuple(i for i, labels in enumerate(self.membership) if len(labels) > 1)

    def basin_sets(self) -> list[frozenset[int]]:
        return [frozenset(b) for b in self.basins]


# -- regional minima ----------------------------------------------------------


def regional_minima_edge(g: WeightedGraph, e=None) -> MinimaSet:
    """Minima of an edge-weighted graph.

    A flat zone is a maximal set of equal-weight edges connected through shared
    endpoints.  It is a regional minimum when every other edge touching its
    nodes is strictly higher.
    """
    e = g.edge_weights if e is None else np.asarray(e, dtype=np.int64)
    m = g.edge_count
    if m == 0:
        return MinimaSet((), g.node_count)

    inc_node, inc_edge = g.incidence()
    # consecutive incidences of one node with equal weight link their edges
    order = np.lexsort((e[inc_edge], inc_node))
    nodes_s, edges_s = inc_node[order], inc_edge[order]
    w_s = e[edges_s]
    link = (nodes_s[1:] == nodes_s[:-1]) & (w_s[1:] == w_s[:-1])
    a, b = edges_s[:-1][link], edges_s[1:][link]
    zone_graph = coo_matrix((np.ones(len(a), dtype=np.int8), (a, b)), shape=(m, m))
    _, zone = _cc(zone_graph, directed=False)

    lowest = np.full(g.node_count, np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(lowest, inc_node, e[inc_edge])
    u, v = g.edges[:, 0], g.edges[:, 1]
    edge_ok = (lowest[u] == e) & (lowest[v] == e)
    zone_ok = np.ones(zone.max() + 1, dtype=bool)
    np.logical_and.at(zone_ok, zone, edge_ok)

    groups = []
    for z in np.flatnonzero(zone_ok):
        members = np.flatnonzero(zone == z)
        nodes = np.unique(g.edges[members])
        groups.append((e[members[0]], nodes.tolist(), map(tuple, g.edges[members].tolist())))
    return MinimaSet.from_groups(g.node_count, groups)


def regional_minima_node(g: WeightedGraph, n=None) -> MinimaSet:
    """Minima of a node-weighted graph: flat zones with no lower neighbour.

    Singleton minima are allowed.  The edges of a minimum are all edges of
    ``g`` with both endpoints inside it, loops included.
    """
    n = g.node_weights if n is None else np.asarray(n, dtype=np.int64)
    u, v = g.edges[:, 0], g.edges[:, 1]
    flat = n[u] == n[v]
    zone = component_labels(g, flat)

    has_lower = np.zeros(g.node_count, dtype=bool)
    has_lower[u[n[v] < n[u]]] = True
    has_lower[v[n[u] < n[v]]] = True
    zone_has_lower = np.zeros(zone.max() + 1 if g.node_count else 0, dtype=bool)
    np.logical_or.at(zone_has_lower, zone, has_lower)

    groups = []
    for z in np.flatnonzero(~zone_has_lower):
        nodes = np.flatnonzero(zone == z)
        inside = (zone[u] == z) & (zone[v] == z)
        groups.append((n[nodes[0]], nodes.tolist(), map(tuple, g.edges[inside].tolist())))
    return MinimaSet.from_groups(g.node_count, groups)


# -- flooding paths and chains -------------------------------------------------


def _orient_chain(chain: Sequence[Sequence[int]], start: int | None) -> list[tuple[int, int]] | None:
    steps = []
    cur = start
    for a, b in chain:
        a, b = int(a), int(b)
        if cur is None:
            cur = a
        if a == cur:
            steps.append((a, b))
            cur = b
        elif b == cur:
            steps.append((b, a))
            cur = a
        else:
            return None
    return steps


def is_flooding_chain(g: WeightedGraph, e, chain: Sequence[Sequence[int]], start: int | None = None) -> bool:
    """True iff ``chain`` is a flooding chain of the edge weights ``e``.

    Edges are traversed in the order written; each pair ``(a, b)`` is entered
    at ``a`` unless ``start`` fixes the first entry node, in which case every
    edge is oriented to follow on from the previous one.  Each edge must be a
    lowest edge of its entry node and weights must never increase.
    """
    e = g.edge_weights if e is None else np.asarray(e, dtype=np.int64)
    steps = _orient_chain(chain, start)
    if steps is None:
        return False
    prev = None
    for a, b in steps:
        if not g.has_edge(a, b):
            return False
        w = e[g.edge_index(a, b)]
        if w != e[g.incident_edges(a)].min():
            return False
        if prev is not None and w > prev:
            return False
        prev = w
    return True


def is_flooding_path(g: WeightedGraph, n, path: Sequence[int]) -> bool:
    """True iff consecutive nodes are linked by an edge and weights never increase.

    Staying on a node is a step only when that node carries a loop.
    """
    n = g.node_weights if n is None else np.asarray(n, dtype=np.int64)
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b) or n[b] > n[a]:
            return False
    return True


# -- flooding graph construction ----------------------------------------------


def lowest_edge_restrict(g: WeightedGraph, e=None) -> WeightedGraph:
    """Drop every edge that is a lowest incident edge of neither endpoint."""
    e = g.edge_weights if e is None else np.asarray(e, dtype=np.int64)
    deg = g.degrees()
    if (deg == 0).any():
        raise IsolatedNode(int(np.flatnonzero(deg == 0)[0]))
    return g.with_weights(edge_weights=e).with_edges(invariant_edge_mask(g, e))


def add_minima_loops(g: WeightedGraph, n=None) -> WeightedGraph:
    """Add a loop on every single-node regional minimum that lacks one."""
    n = g.node_weights if n is None else np.asarray(n, dtype=np.int64)
    base = g.with_weights(node_weights=n)
    loops = [
        (m.nodes[0], m.nodes[0])
        for m in regional_minima_node(base)
        if len(m.nodes) == 1 and not g.has_edge(m.nodes[0], m.nodes[0])
    ]
    if not loops:
        return base
    weights = None if g.edge_weights is None else [n[i] for i, _ in loops]
    return base.with_extra_edges(loops, weights)


class FloodingGraph(WeightedGraph):
    """A doubly weighted graph whose edge weights dilate from its node weights
    and whose node weights erode from its edge weights."""

    def __init__(self, node_count, edges, node_weights, edge_weights, *, origin=None):
        super().__init__(node_count, edges, node_weights, edge_weights, origin=origin)
        if self.node_weights is None or self.edge_weights is None:
            raise NotAFloodingGraph("a flooding graph carries both node and edge weights")
        if not np.array_equal(dilate_nodes_to_edges(self), self.edge_weights):
            bad = np.flatnonzero(dilate_nodes_to_edges(self) != self.edge_weights)[0]
            raise NotAFloodingGraph(f"edge {tuple(self.edges[bad].tolist())} is not the max of its endpoints")
        try:
            eroded = erode_edges_to_nodes(self)
        except IsolatedNode as exc:
            raise NotAFloodingGraph(str(exc)) from None
        if not np.array_equal(eroded, self.node_weights):
            bad = int(np.flatnonzero(eroded != self.node_weights)[0])
            raise NotAFloodingGraph(f"node {bad} differs from its lowest incident edge")

    @classmethod
    def from_graph(cls, g: WeightedGraph) -> FloodingGraph:
        if isinstance(g, FloodingGraph):
            return g
        return cls(g.node_count, g.edges, g.node_weights, g.edge_weights, origin=g.origin)

    def as_graph(self) -> WeightedGraph:
        return WeightedGraph(self.node_count, self.edges, self.node_weights, self.edge_weights)


def flooding_graph_from_edges(g: WeightedGraph, e=None) -> FloodingGraph:
    restricted = lowest_edge_restrict(g, e)
    n = erode_edges_to_nodes(restricted)
    return FloodingGraph(restricted.node_count, restricted.edges, n, restricted.edge_weights)


def flooding_graph_from_nodes(g: WeightedGraph, n=None) -> FloodingGraph:
    looped = add_minima_loops(g, n)
    e = dilate_nodes_to_edges(looped)
    return FloodingGraph(looped.node_count, looped.edges, looped.node_weights, e)


def is_flooding_graph(g: WeightedGraph) -> bool:
    try:
        FloodingGraph.from_graph(g)
    except NotAFloodingGraph:
        return False
    return True


# -- catchment basins -----------------------------------------------------------


def _reverse_reach(neighbors, seeds, admissible) -> list[int]:
    seen = set(seeds)
    queue = deque(seeds)
    while queue:
        v = queue.popleft()
        for u in neighbors[v]:
            if u not in seen and admissible(u, v):
                seen.add(u)
                queue.append(u)
    return sorted(seen)


def catchment_basins(g: WeightedGraph) -> BasinCover:
    """Nodes from which a non-ascending path reaches each regional minimum.

    Uses the node weights, so on a flooding graph this equals the basins
    defined through flooding chains on the edge weights.
    """
    n = g.node_weights
    minima = regional_minima_node(g)
    neighbors: list[list[int]] = [[] for _ in range(g.node_count)]
    for a, b in g.edges.tolist():
        if a != b:
            neighbors[a].append(b)
            neighbors[b].append(a)
    basins = tuple(
        tuple(_reverse_reach(neighbors, list(m.nodes), lambda u, v: n[u] >= n[v]))
        for m in minima
    )
    return BasinCover(minima, basins)


def spanning_edges(g: WeightedGraph, nodes) -> frozenset[Edge]:
    """Edges of ``g`` with both endpoints in ``nodes``."""
    inside = set(int(x) for x in nodes)
    return frozenset(edge_key(a, b) for a, b in g.edges.tolist() if a in inside and b in inside)
