"""Undirected weighted graph model and elementary queries.

Nodes are dense integers ``0 .. node_count-1``.  Edges are unordered pairs
stored as ``(min, max)`` rows of an ``(m, 2)`` array, in insertion order;
loops ``(i, i)`` are ordinary edges.  Weight maps are ``int64`` arrays aligned
with node ids and edge rows, or ``None`` when the map is absent.

Graphs are treated as immutable: every transformation returns a new graph.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .errors import DanglingEndpoint, DuplicateEdge, PartialWeightMap, UnknownNode

Edge = tuple[int, int]
WeightsLike = Sequence[int] | np.ndarray | Mapping


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


class WeightedGraph:
    """An undirected graph (loops allowed) with optional node and edge weights."""

    def __init__(
        self,
        node_count: int,
        edges: Iterable[Sequence[int]] | np.ndarray = (),
        node_weights: WeightsLike | None = None,
        edge_weights: WeightsLike | None = None,
        *,
        origin: np.ndarray | None = None,
    ):
        if node_count < 0:
            raise ValueError("node_count must be non-negative")
        self.node_count = int(node_count)

        rows = [edge_key(int(u), int(v)) for u, v in edges]
        index: dict[Edge, int] = {}
        for k, (u, v) in enumerate(rows):
            if u < 0 or v >= self.node_count:
                raise DanglingEndpoint(f"edge ({u}, {v}) has an endpoint outside [0, {self.node_count})")
            if (u, v) in index:
                raise DuplicateEdge(f"edge ({u}, {v}) given twice")
            index[(u, v)] = k
        self._index = index
        self.edges = np.array(rows, dtype=np.int64).reshape(-1, 2)
        self.edges.setflags(write=False)

        self.node_weights = self._weight_array(node_weights, self.node_count, "node", None)
        self.edge_weights = self._weight_array(edge_weights, len(rows), "edge", index)
        self.origin = origin

        # incidence lists in CSR form; a loop contributes one entry
        u, v = self.edges[:, 0], self.edges[:, 1]
        eid = np.arange(len(rows), dtype=np.int64)
        not_loop = u != v
        inc_node = np.concatenate([u, v[not_loop]])
        inc_edge = np.concatenate([eid, eid[not_loop]])
        order = np.lexsort((inc_edge, inc_node))
        self._inc_node = inc_node[order]
        self._inc_edge = inc_edge[order]
        self._inc_ptr = np.searchsorted(self._inc_node, np.arange(self.node_count + 1))

    @staticmethod
    def _weight_array(weights, size, what, index):
        if weights is None:
            return None
        if isinstance(weights, Mapping):
            arr = np.zeros(size, dtype=np.int64)
            seen = np.zeros(size, dtype=bool)
            for key, w in weights.items():
                if index is None:
                    pos = int(key)
                    if not 0 <= pos < size:
                        raise UnknownNode(f"weight given for unknown node {pos}")
                else:
                    pos = index.get(edge_key(*key))
                    if pos is None:
                        raise PartialWeightMap(f"weight given for unknown edge {tuple(key)}")
                arr[pos] = w
                seen[pos] = True
            if not seen.all():
                missing = int(np.flatnonzero(~seen)[0])
                raise PartialWeightMap(f"{what} weight map misses {what} {missing}")
        else:
            arr = np.asarray(weights, dtype=np.int64).copy()
            if arr.shape != (size,):
                raise PartialWeightMap(f"{what} weight map has {arr.size} entries, expected {size}")
        arr.setflags(write=False)
        return arr

    # -- basic queries -----------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_index(self, u: int, v: int) -> int:
        try:
            return self._index[edge_key(u, v)]
        except KeyError:
            raise KeyError(f"no edge ({u}, {v})") from None

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._index

    def incident_edges(self, i: int) -> np.ndarray:
        return self._inc_edge[self._inc_ptr[i]:self._inc_ptr[i + 1]]

    def neighbors(self, i: int) -> np.ndarray:
        """Other endpoint of every incident edge (``i`` itself for a loop)."""
        e = self.edges[self.incident_edges(i)]
        return np.where(e[:, 0] == i, e[:, 1], e[:, 0])

    def degree(self, i: int) -> int:
        return int(self._inc_ptr[i + 1] - self._inc_ptr[i])

    def degrees(self) -> np.ndarray:
        return np.diff(self._inc_ptr)

    def incidence(self) -> tuple[np.ndarray, np.ndarray]:
        """Flat ``(node, edge)`` incidence pairs, sorted by node."""
        return self._inc_node, self._inc_edge

    def incidence_offsets(self) -> np.ndarray:
        """CSR offsets: node ``i`` owns incidence slots ``[off[i], off[i+1])``."""
        return self._inc_ptr

    def is_loop(self) -> np.ndarray:
        return self.edges[:, 0] == self.edges[:, 1]

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self._index)

    def edge_weight_map(self) -> dict[Edge, int]:
        if self.edge_weights is None:
            return {}
        return {e: int(self.edge_weights[k]) for e, k in self._index.items()}

    # -- derived graphs ----------------------------------------------------

    def with_weights(self, node_weights=..., edge_weights=...) -> WeightedGraph:
        """Same structure with replaced weight maps (``...`` keeps the current one)."""
        return WeightedGraph(
            self.node_count,
            self.edges,
            self.node_weights if node_weights is ... else node_weights,
            self.edge_weights if edge_weights is ... else edge_weights,
            origin=self.origin,
        )

    def with_edges(self, keep) -> WeightedGraph:
        """Partial graph over the same nodes, keeping the edges selected by ``keep``.

        ``keep`` is a boolean mask or an index array over the edge rows.
        """
        keep = np.asarray(keep)
        if keep.dtype == bool:
            keep = np.flatnonzero(keep)
        keep = np.sort(keep.astype(np.int64))
        ew = None if self.edge_weights is None else self.edge_weights[keep]
        return WeightedGraph(self.node_count, self.edges[keep], self.node_weights, ew, origin=self.origin)

    def with_extra_edges(self, edges: Sequence[Edge], weights: Sequence[int] | None = None) -> WeightedGraph:
        all_edges = np.concatenate([self.edges, np.array(edges, dtype=np.int64).reshape(-1, 2)])
        ew = None
        if self.edge_weights is not None:
            if weights is None:
                raise PartialWeightMap("new edges need weights when the graph is edge weighted")
            ew = np.concatenate([self.edge_weights, np.asarray(weights, dtype=np.int64)])
        return WeightedGraph(self.node_count, all_edges, self.node_weights, ew, origin=self.origin)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and np.array_equal(self.edges, other.edges)
            and _same_map(self.node_weights, other.node_weights)
            and _same_map(self.edge_weights, other.edge_weights)
        )

    __hash__ = None

    def __repr__(self):
        flags = []
        if self.node_weights is not None:
            flags.append("node-weighted")
        if self.edge_weights is not None:
            flags.append("edge-weighted")
        desc = ", ".join(flags) or "unweighted"
        return f"<{type(self).__name__} {self.node_count} nodes, {self.edge_count} edges, {desc}>"


def _same_map(a, b) -> bool:
    # a total map over no elements says nothing more than an absent one
    if a is None or b is None:
        return (a is None or a.size == 0) and (b is None or b.size == 0)
    return np.array_equal(a, b)


def build_graph(node_count, edges, node_weights=None, edge_weights=None) -> WeightedGraph:
    """Build a graph, validating endpoints, uniqueness and weight-map totality.

    >>> g = build_graph(2, [(0, 1)], edge_weights={(0, 1): 5})
    >>> g.degree(0), g.degree(1)
    (1, 1)
    """
    return WeightedGraph(node_count, edges, node_weights, edge_weights)


def _check_nodes(g: WeightedGraph, nodes: Iterable[int]) -> np.ndarray:
    arr = np.fromiter((int(x) for x in nodes), dtype=np.int64)
    bad = arr[(arr < 0) | (arr >= g.node_count)]
    if bad.size:
        raise UnknownNode(f"node {int(bad[0])} is not in the graph")
    return arr


def node_mask(g: WeightedGraph, nodes: Iterable[int]) -> np.ndarray:
    mask = np.zeros(g.node_count, dtype=bool)
    mask[_check_nodes(g, nodes)] = True
    return mask


def cocycle(g: WeightedGraph, nodes: Iterable[int]) -> frozenset[Edge]:
    """Edges with exactly one endpoint in ``nodes``.  Loops never qualify."""
    inside = node_mask(g, nodes)
    crossing = inside[g.edges[:, 0]] != inside[g.edges[:, 1]]
    return frozenset(map(tuple, g.edges[crossing].tolist()))


def component_labels(g: WeightedGraph, edge_mask: np.ndarray | None = None) -> np.ndarray:
    """Component id per node, numbered in order of each component's smallest node."""
    e = g.edges if edge_mask is None else g.edges[edge_mask]
    n = g.node_count
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    adj = coo_matrix((np.ones(len(e), dtype=np.int8), (e[:, 0], e[:, 1])), shape=(n, n))
    _, raw = _cc(adj, directed=False)
    # renumber by first occurrence so the output does not depend on scipy internals
    _, first = np.unique(raw, return_index=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first)] = np.arange(len(first))
    return rank[raw]


def connected_components(
    g: WeightedGraph,
    edge_filter: Callable[[int], bool] | np.ndarray | None = None,
) -> list[tuple[int, ...]]:
    """Partition of the nodes into connected components.

    ``edge_filter`` restricts the usable edges; it is either a boolean mask over
    edge rows or a predicate on the edge index.  Components are returned as
    sorted node tuples, ordered by their smallest node.
    """
    if edge_filter is not None and not isinstance(edge_filter, np.ndarray):
        edge_filter = np.array([bool(edge_filter(k)) for k in range(g.edge_count)], dtype=bool)
    labels = component_labels(g, edge_filter)
    groups: dict[int, list[int]] = {}
    for node, lab in enumerate(labels.tolist()):
        groups.setdefault(lab, []).append(node)
    return [tuple(groups[k]) for k in sorted(groups)]


def subgraph_spanning(g: WeightedGraph, nodes: Iterable[int]) -> WeightedGraph:
    """The subgraph induced by ``nodes``, renumbered densely in ascending order.

    ``result.origin[i]`` gives the id in ``g`` of the subgraph's node ``i``.
    """
    keep = np.flatnonzero(node_mask(g, nodes))
    new_id = np.full(g.node_count, -1, dtype=np.int64)
    new_id[keep] = np.arange(len(keep))
    inside = (new_id[g.edges[:, 0]] >= 0) & (new_id[g.edges[:, 1]] >= 0)
    edges = new_id[g.edges[inside]]
    nw = None if g.node_weights is None else g.node_weights[keep]
    ew = None if g.edge_weights is None else g.edge_weights[inside]
    origin = keep if g.origin is None else g.origin[keep]
    return WeightedGraph(len(keep), edges, nw, ew, origin=origin)
