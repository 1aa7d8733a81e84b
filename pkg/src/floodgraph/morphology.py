"""Erosions and dilations between node weights and edge (or arrow) weights.

Naming follows the direction of the operator: ``erode_edges_to_nodes`` reads
edge weights and writes node weights.  The pair
(``erode_edges_to_nodes``, ``dilate_nodes_to_edges``) is the flooding
adjunction; composing it gives the edge opening and the node closing.

All operators return fresh ``int64`` arrays and never modify their input.
A loop ``(i, i)`` is one incident edge of ``i``.
"""

from __future__ import annotations

import numpy as np

from .errors import IsolatedNode, NoOutgoingArrow
from .graph import Edge, WeightedGraph
from .oriented import OrientedGraph


def _edge_map(g: WeightedGraph, e) -> np.ndarray:
    e = g.edge_weights if e is None else np.asarray(e, dtype=np.int64)
    if e is None or e.shape != (g.edge_count,):
        raise ValueError("an edge weight array aligned with g.edges is required")
    return e


def _node_map(g: WeightedGraph, n) -> np.ndarray:
    n = g.node_weights if n is None else np.asarray(n, dtype=np.int64)
    if n is None or n.shape != (g.node_count,):
        raise ValueError("a node weight array aligned with the nodes is required")
    return n


def _reduce_incident(g: WeightedGraph, e: np.ndarray, ufunc) -> np.ndarray:
    deg = g.degrees()
    if g.node_count and (deg == 0).any():
        raise IsolatedNode(int(np.flatnonzero(deg == 0)[0]))
    if g.node_count == 0:
        return np.zeros(0, dtype=np.int64)
    _, inc_edge = g.incidence()
    return ufunc.reduceat(e[inc_edge], g.incidence_offsets()[:-1])


def erode_edges_to_nodes(g: WeightedGraph, e=None) -> np.ndarray:
    """Each node gets the lowest weight among its incident edges."""
    return _reduce_incident(g, _edge_map(g, e), np.minimum)


def dilate_edges_to_nodes(g: WeightedGraph, e=None) -> np.ndarray:
    """Each node gets the highest weight among its incident edges."""
    return _reduce_incident(g, _edge_map(g, e), np.maximum)


def dilate_nodes_to_edges(g: WeightedGraph, n=None) -> np.ndarray:
    n = _node_map(g, n)
    return np.maximum(n[g.edges[:, 0]], n[g.edges[:, 1]])


def erode_nodes_to_edges(g: WeightedGraph, n=None) -> np.ndarray:
    n = _node_map(g, n)
    return np.minimum(n[g.edges[:, 0]], n[g.edges[:, 1]])


def opening_edges(g: WeightedGraph, e=None) -> np.ndarray:
    """Edge opening: erode to the nodes, then dilate back to the edges."""
    return dilate_nodes_to_edges(g, erode_edges_to_nodes(g, e))


def closing_nodes(g: WeightedGraph, n=None) -> np.ndarray:
    """Node closing: dilate to the edges, then erode back to the nodes."""
    return erode_edges_to_nodes(g, dilate_nodes_to_edges(g, n))


def invariant_edge_mask(g: WeightedGraph, e=None) -> np.ndarray:
    """Boolean mask of edges that are a lowest incident edge of one endpoint.

    Computed from per-node minima directly, so unlike ``opening_edges`` it also
    works when the graph has isolated nodes.
    """
    e = _edge_map(g, e)
    lowest = np.full(g.node_count, np.iinfo(np.int64).max, dtype=np.int64)
    inc_node, inc_edge = g.incidence()
    np.minimum.at(lowest, inc_node, e[inc_edge])
    u, v = g.edges[:, 0], g.edges[:, 1]
    return (e == lowest[u]) | (e == lowest[v])


def invariant_edges(g: WeightedGraph, e=None) -> frozenset[Edge]:
    mask = invariant_edge_mask(g, e)
    return frozenset(map(tuple, g.edges[mask].tolist()))


# -- oriented counterparts ----------------------------------------------------


def arrow_erosion(og: OrientedGraph, w=None) -> np.ndarray:
    """Each node gets the lowest weight among the arrows it is the origin of."""
    w = og.arrow_weights if w is None else np.asarray(w, dtype=np.int64)
    out_deg = og.out_degree()
    if og.node_count and (out_deg == 0).any():
        raise NoOutgoingArrow(int(np.flatnonzero(out_deg == 0)[0]))
    out = np.full(og.node_count, np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(out, og.origins, w)
    return out


def arrow_dilation(og: OrientedGraph, n=None) -> np.ndarray:
    """Each arrow gets the weight of its origin."""
    n = og.node_weights if n is None else np.asarray(n, dtype=np.int64)
    return n[og.origins].copy()


def arrow_dual_erosion(og: OrientedGraph, n=None) -> np.ndarray:
    """Each arrow gets the weight of its extremity."""
    n = og.node_weights if n is None else np.asarray(n, dtype=np.int64)
    return n[og.extremities].copy()
