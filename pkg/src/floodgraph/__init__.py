"""Watersheds on node- or edge-weighted graphs through flooding graphs and
lexicographic pruning."""

from .errors import GraphError
from .flooding import (
    BasinCover,
    FloodingGraph,
    MinimaSet,
    Minimum,
    catchment_basins,
    flooding_graph_from_edges,
    flooding_graph_from_nodes,
    is_flooding_graph,
    regional_minima_edge,
    regional_minima_node,
)
from .graph import WeightedGraph, build_graph
from .oriented import OrientedGraph
from .pruning import (
    INFINITY,
    LabelMap,
    compare_paths,
    lex_prune,
    orient,
    oriented_basins,
    oriented_minima,
    transport,
    watershed,
    zeta,
    zeta_iter,
)

__all__ = [
    "BasinCover",
    "FloodingGraph",
    "GraphError",
    "INFINITY",
    "LabelMap",
    "MinimaSet",
    "Minimum",
    "OrientedGraph",
    "WeightedGraph",
    "build_graph",
    "catchment_basins",
    "compare_paths",
    "flooding_graph_from_edges",
    "flooding_graph_from_nodes",
    "is_flooding_graph",
    "lex_prune",
    "orient",
    "oriented_basins",
    "oriented_minima",
    "regional_minima_edge",
    "regional_minima_node",
    "transport",
    "watershed",
    "zeta",
    "zeta_iter",
]
