"""Oriented graphs: arrows ``p -> q`` with arrow weights and node weights."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _cc

Arrow = tuple[int, int]


@dataclass(frozen=True, eq=False)
class OrientedGraph:
    """Arrow set over ``node_count`` nodes.

    ``arrows`` is an ``(a, 2)`` array of ``(origin, extremity)`` rows; self-arrows
    are allowed.  ``arrow_weights`` is aligned with the rows and
    ``node_weights`` with node ids.
    """

    node_count: int
    arrows: np.ndarray
    arrow_weights: np.ndarray
    node_weights: np.ndarray

    def __post_init__(self):
        arrows = np.asarray(self.arrows, dtype=np.int64).reshape(-1, 2)
        aw = np.asarray(self.arrow_weights, dtype=np.int64)
        nw = np.asarray(self.node_weights, dtype=np.int64)
        if aw.shape != (len(arrows),) or nw.shape != (self.node_count,):
            raise ValueError("weight arrays do not match the arrow and node counts")
        for arr in (arrows, aw, nw):
            arr.setflags(write=False)
        object.__setattr__(self, "arrows", arrows)
        object.__setattr__(self, "arrow_weights", aw)
        object.__setattr__(self, "node_weights", nw)

    @property
    def origins(self) -> np.ndarray:
        return self.arrows[:, 0]

    @property
    def extremities(self) -> np.ndarray:
        return self.arrows[:, 1]

    @property
    def arrow_count(self) -> int:
        return len(self.arrows)

    def arrow_set(self) -> frozenset[Arrow]:
        return frozenset(map(tuple, self.arrows.tolist()))

    def out_degree(self) -> np.ndarray:
        return np.bincount(self.origins, minlength=self.node_count)

    def successors(self, p: int) -> list[int]:
        return self._succ[p]

    def predecessors(self, q: int) -> list[int]:
        return self._pred[q]

    @cached_property
    def _succ(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.node_count)]
        for p, q in self.arrows.tolist():
            out[p].append(q)
        return out

    @cached_property
    def _pred(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.node_count)]
        for p, q in self.arrows.tolist():
            out[q].append(p)
        return out

    @cached_property
    def strong_components(self) -> np.ndarray:
        n = self.node_count
        if n == 0:
            return np.zeros(0, dtype=np.int64)
        a = self.arrows
        adj = coo_matrix((np.ones(len(a), dtype=np.int8), (a[:, 0], a[:, 1])), shape=(n, n))
        return _cc(adj, directed=True, connection="strong")[1]

    @cached_property
    def minimum_mask(self) -> np.ndarray:
        """Nodes lying in a bottom strongly connected component.

        Under property (P) these are exactly the regional minima: arrows leaving a
        minimum never exist, and every other node can still leave its component.
        """
        scc = self.strong_components
        o, x = self.origins, self.extremities
        leaving = np.zeros(scc.max() + 1 if scc.size else 0, dtype=bool)
        leaving[scc[o][scc[o] != scc[x]]] = True
        return ~leaving[scc] if scc.size else np.zeros(0, dtype=bool)

    def weak_component_labels(self) -> np.ndarray:
        n = self.node_count
        a = self.arrows
        adj = coo_matrix((np.ones(len(a), dtype=np.int8), (a[:, 0], a[:, 1])), shape=(n, n))
        return _cc(adj, directed=True, connection="weak")[1]

    def with_arrows(self, keep, arrow_weights=None, node_weights=None) -> OrientedGraph:
        keep = np.asarray(keep)
        aw = self.arrow_weights[keep] if arrow_weights is None else arrow_weights
        nw = self.node_weights if node_weights is None else node_weights
        return OrientedGraph(self.node_count, self.arrows[keep], aw, nw)

    def __repr__(self):
        return f"<OrientedGraph {self.node_count} nodes, {self.arrow_count} arrows>"
