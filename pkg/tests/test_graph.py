import numpy as np
import pytest
from hypothesis import given

from floodgraph import oracle
from floodgraph.errors import DanglingEndpoint, DuplicateEdge, PartialWeightMap, UnknownNode
from floodgraph.graph import (
    WeightedGraph,
    build_graph,
    cocycle,
    component_labels,
    connected_components,
    subgraph_spanning,
)

from conftest import graphs


def test_edges_are_normalized_and_ordered():
    g = WeightedGraph(3, [(2, 1), (0, 1)], edge_weights=[5, 7])
    assert g.edges.tolist() == [[1, 2], [0, 1]]
    assert g.edge_weight_map() == {(1, 2): 5, (0, 1): 7}
    assert g.edge_index(2, 1) == 0


def test_weights_from_mappings():
    g = WeightedGraph(3, [(0, 1), (1, 2)], node_weights={0: 4, 1: 2, 2: 9}, edge_weights={(2, 1): 3, (0, 1): 1})
    assert g.node_weights.tolist() == [4, 2, 9]
    assert g.edge_weights.tolist() == [1, 3]


@pytest.mark.parametrize(
    "kwargs, error",
    [
        (dict(edges=[(0, 1), (1, 0)]), DuplicateEdge),
        (dict(edges=[(0, 5)]), DanglingEndpoint),
        (dict(edges=[(0, 1)], node_weights={0: 1}), PartialWeightMap),
        (dict(edges=[(0, 1)], node_weights={7: 1}), UnknownNode),
        (dict(edges=[(0, 1), (1, 2)], edge_weights=[1]), PartialWeightMap),
    ],
)
def test_construction_errors(kwargs, error):
    with pytest.raises(error):
        build_graph(3, **kwargs)


def test_weights_are_read_only():
    g = WeightedGraph(2, [(0, 1)], node_weights=[1, 2])
    with pytest.raises(ValueError):
        g.node_weights[0] = 5


def test_loop_counts_once():
    g = WeightedGraph(2, [(0, 0), (0, 1)])
    assert g.degree(0) == 2
    assert sorted(g.neighbors(0).tolist()) == [0, 1]
    assert g.is_loop().tolist() == [True, False]


def test_cocycle_excludes_inner_edges_and_loops():
    g = WeightedGraph(4, [(0, 1), (1, 2), (2, 3), (1, 1)])
    assert cocycle(g, [0, 1]) == {(1, 2)}
    assert cocycle(g, []) == frozenset()


def test_components_and_spanning_subgraph():
    g = WeightedGraph(5, [(0, 1), (3, 4)], node_weights=[5, 6, 7, 8, 9])
    assert connected_components(g) == [(0, 1), (2,), (3, 4)]
    sub = subgraph_spanning(g, [3, 4])
    assert sub.node_count == 2
    assert sub.edges.tolist() == [[0, 1]]
    assert sub.node_weights.tolist() == [8, 9]
    assert sub.origin.tolist() == [3, 4]


def test_structural_equality():
    a = WeightedGraph(2, [(0, 1)], edge_weights=[3])
    assert a == WeightedGraph(2, [(1, 0)], edge_weights=[3])
    assert a != WeightedGraph(2, [(0, 1)], edge_weights=[4])
    assert a != WeightedGraph(2, [(0, 1)])


@given(graphs("node", max_nodes=10, loops=True))
def test_component_labels_match_dfs(g):
    labels = component_labels(g)
    groups = {}
    for i, lab in enumerate(labels.tolist()):
        groups.setdefault(lab, set()).add(i)
    assert sorted(map(sorted, groups.values())) == sorted(map(sorted, oracle.components_oracle(g)))
    # labels are numbered by smallest member
    firsts = [min(groups[k]) for k in sorted(groups)]
    assert firsts == sorted(firsts)


@given(graphs("edge", max_nodes=8, loops=True))
def test_with_edges_keeps_weights_aligned(g):
    keep = np.arange(g.edge_count) % 2 == 0
    sub = g.with_edges(keep)
    assert sub.edge_weight_map() == {e: w for e, w in g.edge_weight_map().items() if keep[g.edge_index(*e)]}


def test_empty_weight_map_equals_absent_map():
    assert WeightedGraph(0, node_weights=[]) == WeightedGraph(0)
    assert WeightedGraph(2, [], edge_weights=[]) == WeightedGraph(2)
    assert WeightedGraph(1, node_weights=[0]) != WeightedGraph(1)
