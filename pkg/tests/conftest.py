from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from floodgraph.flooding import flooding_graph_from_edges, flooding_graph_from_nodes
from floodgraph.graph import WeightedGraph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def graphs(draw, kind="node", min_nodes=1, max_nodes=8, loops=False, max_weight=9):
    """Random simple graphs; edge-weighted ones never have isolated nodes."""
    n = draw(st.integers(min_nodes, max_nodes))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if loops:
        pairs += [(i, i) for i in range(n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    if kind == "edge":
        covered = {x for e in edges for x in e}
        for i in range(n):
            if i not in covered:
                j = draw(st.integers(0, n - 1))
                e = (min(i, j), max(i, j))
                if e not in edges:
                    edges.append(e)
                covered |= set(e)
    if kind == "node":
        w = draw(st.lists(st.integers(0, max_weight), min_size=n, max_size=n))
        return WeightedGraph(n, edges, node_weights=w)
    w = draw(st.lists(st.integers(0, max_weight), min_size=len(edges), max_size=len(edges)))
    return WeightedGraph(n, edges, edge_weights=w)


@st.composite
def flooding_graphs(draw, max_nodes=8):
    kind = draw(st.sampled_from(["node", "edge"]))
    g = draw(graphs(kind, max_nodes=max_nodes))
    return flooding_graph_from_edges(g) if kind == "edge" else flooding_graph_from_nodes(g)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# -- acceptance report -------------------------------------------------------------

_ACCEPTANCE: list[tuple[str, str, list]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE.append((name, report.outcome.upper(), list(report.user_properties)))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, props in _ACCEPTANCE:
        verdict = "PASS" if outcome == "PASSED" else "FAIL"
        extra = "  ".join(f"{k}={v}" for k, v in props)
        terminalreporter.write_line(f"{verdict}  {name}" + (f"  [{extra}]" if extra else ""))
