"""Acceptance criteria, one test per criterion.

Each test records its counters with ``record_property``; the terminal summary
prints one PASS/FAIL line per criterion together with those counters.
"""

from __future__ import annotations

import io

import numpy as np

from floodgraph import fixtures, oracle
from floodgraph.cli import main
from floodgraph.fileio import parse_graph_file, parse_labels, read_pgm, write_graph_file, write_pgm
from floodgraph.flooding import (
    add_minima_loops,
    catchment_basins,
    flooding_graph_from_edges,
    flooding_graph_from_nodes,
    is_flooding_chain,
    is_flooding_path,
    lowest_edge_restrict,
    regional_minima_edge,
    regional_minima_node,
    spanning_edges,
)
from floodgraph.graph import WeightedGraph, component_labels
from floodgraph.morphology import (
    closing_nodes,
    dilate_edges_to_nodes,
    dilate_nodes_to_edges,
    erode_edges_to_nodes,
    erode_nodes_to_edges,
    opening_edges,
)
from floodgraph.pruning import INFINITY, lex_prune, orient, oriented_basins, watershed, zeta_iter

SEED = 1234


def _node_sets(minima):
    return sorted((m.altitude, tuple(m.nodes)) for m in minima)


def _random_maps(rng, g, width=10):
    """A random node map and edge map plus maps sitting exactly on the adjunction boundary."""
    n = rng.integers(0, width, g.node_count)
    e = rng.integers(0, width, g.edge_count)
    return [(n, e), (erode_edges_to_nodes(g, e), e), (n, dilate_nodes_to_edges(g, n))]


# 1 ---------------------------------------------------------------------------------


def test_1_adjunction_suite(record_property):
    rng = np.random.default_rng(SEED)
    graphs = violations = 0
    for _ in range(1000):
        g = fixtures.random_graph(rng, int(rng.integers(1, 13)), kind="edge", loops=True)
        graphs += 1
        for n, e in _random_maps(rng, g):
            # flooding adjunction: eps_ne e >= n  <=>  e >= delta_en n
            lhs = bool((erode_edges_to_nodes(g, e) >= n).all())
            rhs = bool((e >= dilate_nodes_to_edges(g, n)).all())
            violations += lhs != rhs
            # dual pair: delta_ne e <= n  <=>  e <= eps_en n
            lhs = bool((dilate_edges_to_nodes(g, e) <= n).all())
            rhs = bool((e <= erode_nodes_to_edges(g, n)).all())
            violations += lhs != rhs
            o = opening_edges(g, e)
            violations += not (o <= e).all()
            violations += not np.array_equal(opening_edges(g, o), o)
            c = closing_nodes(g, n)
            violations += not (c >= n).all()
            violations += not np.array_equal(closing_nodes(g, c), c)
    record_property("graphs", graphs)
    record_property("violations", violations)
    assert graphs == 1000 and violations == 0


# 2 ---------------------------------------------------------------------------------


def test_2_theorem_suite(record_property):
    rng = np.random.default_rng(SEED + 2)
    failures = []
    for trial in range(500):
        size = int(rng.integers(1, 11))

        # edge weights invariant by the opening: minima edges span the node minima
        h = lowest_edge_restrict(fixtures.random_graph(rng, size, kind="edge", loops=True))
        assert np.array_equal(opening_edges(h), h.edge_weights)
        hn = h.with_weights(node_weights=erode_edges_to_nodes(h))
        if _node_sets(regional_minima_edge(h)) != _node_sets(regional_minima_node(hn)):
            failures.append(("opening", trial))

        # node weights invariant by the closing: spanning edges form the edge minima
        looped = add_minima_loops(fixtures.random_graph(rng, size, kind="node"))
        if looped.degrees().min(initial=1) > 0:
            assert np.array_equal(closing_nodes(looped), looped.node_weights)
            le = looped.with_weights(edge_weights=dilate_nodes_to_edges(looped))
            edge_min = sorted(m.edges for m in regional_minima_edge(le))
            spans = sorted(spanning_edges(looped, m.nodes) for m in regional_minima_node(looped))
            if [sorted(s) for s in edge_min] != [sorted(s) for s in spans]:
                failures.append(("closing", trial))

        # flooding graph: same minima subgraph, same basins, oracle agreement
        fg = fixtures.random_flooding_graph(rng, size)
        node_min, edge_min = regional_minima_node(fg), regional_minima_edge(fg)
        if [(m.nodes, m.edges) for m in node_min] != [(m.nodes, m.edges) for m in edge_min]:
            failures.append(("flooding", trial))
        expected = oracle.minima_oracle(fg, fg.node_weights, "node")
        if [(m.altitude, frozenset(m.nodes)) for m in node_min] != expected:
            failures.append(("oracle node minima", trial))
        if oracle.minima_oracle(fg, fg.edge_weights, "edge") != expected:
            failures.append(("oracle edge minima", trial))
        by_chain = oracle.basins_oracle(fg, fg.edge_weights, "edge")
        by_path = oracle.basins_oracle(fg, fg.node_weights, "node")
        fast = [(frozenset(m.nodes), b) for m, b in zip(node_min, catchment_basins(fg).basin_sets())]
        if not by_chain == by_path == fast:
            failures.append(("basins", trial))
    record_property("flooding_graphs", 500)
    record_property("failures", len(failures))
    assert failures == []


# 3 ---------------------------------------------------------------------------------


def _steps(fg, node):
    return [int(x) for x in fg.neighbors(node)]


def test_3_path_chain_bijection(record_property):
    rng = np.random.default_rng(SEED + 3)
    max_edges = 6
    checked = mismatches = 0
    for _ in range(200):
        fg = fixtures.random_flooding_graph(rng, int(rng.integers(1, 11)))
        n, e = fg.node_weights, fg.edge_weights
        stack = [[s] for s in range(fg.node_count)]
        while stack:
            path = stack.pop()
            chain = list(zip(path, path[1:]))
            as_path = is_flooding_path(fg, n, path)
            as_chain = is_flooding_chain(fg, e, chain, start=path[0])
            checked += 1
            if as_path != as_chain:
                mismatches += 1
            elif as_path:
                # same weight sequence read on the nodes or on the edges
                mismatches += [int(n[a]) for a, _ in chain] != [int(e[fg.edge_index(a, b)]) for a, b in chain]
            # prefixes of non-flooding sequences are never flooding, so stop here
            if (as_path or as_chain) and len(chain) < max_edges:
                stack.extend(path + [y] for y in _steps(fg, path[-1]))
    record_property("sequences", checked)
    record_property("mismatches", mismatches)
    assert mismatches == 0


# 4 ---------------------------------------------------------------------------------


def test_4_two_basin_paths(record_property):
    f1 = fixtures.f1()
    restricted = lowest_edge_restrict(f1)
    assert (1, 2) in f1.edge_set() and (1, 2) not in restricted.edge_set()
    assert restricted.edge_set() == {(0, 1), (2, 3)}
    fg = flooding_graph_from_edges(f1)
    assert len(regional_minima_node(fg)) == len(regional_minima_edge(f1)) == 2
    assert catchment_basins(fg).basin_sets() == [{0, 1}, {2, 3}]

    f2 = fixtures.f2()
    looped = add_minima_loops(f2)
    added = looped.edge_set() - f2.edge_set()
    assert added == {(1, 1)}
    assert np.array_equal(closing_nodes(looped), looped.node_weights)
    assert not np.array_equal(closing_nodes(f2), f2.node_weights)
    record_property("loops_added", len(added))


# 5 ---------------------------------------------------------------------------------


def test_5_depth_ladder(record_property):
    og = orient(flooding_graph_from_nodes(fixtures.ladder()))
    tie = fixtures.LADDER_TIE_NODE
    fast = [len(set(lex_prune(og, k).successors(tie))) for k in (1, 2, 3)]
    brute = [len({q for p, q in oracle.lex_prune_oracle(og, k) if p == tie}) for k in (1, 2, 3)]
    record_property("first_arrows", fast)
    assert fast == brute == [3, 2, 1]


# 6 ---------------------------------------------------------------------------------


def test_6_zeta_soundness(record_property):
    rng = np.random.default_rng(SEED + 6)
    cases = equal = unsound = nest_violations = 0
    for _ in range(300):
        og = orient(fixtures.random_flooding_graph(rng, int(rng.integers(1, 11))))
        pruned = {k: zeta_iter(og, k) for k in range(5)}
        pruned[INFINITY] = zeta_iter(og, INFINITY)
        for k, z in pruned.items():
            brute = oracle.lex_prune_oracle(og, k if k == INFINITY else k + 1)
            cases += 1
            unsound += not z.arrow_set() <= brute
            equal += z.arrow_set() == brute
        depths = list(pruned)
        basins = {k: oriented_basins(pruned[k]).basin_sets() for k in depths}
        for i, k in enumerate(depths):
            for l in depths[i + 1:]:
                nest_violations += sum(not b <= a for a, b in zip(basins[k], basins[l]))
    rate = equal / cases
    record_property("cases", cases)
    record_property("containment_failures", unsound)
    record_property("nesting_violations", nest_violations)
    record_property("equality_rate", f"{rate:.4f}")
    print(f"zeta soundness: {cases} cases, equality with the oracle in {equal} ({rate:.2%})")
    assert unsound == 0 and nest_violations == 0


# 7 ---------------------------------------------------------------------------------


def _region_connected(fg, labels, label):
    region = set(np.flatnonzero(labels == label).tolist())
    keep = [a in region and b in region for a, b in fg.edges.tolist()]
    comps = component_labels(WeightedGraph(fg.node_count, fg.edges), np.array(keep, dtype=bool))
    return len({int(comps[x]) for x in region}) == 1


def _run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_7_watershed_contracts(tmp_path, record_property):
    rng = np.random.default_rng(SEED + 7)
    broken = cli_choices = compared = disagreements = 0
    for trial in range(200):
        fg = fixtures.random_flooding_graph(rng, int(rng.integers(1, 13)))
        minima = regional_minima_node(fg)
        cover = catchment_basins(fg)
        results = {m: watershed(fg, m, k=int(rng.integers(0, 4))) for m in range(1, 6)}
        for r in results.values():
            labels = r.labels
            ok = (labels >= 0).all() and len(labels) == fg.node_count
            ok = ok and all((labels[list(m.nodes)] == m.label).all() for m in minima)
            ok = ok and all(labels[i] in cover.labels_of(i) for i in range(fg.node_count))
            ok = ok and all(_region_connected(fg, labels, m.label) for m in minima)
            broken += not ok
        m5 = results[5]
        broken += m5.choices != 0 or m5.fallback
        if not results[4].fallback:
            compared += 1
            disagreements += not np.array_equal(results[4].labels, m5.labels)

        path = tmp_path / f"g{trial}.txt"
        path.write_bytes(write_graph_file(fg))
        code, out, err = _run_cli("watershed", "--method", "5", "--in", str(path), "--report-choices")
        cli_choices += code != 0 or err != "choices 0\n"
        cli_choices += [labs[0] for labs in parse_labels(out)] != m5.labels.tolist()
    record_property("inputs", 200)
    record_property("contract_violations", broken)
    record_property("cli_choice_reports_nonzero", cli_choices)
    record_property("m4_vs_m5_compared", compared)
    record_property("m4_vs_m5_disagreements", disagreements)
    assert broken == 0 and cli_choices == 0 and disagreements == 0


# 8 ---------------------------------------------------------------------------------


def test_8_cli_io(tmp_path, record_property):
    rng = np.random.default_rng(SEED + 8)
    round_trip_failures = 0
    for _ in range(200):
        size = int(rng.integers(0, 13))
        kind = "edge" if size and rng.random() < 0.5 else "node"
        g = fixtures.random_graph(rng, size, kind=kind, loops=True)
        if rng.random() < 0.3 and size:
            g = flooding_graph_from_nodes(g) if kind == "node" else flooding_graph_from_edges(g)
        round_trip_failures += parse_graph_file(write_graph_file(g)) != g

    pgm_mismatches = 0
    for _ in range(100):
        shape = tuple(rng.integers(1, 9, 2))
        image = rng.integers(0, [256, 65536][rng.integers(2)], shape)
        maxval = int(max(image.max(), 1))
        pgm_mismatches += read_pgm(write_pgm(image, plain=True)) != read_pgm(write_pgm(image, maxval=maxval))

    image = fixtures.ramp_image(16, 16, ridge=8)
    pgm = tmp_path / "ramp.pgm"
    pgm.write_bytes(write_pgm(image))
    code, out, err = _run_cli("watershed", "--method", "4", "--pgm", str(pgm), "--report-choices")
    labels = np.array([labs[0] for labs in parse_labels(out)]).reshape(16, 16)
    # the ridge row drains into the lower rows beneath it
    upper, lower = labels[:8], labels[8:]
    split_ok = (
        code == 0
        and len(np.unique(labels)) == 2
        and len(np.unique(upper)) == 1
        and len(np.unique(lower)) == 1
        and upper[0, 0] != lower[0, 0]
    )
    record_property("round_trip_failures", round_trip_failures)
    record_property("p2_p5_mismatches", pgm_mismatches)
    record_property("ramp_labels", len(np.unique(labels)))
    record_property("ramp_choices", err.strip())
    assert round_trip_failures == 0 and pgm_mismatches == 0 and split_ok
