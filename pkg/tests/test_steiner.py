from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings

from steinerdist.decomposition import Tree
from steinerdist.families import build_gk, build_h
from steinerdist.graph import UNREACHABLE, Graph, GraphError, bfs_distances, cycle_graph, path_graph, star_graph
from steinerdist.steiner import (
    bruteforce_table,
    enumerate_min_steiner_trees,
    steiner_cost,
    steiner_costs,
    steiner_distance,
    steiner_distance_bruteforce,
)

from .strategies import connected_graphs, graphs_with_terminals


def brute_min_trees(g, s):
    """Every minimum Steiner tree, by trying all edge subsets of the optimal size."""
    s = set(s)
    if len(s) == 1:
        return {frozenset()}
    d = steiner_distance_bruteforce(g, s)
    out = set()
    for es in combinations(g.edges, d):
        t = Tree.from_edges(es)
        if t.is_tree() and s <= t.vertices:
            out.add(frozenset(es))
    return out


def assert_valid_witness(g, res):
    t = Tree.of(res)
    assert res.cost == len(res.edges) == len(res.vertices) - 1
    assert set(res.terminals) <= res.vertices
    assert t.is_tree()
    assert all(g.has_edge(u, v) for u, v in res.edges)
    if res.cost > 0:
        assert set(t.leaves) <= set(res.terminals)


def test_singleton():
    res = steiner_distance(cycle_graph(5), [3])
    assert res.cost == 0 and res.edges == frozenset() and res.vertices == {3}


def test_path_two_terminals():
    assert steiner_distance(path_graph(4), [0, 3]).cost == 3
    assert steiner_distance_bruteforce(path_graph(4), [0, 3]) == 3


def test_cycle_three_terminals():
    c5 = cycle_graph(5)
    # oracle first: the only connected W containing {0,2,4} has at least 4 vertices
    assert steiner_distance_bruteforce(c5, [0, 2, 4]) == 3
    res = steiner_distance(c5, [0, 2, 4])
    assert res.cost == 3
    assert_valid_witness(c5, res)


def test_star_leaves():
    star = star_graph(3)
    assert steiner_distance_bruteforce(star, [1, 2, 3]) == 3
    assert steiner_distance(star, [1, 2, 3]).cost == 3


def test_disconnected():
    g = Graph.from_edge_list(2, [])
    assert steiner_distance_bruteforce(g, [0, 1]) is UNREACHABLE
    res = steiner_distance(g, [0, 1])
    assert res.cost is UNREACHABLE and not res.edges and not res.vertices
    with pytest.raises(GraphError):
        enumerate_min_steiner_trees(g, [0, 1])


def test_g5_diametral_and_radial_sets():
    h = build_gk(5)
    assert steiner_distance(h.graph, [f"d{i}" for i in range(1, 6)]).cost == 8
    assert steiner_distance(h.graph, ["r", "d1", "d2", "d3", "d4"]).cost == 6


def test_terminal_errors():
    with pytest.raises(GraphError):
        steiner_distance(path_graph(3), [5])
    with pytest.raises(GraphError):
        steiner_distance(path_graph(3), [])
    with pytest.raises(GraphError):
        steiner_distance_bruteforce(path_graph(17), [0, 16])


def test_tie_break_prefers_small_indices():
    c4 = cycle_graph(4)
    assert steiner_distance(c4, [0, 2]).sorted_edges() == [(0, 1), (1, 2)]


def test_enumerate_small_cases():
    assert len(enumerate_min_steiner_trees(path_graph(3), [0, 2])) == 1
    c4 = cycle_graph(4)
    assert len(brute_min_trees(c4, [0, 2])) == 2
    trees = enumerate_min_steiner_trees(c4, [0, 2])
    assert [t.sorted_edges() for t in trees] == [[(0, 1), (1, 2)], [(0, 3), (2, 3)]]
    assert len(enumerate_min_steiner_trees(c4, [0, 2], limit=1)) == 1


def test_enumerate_h_contains_u3_star():
    h = build_h()
    g = h.graph
    d2 = ["v0", "v1", "v3", "v4"]
    trees = enumerate_min_steiner_trees(g, d2, limit=50)
    assert all(t.cost == 19 for t in trees)
    stars = [t for t in trees if Tree.of(t).degree(h["u3"]) == 4]
    assert stars


@settings(max_examples=80)
@given(graphs_with_terminals(max_n=7, min_q=1))
def test_dp_matches_bruteforce(case):
    g, s = case
    want = steiner_distance_bruteforce(g, s)
    res = steiner_distance(g, s)
    assert res.cost == want == steiner_cost(g, s)
    assert_valid_witness(g, res)
    assert steiner_costs(g, np.array([s]))[0] == want


@settings(max_examples=40)
@given(graphs_with_terminals(max_n=6, min_q=1))
def test_enumeration_matches_edge_subset_bruteforce(case):
    g, s = case
    want = brute_min_trees(g, s)
    got = enumerate_min_steiner_trees(g, s, limit=10_000)
    assert {t.edges for t in got} == want
    for t in got:
        assert_valid_witness(g, t)


@given(connected_graphs(min_n=2, max_n=8))
def test_pair_reduces_to_distance(g):
    for u, v in combinations(range(g.vertex_count), 2):
        assert steiner_distance(g, [u, v]).cost == bfs_distances(g, u)[v]


@given(graphs_with_terminals(min_n=2, max_n=8, min_q=2))
def test_monotone_and_lower_bound(case):
    g, s = case
    d = steiner_cost(g, s)
    assert d >= len(s) - 1
    for drop in s:
        assert steiner_cost(g, [x for x in s if x != drop]) <= d


@given(graphs_with_terminals(max_n=7, min_q=2))
def test_deterministic(case):
    g, s = case
    assert steiner_distance(g, s) == steiner_distance(g, s)


@given(connected_graphs(min_n=1, max_n=7))
def test_table_matches_per_set_bruteforce(g):
    table = bruteforce_table(g)
    n = g.vertex_count
    for mask in range(1, 1 << n):
        s = [v for v in range(n) if mask >> v & 1]
        assert table[mask] == steiner_distance_bruteforce(g, s)


def test_batched_costs_on_h():
    h = build_h()
    g = h.graph
    rows = np.array([[h[x] for x in ("v1", "v2", "v3", "v4")], [h["v0"], h["v2"], h["v3"], h["v4"]]])
    assert list(steiner_costs(g, rows)) == [26, 20]
