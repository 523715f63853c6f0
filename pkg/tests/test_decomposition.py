import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from steinerdist.decomposition import (
    Tree,
    classify_shape,
    decompose,
    locate_x,
    prune_to_t_double_prime,
    spanning_subtree,
)
from steinerdist.eccentricity import steiner_profile
from steinerdist.families import build_gk, build_h, pruefer_decode
from steinerdist.graph import Graph, GraphError, path_graph, star_graph, subdivide_edge
from steinerdist.steiner import enumerate_min_steiner_trees, steiner_cost

from .strategies import connected_graphs


@st.composite
def trees(draw, min_n=2, max_n=14):
    n = draw(st.integers(min_n, max_n))
    if n == 2:
        return Tree.from_edges([(0, 1)])
    code = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    return Tree.from_edges(pruefer_decode(code, n))


def h_t1():
    h = build_h()
    v0 = h["v0"]
    d1 = [v0, h["v2"], h["v3"], h["v4"]]
    for t in enumerate_min_steiner_trees(h.graph, d1, limit=2000):
        shape = classify_shape(t, d1, v0)
        if shape.measurements() == (6, 6, 6, 0, 2):
            return h, t, d1, shape
    raise AssertionError("no tree with the expected measurements")


def test_spanning_subtree_star():
    star = Tree.from_edges([(0, 1), (0, 2), (0, 3)])
    sub = spanning_subtree(star, {1, 2})
    assert sub.edges == {(0, 1), (0, 2)} and sub.size == 2


def test_spanning_subtree_single_vertex():
    t = Tree.from_edges([], extra=[4])
    assert spanning_subtree(t, {4}).size == 0
    assert spanning_subtree(Tree.from_edges([(0, 1), (1, 2)]), {2}).vertices == {2}


def test_spanning_subtree_errors():
    t = Tree.from_edges([(0, 1)])
    with pytest.raises(GraphError):
        spanning_subtree(t, {5})
    with pytest.raises(GraphError):
        spanning_subtree(t, set())


@given(trees(), st.data())
def test_spanning_subtree_is_union_of_paths(t, data):
    keep = data.draw(st.sets(st.sampled_from(sorted(t.vertices)), min_size=1))
    ref = nx.Graph(list(t.edges))
    ks = sorted(keep)
    want = {ks[0]}
    for v in ks[1:]:
        want |= set(nx.shortest_path(ref, ks[0], v))
    sub = spanning_subtree(t, keep)
    assert sub.vertices == want
    assert sub.is_tree() and set(sub.leaves) <= keep or sub.size == 0


def test_classify_path():
    t = Tree.from_edges(path_graph(5).edges)
    assert classify_shape(t, [4], 0).kind == "path"


def test_classify_subdivided_claw():
    g = star_graph(3)
    for leaf, t in [(1, 1), (2, 2), (3, 3)]:
        g = subdivide_edge(g, 0, leaf, t)
    tree = Tree.from_edges(g.edges)
    shape = classify_shape(tree, [1, 2, 3], 1)
    # oracle: exactly three leaves and one vertex of degree 3
    assert sorted(tree.degree(v) for v in tree.vertices).count(1) == 3
    assert shape.kind == "spider3" and shape.s == 0
    assert sum(shape.measurements()) == tree.size == 9
    assert shape.marker == 0 and shape.d == 0


def test_classify_spider_with_interior_terminal():
    # legs of length 2, 2 and 3 around 0; terminal 5 sits one step from 0
    tree = Tree.from_edges([(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (6, 7)])
    shape = classify_shape(tree, [2, 4, 5, 7], 2)
    assert shape.kind == "spider3"
    assert (shape.u3, shape.marker) == (7, 5)
    assert (shape.c, shape.d) == (2, 1)
    assert shape.a + shape.b + shape.c + shape.d == 7


def test_classify_other_and_errors():
    claw = Tree.from_edges([(0, 1), (0, 2), (0, 3), (0, 4)])
    assert classify_shape(claw, [1, 2, 3], 0).kind == "other"
    assert classify_shape(claw, [2, 3, 4], 1).kind == "fourleaf"
    with pytest.raises(GraphError):
        classify_shape(claw, [1], 9)


def test_h_t1_measurements_and_prune():
    h, t, d1, shape = h_t1()
    assert t.cost == 20
    assert shape.kind == "fourleaf" and shape.s == shape.t == h["u4"]
    assert shape.ell + sum(shape.measurements()[:4]) == 20
    assert prune_to_t_double_prime(t, shape).size == 14


def test_h_t2_prunes_to_13():
    h = build_h()
    v0 = h["v0"]
    d2 = [v0, h["v1"], h["v3"], h["v4"]]
    for t in enumerate_min_steiner_trees(h.graph, d2, limit=2000):
        shape = classify_shape(t, d2, v0)
        if shape.kind == "fourleaf" and shape.s == h["u3"]:
            assert t.cost == 19
            assert prune_to_t_double_prime(t, shape).size == 13
            return
    raise AssertionError("no star-shaped tree at u3")


def test_prune_identity_when_branch_empty():
    # u3 = s: the branch to prune has no edges
    tree = Tree.from_edges([(0, 1), (1, 2), (2, 3), (2, 4), (1, 5)])
    shape = classify_shape(tree, [3, 4, 5], 0)
    assert shape.kind == "fourleaf"
    pruned = prune_to_t_double_prime(tree, shape)
    assert pruned.size == tree.size - shape.c
    with pytest.raises(ValueError):
        prune_to_t_double_prime(tree, classify_shape(Tree.from_edges(path_graph(3).edges), [2], 0))


def test_prune_keeps_zero_length_leg():
    tree = Tree.from_edges([(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)])
    shape = classify_shape(tree, [2, 4, 5], 0)
    assert (shape.u3, shape.s, shape.c) == (2, 1, 1)
    assert prune_to_t_double_prime(tree, shape).vertices == {0, 1, 3, 4, 5}


def test_decompose_h_default_trees():
    h = build_h()
    g, v0 = h.graph, h["v0"]
    dec = decompose(g, [f"v{j}" for j in range(1, 5)], "v0")
    assert [e.tree.size for e in dec.entries] == [20, 19, 19, 19]
    assert [e.ell for e in dec.entries] == [0, 1, 1, 1]
    # T_1 passes through v0, which then has degree 2 in it
    assert dec.first.index == 1 and dec.first.tree.degree(v0) == 2
    split = locate_x(dec)
    assert (split.x, split.case) == (v0, "branching")


def test_decompose_h_with_enumerated_t1():
    h, t1, d1, shape = h_t1()
    dec = decompose(h.graph, [f"v{j}" for j in range(1, 5)], "v0", trees={1: t1})
    assert dec.entry(1).ell == shape.ell == 2
    assert dec.ordering == (2, 3, 4, 1)
    first = dec.first
    split = locate_x(dec)
    fshape = classify_shape(first.tree, first.terminals, dec.v0)
    assert split.x == fshape.s and split.case == "branching"
    assert split.x not in first.terminals


def test_decompose_rejects_non_minimal_tree():
    g = path_graph(4)
    with pytest.raises(ValueError):
        decompose(g, [1, 3], 0, trees={2: Tree.from_edges([(0, 1), (1, 2), (2, 3)])})
    with pytest.raises(ValueError):
        decompose(g, [1], 0)
    with pytest.raises(GraphError):
        decompose(Graph.from_edge_list(3, [(0, 1)]), [0, 1], 2)


def test_locate_x_in_terminals():
    dec = decompose(path_graph(4), [1, 2, 3], 0)
    assert [e.ell for e in dec.entries] == [2, 1, 1]
    assert dec.first.index == 2
    assert locate_x(dec) == type(locate_x(dec))(1, "in_terminals")


def test_g5_trees_bounded_by_radius():
    h = build_gk(5)
    dec = decompose(h.graph, [f"d{i}" for i in range(1, 6)], "r")
    assert all(e.tree.size <= 6 for e in dec.entries)


def test_v0_inside_d_is_degenerate():
    h = build_gk(5)
    d = h.vertices("d1", "d2", "d3", "d4", "d5")
    dec = decompose(h.graph, d, "d1")
    assert dec.entry(1).terminals == d
    assert dec.entry(1).tree.size == steiner_cost(h.graph, d) == 8


@settings(max_examples=40)
@given(connected_graphs(min_n=3, max_n=8), st.data())
def test_ell_identity_and_tree_radius(g, data):
    k = data.draw(st.integers(2, g.vertex_count - 1))
    prof = steiner_profile(g, k)
    v0 = data.draw(st.sampled_from(sorted(prof.center_vertices)))
    dec = decompose(g, prof.diametral_set, v0)
    for e in dec.entries:
        assert e.ell == e.tree.distance_to_subtree(v0, e.pruned)
        assert e.tree.size == steiner_cost(g, e.terminals)
        assert e.tree.size <= prof.srad
    ells = [e.ell for e in dec.ordered()]
    assert ells == sorted(ells)
    split = locate_x(dec)
    first = dec.first
    assert split.x in first.pruned.vertices
    for w in first.pruned.vertices:
        assert split.x in first.tree.path(v0, w)


@given(trees(min_n=3), st.data())
def test_shape_segments_sum_to_size(t, data):
    leaves = t.leaves
    v0 = data.draw(st.sampled_from(leaves))
    shape = classify_shape(t, [x for x in leaves if x != v0], v0)
    if max(t.degree(v) for v in t.vertices) <= 2:
        assert shape.kind == "path"
    elif len(leaves) == 3:
        assert shape.kind == "spider3"
        assert sum(shape.measurements()) == t.size
    elif len(leaves) == 4:
        assert shape.kind == "fourleaf"
        assert sum(shape.measurements()) == t.size
        assert all(x >= 0 for x in shape.measurements())
        assert shape.ell == t.distance(v0, shape.s)
    else:
        assert shape.kind == "other"
