import importlib
import logging
from collections import defaultdict
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from steinerdist.families import EnsembleConfig
from steinerdist.scan import all_graphs, canonical_form, connected_graphs, ratio_scan, seeded_corpus

scan_mod = importlib.import_module("steinerdist.scan")


def adj_masks(n, edges):
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def test_corpus_small_counts():
    corpus = seeded_corpus(4)
    assert [sum(g.vertex_count == n for g in corpus) for n in range(1, 5)] == [1, 1, 2, 6]
    assert all(g.connected for g in corpus)
    assert seeded_corpus(4) == corpus


def test_corpus_full_size():
    corpus = seeded_corpus(8)
    assert len(corpus) == 1 + 1 + 2 + 6 + 21 + 112 + 853 + 100
    assert all(g.connected for g in corpus)
    assert sum(g.vertex_count == 8 for g in corpus) == 100


def test_corpus_cap():
    for bad in (0, 9):
        with pytest.raises(ValueError):
            seeded_corpus(bad)


def test_classes_match_graph_atlas():
    atlas = defaultdict(set)
    counts = defaultdict(int)
    for a in nx.graph_atlas_g():
        n = a.number_of_nodes()
        counts[n] += 1
        atlas[n].add(canonical_form(n, adj_masks(n, a.edges()))[1])
    for n in range(1, 8):
        # distinct atlas entries are pairwise non-isomorphic, so codes must not collide
        assert len(atlas[n]) == counts[n]
        ours = {canonical_form(n, adj_masks(n, g.edges))[1] for g in all_graphs(n)}
        assert ours == atlas[n]
        assert len(connected_graphs(n)) == sum(
            nx.is_connected(a) for a in nx.graph_atlas_g() if a.number_of_nodes() == n
        )


@given(st.integers(1, 7).flatmap(lambda n: st.tuples(
    st.just(n),
    st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] < e[1])),
    st.permutations(range(n)),
)))
def test_canonical_form_is_invariant(case):
    n, edges, perm = case
    moved = [(perm[u], perm[v]) for u, v in edges]
    assert canonical_form(n, adj_masks(n, edges)) == canonical_form(n, adj_masks(n, moved))


def test_scan_is_deterministic():
    cfg = EnsembleConfig("gnp", 8, seed=99, p=Fraction(2, 5))
    a, b = ratio_scan(cfg, 3, 1), ratio_scan(cfg, 3, 1)
    assert a.format() == b.format() and a.best_graph == b.best_graph


def test_tree_scan_within_tree_bound():
    res = ratio_scan(EnsembleConfig("tree", 9, seed=5), 3, 200)
    assert res.ok and res.bound == Fraction(3, 2)
    assert res.best_ratio <= Fraction(3, 2)


def test_gnp_scan_k5():
    res = ratio_scan(EnsembleConfig("gnp", 10, seed=11, p=Fraction(3, 10)), 5, 200)
    assert res.violations == []
    assert res.best_ratio <= Fraction(8, 6)
    assert res.lemma_checked > 0
    assert "status=Verified" in res.format() and "violations=0" in res.format()


def test_failed_draws_are_logged_and_counted(caplog):
    cfg = EnsembleConfig("gnp", 12, seed=0, p=Fraction(1, 100), max_rejections=1)
    with caplog.at_level(logging.WARNING, logger="steinerdist.scan"):
        res = ratio_scan(cfg, 2, 3)
    assert len(res.skipped) == 3 and res.best_ratio is None
    assert len(caplog.records) == 3
    assert "skipped=3" in res.format()


def test_violations_are_reported(monkeypatch):
    monkeypatch.setattr(scan_mod, "within", lambda *a: False)
    res = ratio_scan(EnsembleConfig("tree", 6, seed=1), 2, 2)
    assert not res.ok and [v.kind for v in res.violations] == ["bound", "bound"]
    assert "status=Refuted" in res.format()


def test_scan_errors():
    cfg = EnsembleConfig("tree", 5)
    with pytest.raises(ValueError):
        ratio_scan(cfg, 2, 0)
    with pytest.raises(ValueError):
        ratio_scan(cfg, 6, 1)
