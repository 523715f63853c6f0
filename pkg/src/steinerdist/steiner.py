"""Exact Steiner distances by subset dynamic programming.

The solver is the Dreyfus-Wagner recurrence over terminal subsets.  One
terminal (the smallest index) acts as the root; the table ``dp[X][v]`` holds
the size of a minimum tree spanning ``X`` plus ``v``.  Relaxation uses the
BFS distance matrix, which is exact for unit edge lengths.

``steiner_distance_bruteforce`` is an independent oracle that searches
connected vertex sets instead of trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator

import numpy as np

from .graph import UNREACHABLE, Graph, GraphError

INF = np.int32(1 << 28)

BRUTEFORCE_CAP = 16


@dataclass(frozen=True)
class SteinerResult:
    """A Steiner distance together with one witness tree."""

    terminals: tuple[int, ...]
    cost: object  # int or UNREACHABLE
    edges: frozenset
    vertices: frozenset

    @property
    def finite(self) -> bool:
        return self.cost is not UNREACHABLE

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def terminal_set(g: Graph, items: Iterable) -> tuple[int, ...]:
    """Normalize labels/indices to a sorted tuple of distinct vertices."""
    out = tuple(sorted({g.index(x) for x in items}))
    if not out:
        raise GraphError("terminal set must be nonempty")
    return out


def tree_from_edges(terminals, edges) -> SteinerResult:
    edges = frozenset((min(u, v), max(u, v)) for u, v in edges)
    verts = {v for e in edges for v in e} | set(terminals)
    return SteinerResult(tuple(terminals), len(edges), edges, frozenset(verts))


def _int_dist(g: Graph) -> np.ndarray:
    d = g.distance_matrix.astype(np.int32)
    d[d < 0] = INF
    return d


def _splits(mask: int) -> Iterator[int]:
    """Proper submasks of ``mask`` containing its lowest bit, increasing."""
    low = mask & -mask
    rest = mask ^ low
    subs = []
    sub = rest
    while True:
        if sub != rest:
            subs.append(sub | low)
        if sub == 0:
            break
        sub = (sub - 1) & rest
    return iter(sorted(subs))


class _Tables:
    """DP tables for one terminal set."""

    def __init__(self, dist: np.ndarray, terminals: tuple[int, ...]):
        self.dist = dist
        self.root = terminals[0]
        self.others = terminals[1:]
        q = len(self.others)
        n = dist.shape[0]
        self.full = (1 << q) - 1
        self.dp = np.full((1 << q, n), INF, dtype=np.int32)
        self.merge = np.full((1 << q, n), INF, dtype=np.int32)
        for i, t in enumerate(self.others):
            self.dp[1 << i] = dist[t]
        for mask in range(1, self.full + 1):
            if mask & (mask - 1) == 0:
                continue
            best = self.merge[mask]
            for sub in _splits(mask):
                np.minimum(best, self.dp[sub] + self.dp[mask ^ sub], out=best)
            np.minimum(best, INF, out=best)
            self.dp[mask] = (best[:, None] + dist).min(axis=0)
        np.minimum(self.dp, INF, out=self.dp)

    @property
    def cost(self) -> int:
        if not self.others:
            return 0
        return int(self.dp[self.full, self.root])

    def optimal_hubs(self, mask: int, v: int) -> list[int]:
        target = self.dp[mask, v]
        return [int(u) for u in np.flatnonzero(self.dist[v] + self.merge[mask] == target)]

    def optimal_splits(self, mask: int, u: int) -> list[int]:
        target = self.merge[mask, u]
        return [s for s in _splits(mask) if self.dp[s, u] + self.dp[mask ^ s, u] == target]

    def terminal_of(self, mask: int) -> int:
        return self.others[mask.bit_length() - 1]


def _first_path(dist: np.ndarray, g: Graph, v: int, u: int) -> list[tuple[int, int]]:
    edges = []
    cur = v
    while cur != u:
        want = dist[cur, u] - 1
        nxt = next(w for w in g.adjacency[cur] if dist[w, u] == want)
        edges.append((cur, nxt))
        cur = nxt
    return edges


def _all_paths(dist, g, v, u, cap) -> list[frozenset]:
    out: list[frozenset] = []

    def walk(cur, acc):
        if len(out) >= cap:
            return
        if cur == u:
            out.append(frozenset((min(a, b), max(a, b)) for a, b in acc))
            return
        want = dist[cur, u] - 1
        for w in g.adjacency[cur]:
            if dist[w, u] == want:
                acc.append((cur, w))
                walk(w, acc)
                acc.pop()

    walk(v, [])
    return out


def steiner_distance(g: Graph, terminals: Iterable) -> SteinerResult:
    """Minimum Steiner tree for ``terminals`` (labels or indices).

    Ties in the traceback go to the smallest hub vertex, then the smallest
    subset bitmask, then the smallest-index next step along shortest paths.
    """
    s = terminal_set(g, terminals)
    dist = _int_dist(g)
    if (dist[s[0], list(s)] >= INF).any():
        return SteinerResult(s, UNREACHABLE, frozenset(), frozenset())
    if len(s) == 1:
        return SteinerResult(s, 0, frozenset(), frozenset(s))
    tab = _Tables(dist, s)
    edges: list[tuple[int, int]] = []
    stack = [(tab.full, tab.root)]
    while stack:
        mask, v = stack.pop()
        if mask & (mask - 1) == 0:
            edges.extend(_first_path(dist, g, v, tab.terminal_of(mask)))
            continue
        u = tab.optimal_hubs(mask, v)[0]
        edges.extend(_first_path(dist, g, v, u))
        sub = tab.optimal_splits(mask, u)[0]
        stack.append((mask ^ sub, u))
        stack.append((sub, u))
    res = tree_from_edges(s, edges)
    assert res.cost == tab.cost, "traceback disagrees with DP value"
    return res


def steiner_cost(g: Graph, terminals: Iterable):
    """Steiner distance only (no witness)."""
    s = terminal_set(g, terminals)
    dist = _int_dist(g)
    if (dist[s[0], list(s)] >= INF).any():
        return UNREACHABLE
    return _Tables(dist, s).cost


def enumerate_min_steiner_trees(g: Graph, terminals: Iterable, limit: int = 100) -> list[SteinerResult]:
    """Up to ``limit`` distinct minimum Steiner trees, sorted by edge list.

    Branches over every optimal hub, split and shortest path of the DP, so
    the list is exhaustive whenever the true number of trees is at most
    ``limit``.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    s = terminal_set(g, terminals)
    dist = _int_dist(g)
    if (dist[s[0], list(s)] >= INF).any():
        raise GraphError("terminal set spans more than one component")
    if len(s) == 1:
        return [SteinerResult(s, 0, frozenset(), frozenset(s))]
    tab = _Tables(dist, s)
    cap = limit + 1
    memo: dict[tuple[int, int], list[frozenset]] = {}

    def trees(mask: int, v: int) -> list[frozenset]:
        key = (mask, v)
        if key in memo:
            return memo[key]
        found: dict[frozenset, None] = {}
        if mask & (mask - 1) == 0:
            for p in _all_paths(dist, g, v, tab.terminal_of(mask), cap):
                found[p] = None
        else:
            options = (
                (_all_paths(dist, g, v, u, cap), trees(sub, u), trees(mask ^ sub, u))
                for u in tab.optimal_hubs(mask, v)
                for sub in tab.optimal_splits(mask, u)
            )
            for paths, left, right in options:
                for p, a, b in product(paths, left, right):
                    found[p | a | b] = None
                    if len(found) >= cap:
                        break
                if len(found) >= cap:
                    break
        memo[key] = list(found)
        return memo[key]

    edge_sets = sorted(trees(tab.full, tab.root), key=sorted)
    return [tree_from_edges(s, e) for e in edge_sets[:limit]]


# batched costs for sweeps


def _chunk_rows(n: int, q: int) -> int:
    by_relax = (1 << 21) // max(1, n * n)
    by_table = (1 << 23) // max(1, (1 << q) * n)
    return max(1, min(by_relax, by_table))


def steiner_costs(g: Graph, sets: np.ndarray) -> np.ndarray:
    """Steiner distances for a batch of equal-size terminal sets.

    ``sets`` has shape ``(B, k)`` with distinct vertices per row.  The graph
    must be connected.  Returns an ``int32`` array of length ``B``.
    """
    sets = np.asarray(sets, dtype=np.intp)
    if sets.ndim != 2:
        raise ValueError("sets must be a 2-d array")
    b, k = sets.shape
    if b == 0:
        return np.zeros(0, dtype=np.int32)
    if k == 1:
        return np.zeros(b, dtype=np.int32)
    dist = _int_dist(g)
    n = dist.shape[0]
    q = k - 1
    step = _chunk_rows(n, q)
    out = np.empty(b, dtype=np.int32)
    for lo in range(0, b, step):
        out[lo:lo + step] = _batch(dist, sets[lo:lo + step], q)
    return out


def _batch(dist: np.ndarray, rows: np.ndarray, q: int) -> np.ndarray:
    roots = rows[:, 0]
    full = (1 << q) - 1
    if q == 1:
        return dist[roots, rows[:, 1]]
    dp: list = [None] * (full + 1)
    for i in range(q):
        dp[1 << i] = dist[rows[:, i + 1]]
    for mask in range(1, full + 1):
        if mask & (mask - 1) == 0:
            continue
        best = None
        for sub in _splits(mask):
            cand = dp[sub] + dp[mask ^ sub]
            best = cand if best is None else np.minimum(best, cand, out=best)
        if mask == full:
            return (best + dist[roots]).min(axis=1)
        dp[mask] = (best[:, :, None] + dist[None, :, :]).min(axis=1)
    raise AssertionError("unreachable")


# brute-force oracle


def _adj_masks(g: Graph) -> list[int]:
    return [sum(1 << w for w in g.adjacency[v]) for v in range(g.vertex_count)]


def _mask_connected(adj: list[int], mask: int) -> bool:
    if mask == 0:
        return False
    seen = mask & -mask
    frontier = seen
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        v = low.bit_length() - 1
        new = adj[v] & mask & ~seen
        seen |= new
        frontier |= new
    return seen == mask


def steiner_distance_bruteforce(g: Graph, terminals: Iterable, cap: int = BRUTEFORCE_CAP):
    """Smallest ``|W| - 1`` over vertex sets ``W ⊇ S`` inducing a connected graph."""
    n = g.vertex_count
    if n > cap:
        raise GraphError(f"brute force limited to n <= {cap}, got n={n}")
    s = terminal_set(g, terminals)
    adj = _adj_masks(g)
    base = sum(1 << v for v in s)
    free = [v for v in range(n) if not base >> v & 1]
    for extra in range(len(free) + 1):
        for add in combinations(free, extra):
            if _mask_connected(adj, base | sum(1 << v for v in add)):
                return len(s) + extra - 1
    return UNREACHABLE


def bruteforce_table(g: Graph, cap: int = BRUTEFORCE_CAP) -> np.ndarray:
    """Brute-force Steiner distance of every vertex subset, indexed by bitmask.

    Entries for subsets with no connected superset are ``-1``.
    """
    n = g.vertex_count
    if n > cap:
        raise GraphError(f"brute force limited to n <= {cap}, got n={n}")
    adj = _adj_masks(g)
    size = 1 << n
    best = np.full(size, INF, dtype=np.int64)
    for mask in range(1, size):
        if _mask_connected(adj, mask):
            best[mask] = mask.bit_count() - 1
    # min over supersets
    idx = np.arange(size)
    for bit in range(n):
        lacking = idx[(idx >> bit & 1) == 0]
        best[lacking] = np.minimum(best[lacking], best[lacking | (1 << bit)])
    best[0] = 0
    best[best >= INF] = -1
    return best
