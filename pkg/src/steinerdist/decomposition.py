"""Substituted terminal sets, their Steiner trees and tree-shape measurements.

Given a diametral set ``D = (v_1..v_k)`` and a central vertex ``v0``, entry
``i`` swaps ``v_i`` for ``v0``, takes a minimum Steiner tree ``T_i`` of the
result, prunes it to the subtree ``T_i'`` spanning ``D_i - {v0}`` and records
the gap ``ell_i = |T_i| - |T_i'|``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .graph import Graph, GraphError
from .steiner import SteinerResult, steiner_cost, steiner_distance


@dataclass(frozen=True)
class Tree:
    """An undirected tree given by its edges (or a single vertex)."""

    edges: frozenset
    vertices: frozenset

    @classmethod
    def of(cls, obj) -> "Tree":
        if isinstance(obj, Tree):
            return obj
        return cls(frozenset(obj.edges), frozenset(obj.vertices))

    @classmethod
    def from_edges(cls, edges, extra=()) -> "Tree":
        es = frozenset((min(u, v), max(u, v)) for u, v in edges)
        return cls(es, frozenset({x for e in es for x in e} | set(extra)))

    @property
    def size(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            out[u].append(v)
            out[v].append(u)
        for nb in out.values():
            nb.sort()
        return out

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def leaves(self) -> list[int]:
        return sorted(v for v, nb in self.adj.items() if len(nb) == 1)

    def is_tree(self) -> bool:
        if not self.vertices or len(self.edges) != len(self.vertices) - 1:
            return False
        return len(self.distances_from(min(self.vertices))) == len(self.vertices)

    def distances_from(self, v: int) -> dict[int, int]:
        seen = {v: 0}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if w not in seen:
                    seen[w] = seen[u] + 1
                    queue.append(w)
        return seen

    def distance(self, u: int, v: int) -> int:
        return self.distances_from(u)[v]

    def path(self, u: int, v: int) -> list[int]:
        parent = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for w in self.adj[x]:
                if w not in parent:
                    parent[w] = x
                    queue.append(w)
        out = [v]
        while out[-1] != u:
            out.append(parent[out[-1]])
        return out[::-1]

    def distance_to_subtree(self, v: int, sub: "Tree") -> int:
        dist = self.distances_from(v)
        return min(dist[x] for x in sub.vertices)

    def without_vertices(self, drop: Iterable[int]) -> "Tree":
        drop = set(drop)
        return Tree(
            frozenset(e for e in self.edges if e[0] not in drop and e[1] not in drop),
            self.vertices - drop,
        )


def spanning_subtree(tree, keep: Iterable[int]) -> Tree:
    """Smallest subtree containing ``keep``: strip non-kept leaves until none remain."""
    t = Tree.of(tree)
    keep = set(keep)
    if not keep:
        raise GraphError("spanning_subtree needs a nonempty vertex set")
    if not keep <= t.vertices:
        raise GraphError(f"vertices {sorted(keep - t.vertices)} are not in the tree")
    deg = {v: len(nb) for v, nb in t.adj.items()}
    alive = set(t.vertices)
    queue = deque(v for v in sorted(alive) if deg[v] <= 1 and v not in keep)
    while queue:
        v = queue.popleft()
        if v not in alive or len(alive) == 1:
            continue
        alive.remove(v)
        for w in t.adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] <= 1 and w not in keep:
                    queue.append(w)
    return Tree(frozenset(e for e in t.edges if e[0] in alive and e[1] in alive), frozenset(alive))


@dataclass(frozen=True)
class DecompositionEntry:
    index: int  # 1-based position of the removed vertex in D
    removed: int
    terminals: tuple[int, ...]
    tree: Tree
    pruned: Tree
    ell: int


@dataclass(frozen=True)
class Decomposition:
    diametral: tuple[int, ...]
    v0: int
    entries: tuple[DecompositionEntry, ...]
    ordering: tuple[int, ...]  # 1-based indices, smallest ell first

    def entry(self, i: int) -> DecompositionEntry:
        return self.entries[i - 1]

    @property
    def first(self) -> DecompositionEntry:
        return self.entries[self.ordering[0] - 1]

    def ordered(self) -> list[DecompositionEntry]:
        return [self.entries[i - 1] for i in self.ordering]


def decompose(
    g: Graph,
    diametral: Iterable,
    v0,
    trees: Mapping[int, object] | None = None,
) -> Decomposition:
    """Build every ``D_i``, ``T_i``, ``T_i'`` and ``ell_i``.

    ``T_i`` defaults to the deterministic traceback of :func:`steiner_distance`.
    ``trees`` may supply a specific minimum Steiner tree for some indices
    (1-based); each is checked for minimality.
    """
    if not g.connected:
        raise GraphError("decomposition needs a connected graph")
    d = tuple(sorted({g.index(x) for x in diametral}))
    if len(d) < 2:
        raise ValueError("the diametral set needs at least two vertices")
    v0 = g.index(v0)
    trees = trees or {}
    entries = []
    for i, vi in enumerate(d, 1):
        di = tuple(sorted((set(d) - {vi}) | {v0}))
        if i in trees:
            t = Tree.of(trees[i])
            if not t.is_tree() or not set(di) <= t.vertices or t.size != steiner_cost(g, di):
                raise ValueError(f"supplied T_{i} is not a minimum Steiner tree of D_{i}")
        else:
            t = Tree.of(steiner_distance(g, di))
        rest = set(di) - {v0}
        # v0 in D can leave nothing but v0 itself; T_i' is then that single vertex
        pruned = spanning_subtree(t, rest) if rest else Tree(frozenset(), frozenset({v0}))
        entries.append(DecompositionEntry(i, vi, di, t, pruned, t.size - pruned.size))
    ordering = tuple(sorted(range(1, len(d) + 1), key=lambda i: (entries[i - 1].ell, i)))
    return Decomposition(d, v0, tuple(entries), ordering)


@dataclass(frozen=True)
class TreeShape:
    """Shape class of a tree with segment lengths.

    ``kind`` is ``"path"``, ``"spider3"``, ``"fourleaf"`` or ``"other"``.
    Spider3: leaves u1, u2, u3 around the branch vertex s, with an interior
    terminal (the marker) on the s-u3 leg; a = |u1 s|, b = |u2 s|,
    c = |u3 marker|, d = |marker s|.  FourLeaf: v0 is a leaf, s is the
    branch vertex nearest v0, t the branch vertex shared by u1 and u2;
    ell = |v0 s|, a = |u1 t|, b = |u2 t|, c = |u3 s|, d = |s t|.
    """

    kind: str
    a: int | None = None
    b: int | None = None
    c: int | None = None
    d: int | None = None
    ell: int | None = None
    s: int | None = None
    t: int | None = None
    u1: int | None = None
    u2: int | None = None
    u3: int | None = None
    marker: int | None = None

    def measurements(self) -> tuple[int, ...]:
        if self.kind == "fourleaf":
            return (self.a, self.b, self.c, self.d, self.ell)
        if self.kind == "spider3":
            return (self.a, self.b, self.c, self.d)
        return ()


def classify_shape(tree, terminals: Iterable[int], v0: int) -> TreeShape:
    t = Tree.of(tree)
    if v0 not in t.vertices:
        raise GraphError(f"v0={v0} is not a tree vertex")
    terms = set(terminals) | {v0}
    if not terms <= t.vertices:
        raise GraphError("terminals must lie in the tree")
    if all(t.degree(v) <= 2 for v in t.vertices):
        return TreeShape("path")
    leaves = t.leaves
    if len(leaves) == 3:
        return _spider3(t, leaves, terms)
    if len(leaves) == 4 and v0 in leaves:
        return _fourleaf(t, leaves, v0)
    return TreeShape("other")


def _spider3(t: Tree, leaves: list[int], terms: set[int]) -> TreeShape:
    (s,) = [v for v in t.vertices if t.degree(v) >= 3]
    from_s = t.distances_from(s)
    interior = sorted((from_s[v], v) for v in terms if v not in leaves)
    marker = interior[0][1] if interior else s
    if marker == s:
        u1, u2, u3 = leaves
    else:
        (u3,) = [x for x in leaves if marker in t.path(s, x)]
        u1, u2 = [x for x in leaves if x != u3]
    return TreeShape(
        "spider3",
        a=from_s[u1], b=from_s[u2], c=t.distance(u3, marker), d=from_s[marker],
        s=s, u1=u1, u2=u2, u3=u3, marker=marker,
    )


def _fourleaf(t: Tree, leaves: list[int], v0: int) -> TreeShape:
    branch = [v for v in t.vertices if t.degree(v) >= 3]
    from_v0 = t.distances_from(v0)
    s = min(branch, key=lambda v: (from_v0[v], v))
    others = [x for x in leaves if x != v0]
    if len(branch) == 1:
        u1, u2, u3 = others
        tt = s
    else:
        (tt,) = [v for v in branch if v != s]
        # u3 is the leaf whose path to s avoids t
        (u3,) = [x for x in others if tt not in t.path(s, x)]
        u1, u2 = [x for x in others if x != u3]
    from_t = t.distances_from(tt)
    return TreeShape(
        "fourleaf",
        a=from_t[u1], b=from_t[u2], c=t.distance(u3, s), d=from_t[s], ell=from_v0[s],
        s=s, t=tt, u1=u1, u2=u2, u3=u3,
    )


def prune_to_t_double_prime(tree, shape: TreeShape) -> Tree:
    """Drop the u3 leg of a four-leaf tree, keeping its branch vertex s."""
    if shape.kind != "fourleaf":
        raise ValueError(f"expected a four-leaf tree, got {shape.kind}")
    t = Tree.of(tree)
    leg = t.path(shape.u3, shape.s)[:-1]
    return t.without_vertices(leg)


@dataclass(frozen=True)
class SplitAtX:
    x: int
    case: str  # "in_terminals" or "branching"


def locate_x(dec: Decomposition) -> SplitAtX:
    """Vertex of ``T_1'`` closest to v0 inside ``T_1`` (after ell-ordering)."""
    first = dec.first
    dist = first.tree.distances_from(dec.v0)
    x = min(first.pruned.vertices, key=lambda v: (dist[v], v))
    inner = set(first.terminals) - {dec.v0}
    return SplitAtX(x, "in_terminals" if x in inner else "branching")
