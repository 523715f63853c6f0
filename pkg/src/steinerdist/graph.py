"""Immutable simple undirected graphs on dense vertex indices.

Vertices are ``0..n-1``.  Labels are an optional presentation layer mapping
strings to indices; every algorithm works on indices only.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graph input."""


class _Unreachable:
    """Distance between vertices in different components."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNREACHABLE"

    def __str__(self):
        return "unreachable"

    def __reduce__(self):
        return (_Unreachable, ())


UNREACHABLE = _Unreachable()

# Distance = int | UNREACHABLE


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph.

    Build with :meth:`from_edge_list`; the constructor expects already
    normalized adjacency (sorted, symmetric tuples).
    """

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: Mapping[str, int] = field(default_factory=dict)

    @classmethod
    def from_edge_list(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        labels: Mapping[str, int] | None = None,
    ) -> "Graph":
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        lab = dict(labels or {})
        seen: dict[int, str] = {}
        for name, idx in lab.items():
            if not isinstance(name, str) or not name or any(c.isspace() for c in name):
                raise GraphError(f"invalid label {name!r}")
            if not 0 <= idx < n:
                raise GraphError(f"label {name!r} points outside the graph ({idx})")
            if idx in seen:
                raise GraphError(f"vertex {idx} labeled twice ({seen[idx]!r}, {name!r})")
            seen[idx] = name
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), lab)

    # basic queries

    def __len__(self):
        return self.vertex_count

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and self.adjacency == other.adjacency
            and dict(self.labels) == dict(other.labels)
        )

    def __hash__(self):
        return hash((self.vertex_count, self.adjacency))

    def __repr__(self):
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[self._check(v)]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return self._check(v) in self.adjacency[self._check(u)]

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as ``(u, v)`` with ``u < v``, sorted lexicographically."""
        return tuple((u, v) for u in range(self.vertex_count) for v in self.adjacency[u] if u < v)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def names(self) -> dict[int, str]:
        return {i: s for s, i in self.labels.items()}

    def index(self, key: int | str) -> int:
        """Resolve a label or an index (int or decimal string) to a vertex index."""
        if isinstance(key, str):
            if key in self.labels:
                return self.labels[key]
            if key.isdigit():
                return self._check(int(key))
            raise GraphError(f"unknown vertex label {key!r}")
        return self._check(int(key))

    def name(self, v: int) -> str:
        return self.names.get(v, str(v))

    def _check(self, v: int) -> int:
        if not 0 <= v < self.vertex_count:
            raise GraphError(f"vertex {v} out of range for n={self.vertex_count}")
        return v

    # distances

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        """All-pairs BFS distances; unreachable pairs hold ``-1``."""
        n = self.vertex_count
        out = np.full((n, n), -1, dtype=np.int64)
        for s in range(n):
            row = out[s]
            row[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                du = row[u] + 1
                for w in self.adjacency[u]:
                    if row[w] < 0:
                        row[w] = du
                        queue.append(w)
        out.setflags(write=False)
        return out

    @cached_property
    def connected(self) -> bool:
        return self.vertex_count > 0 and bool((self.distance_matrix[0] >= 0).all())


def bfs_distances(g: Graph, v: int) -> list:
    """Distances from ``v`` to every vertex, ``UNREACHABLE`` across components."""
    row = g.distance_matrix[g._check(v)]
    return [int(d) if d >= 0 else UNREACHABLE for d in row]


def distance(g: Graph, u: int, v: int):
    d = g.distance_matrix[g._check(u), g._check(v)]
    return int(d) if d >= 0 else UNREACHABLE


def _require_nonempty(g: Graph):
    if g.vertex_count == 0:
        raise GraphError("empty graph")


def eccentricity(g: Graph, v: int):
    _require_nonempty(g)
    row = g.distance_matrix[g._check(v)]
    if (row < 0).any():
        return UNREACHABLE
    return int(row.max())


def eccentricities(g: Graph) -> list:
    _require_nonempty(g)
    return [eccentricity(g, v) for v in range(g.vertex_count)]


def radius(g: Graph):
    _require_nonempty(g)
    if not g.connected:
        return UNREACHABLE
    return int(g.distance_matrix.max(axis=1).min())


def diameter(g: Graph):
    _require_nonempty(g)
    if not g.connected:
        return UNREACHABLE
    return int(g.distance_matrix.max())


def center(g: Graph) -> frozenset[int]:
    """Vertices of minimum eccentricity (all vertices when disconnected)."""
    _require_nonempty(g)
    if not g.connected:
        return frozenset(range(g.vertex_count))
    ecc = g.distance_matrix.max(axis=1)
    return frozenset(int(v) for v in np.flatnonzero(ecc == ecc.min()))


def is_connected(g: Graph) -> bool:
    return g.connected


def is_tree(g: Graph) -> bool:
    return g.connected and g.edge_count == g.vertex_count - 1


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``vertices``.

    Returns the new graph and the map old index -> new index.  New indices
    follow increasing old index; labels carry over.
    """
    keep = sorted({g._check(v) for v in vertices})
    if not keep:
        raise GraphError("induced subgraph of an empty vertex set")
    remap = {old: new for new, old in enumerate(keep)}
    edges = [(remap[u], remap[v]) for u, v in g.edges if u in remap and v in remap]
    labels = {s: remap[i] for s, i in g.labels.items() if i in remap}
    return Graph.from_edge_list(len(keep), edges, labels), remap


def subdivide_edge(g: Graph, u: int, v: int, t: int) -> Graph:
    """Replace edge ``uv`` by a path through ``t`` new vertices.

    New vertices get indices ``n..n+t-1`` ordered from ``u`` towards ``v``.
    """
    if t < 1:
        raise GraphError(f"subdivision count must be >= 1, got {t}")
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    n = g.vertex_count
    path = [u, *range(n, n + t), v]
    edges = [e for e in g.edges if e != (min(u, v), max(u, v))]
    edges.extend(zip(path, path[1:]))
    return Graph.from_edge_list(n + t, edges, g.labels)


def path_graph(n: int) -> Graph:
    return Graph.from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    """Star with center 0 and leaves ``1..leaves``."""
    return Graph.from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# text format


def dumps(g: Graph) -> str:
    lines = [f"{g.vertex_count} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    lines.extend(f"label {i} {s}" for i, s in sorted(g.names.items()))
    return "\n".join(lines) + "\n"


def loads(text: str) -> Graph:
    """Parse the ``n m`` / ``u v`` / ``label i name`` text format."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            rows.append((lineno, line.split()))
    if not rows:
        raise GraphError("empty graph file")
    lineno, head = rows[0]
    try:
        n, m = (int(x) for x in head)
    except ValueError:
        raise GraphError(f"line {lineno}: expected 'n m', got {' '.join(head)!r}") from None
    edges, labels = [], {}
    for lineno, parts in rows[1:]:
        if parts[0] == "label":
            if len(parts) != 3:
                raise GraphError(f"line {lineno}: expected 'label <index> <name>'")
            try:
                idx = int(parts[1])
            except ValueError:
                raise GraphError(f"line {lineno}: bad label index {parts[1]!r}") from None
            if parts[2] in labels:
                raise GraphError(f"line {lineno}: duplicate label {parts[2]!r}")
            labels[parts[2]] = idx
            continue
        if labels:
            raise GraphError(f"line {lineno}: edge after label section")
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex") from None
    if len(edges) != m:
        raise GraphError(f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edge_list(n, edges, labels)


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(g))
