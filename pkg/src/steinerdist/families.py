"""Generators for the extremal family ``G_k``, the graph ``H`` and random ensembles."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Graph, GraphError, subdivide_edge


@dataclass(frozen=True)
class FamilyHandle:
    """A generated graph with its named vertices."""

    graph: Graph
    roles: dict[str, int]
    params: dict[str, int] = field(default_factory=dict)

    def __getitem__(self, role: str) -> int:
        return self.roles[role]

    def vertices(self, *roles: str) -> tuple[int, ...]:
        return tuple(self.roles[r] for r in roles)


def build_gk(k: int) -> FamilyHandle:
    """Graph with Steiner k-radius k+1 and k-diameter k+3 (k >= 5).

    ``D = {d1..dk}`` is independent, ``D1 = {d1..dm}`` and ``D2 = {dm..dk}``
    with ``m = ceil((k+1)/2)``.  Each ``a_i`` (``d_i`` in D1) sees
    ``D1 - {d_i}``, each ``b_j`` (``d_j`` in D2) sees ``D2 - {d_j}``, and
    ``r`` sees every a and b.
    """
    if k < 5:
        raise ValueError(f"G_k is defined for k >= 5, got k={k}")
    m = math.ceil((k + 1) / 2)
    roles: dict[str, int] = {}
    for i in range(1, k + 1):
        roles[f"d{i}"] = len(roles)
    for i in range(1, m + 1):
        roles[f"a{i}"] = len(roles)
    for j in range(m, k + 1):
        roles[f"b{j}"] = len(roles)
    roles["r"] = len(roles)

    d1 = range(1, m + 1)
    d2 = range(m, k + 1)
    edges = []
    for i in d1:
        edges.extend((roles[f"a{i}"], roles[f"d{x}"]) for x in d1 if x != i)
        edges.append((roles[f"a{i}"], roles["r"]))
    for j in d2:
        edges.extend((roles[f"b{j}"], roles[f"d{x}"]) for x in d2 if x != j)
        edges.append((roles[f"b{j}"], roles["r"]))
    g = Graph.from_edge_list(len(roles), edges, roles)
    return FamilyHandle(g, roles, {"k": k, "m": m})


# u_i and v_j are not joined when i + j == 5
H_MATCHING = ((1, 4), (2, 3), (3, 2), (4, 1))


def build_h() -> FamilyHandle:
    """The 70-vertex graph where ``|T_2''| + a_1 + b_1`` falls below sdiam_4.

    ``K_{4,4}`` on ``U``/``V`` minus the matching ``u_i v_{5-i}``, plus ``v0``
    joined to all of ``U``; ``v0 u4`` is subdivided once and every ``u v`` edge
    five times.
    """
    roles = {"v0": 0}
    for i in range(1, 5):
        roles[f"u{i}"] = i
    for j in range(1, 5):
        roles[f"v{j}"] = 4 + j
    uv = [(i, j) for i in range(1, 5) for j in range(1, 5) if (i, j) not in H_MATCHING]
    edges = [(0, roles[f"u{i}"]) for i in range(1, 5)]
    edges += [(roles[f"u{i}"], roles[f"v{j}"]) for i, j in uv]
    g = Graph.from_edge_list(9, edges, roles)
    g = subdivide_edge(g, roles["v0"], roles["u4"], 1)
    for i, j in uv:
        g = subdivide_edge(g, roles[f"u{i}"], roles[f"v{j}"], 5)
    return FamilyHandle(g, roles, {"k": 4})


@dataclass(frozen=True)
class EnsembleConfig:
    """Seeded random graph source.

    ``kind`` is ``"gnp"`` (connected G(n, p) by rejection) or ``"tree"``
    (uniform labeled tree from a random Pruefer code).
    """

    kind: str
    n: int
    seed: int = 0
    p: Fraction = Fraction(1, 2)
    max_rejections: int = 10_000

    def __post_init__(self):
        if self.kind not in ("gnp", "tree"):
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.n < 2:
            raise ValueError("ensembles need n >= 2")
        object.__setattr__(self, "p", Fraction(self.p))
        if self.kind == "gnp" and not 0 < self.p < 1:
            raise ValueError(f"p must lie strictly between 0 and 1, got {self.p}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def with_seed(self, seed: int) -> "EnsembleConfig":
        return EnsembleConfig(self.kind, self.n, seed % 2**64, self.p, self.max_rejections)


class EnsembleError(RuntimeError):
    pass


def random_graph(cfg: EnsembleConfig) -> Graph:
    rng = random.Random(cfg.seed)
    if cfg.kind == "tree":
        return _pruefer_tree(cfg.n, rng)
    num, den = cfg.p.numerator, cfg.p.denominator
    pairs = [(u, v) for u in range(cfg.n) for v in range(u + 1, cfg.n)]
    for _ in range(cfg.max_rejections):
        g = Graph.from_edge_list(cfg.n, [e for e in pairs if rng.randrange(den) < num])
        if g.connected:
            return g
    raise EnsembleError(f"no connected G({cfg.n}, {cfg.p}) after {cfg.max_rejections} draws (seed {cfg.seed})")


def _pruefer_tree(n: int, rng: random.Random) -> Graph:
    if n == 2:
        return Graph.from_edge_list(2, [(0, 1)])
    code = [rng.randrange(n) for _ in range(n - 2)]
    return Graph.from_edge_list(n, pruefer_decode(code, n))


def pruefer_decode(code: list[int], n: int) -> list[tuple[int, int]]:
    if len(code) != n - 2:
        raise GraphError("Pruefer code must have length n - 2")
    degree = [1] * n
    for x in code:
        degree[x] += 1
    edges = []
    for x in code:
        leaf = next(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (w for w in range(n) if degree[w] == 1)
    edges.append((u, v))
    return edges
