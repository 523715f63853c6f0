"""Steiner k-eccentricity, k-radius, k-diameter and k-center.

Every value is an exact maximum over all k-subsets.  Subsets are produced in
lexicographic order and evaluated in fixed-size chunks; chunks may run on a
thread pool but are reduced in order, so witnesses never depend on
scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice
from math import comb

import numpy as np

from .graph import Graph, GraphError
from .steiner import steiner_costs

DEFAULT_BUDGET = 250_000
CHUNK = 4096


class BudgetExceeded(RuntimeError):
    """The number of Steiner evaluations would exceed the configured budget."""

    def __init__(self, estimate: int, budget: int):
        super().__init__(
            f"estimated {estimate} Steiner evaluations exceeds budget {budget} "
            "(raise STEINER_BUDGET or pass force=True)"
        )
        self.estimate = estimate
        self.budget = budget


def resolve_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("STEINER_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"STEINER_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


def check_budget(estimate: int, budget: int | None = None, force: bool = False) -> None:
    limit = resolve_budget(budget)
    if not force and estimate > limit:
        raise BudgetExceeded(estimate, limit)


@dataclass(frozen=True)
class EccentricityReport:
    vertex: int
    k: int
    value: int
    witness: tuple[int, ...]


@dataclass(frozen=True)
class RadiusDiameterReport:
    k: int
    srad: int
    sdiam: int
    center_vertices: frozenset[int]
    diametral_set: tuple[int, ...]
    eccentricities: tuple[EccentricityReport, ...]

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.sdiam, self.srad)

    def eccentricity(self, v: int) -> EccentricityReport:
        return self.eccentricities[v]


def _validate(g: Graph, k: int) -> None:
    if not g.connected:
        raise GraphError("Steiner eccentricities need a connected graph")
    if not 2 <= k <= g.vertex_count:
        raise ValueError(f"k must satisfy 2 <= k <= n={g.vertex_count}, got {k}")


def _chunks(items, k: int):
    it = iter(items)
    while True:
        block = list(islice(it, CHUNK))
        if not block:
            return
        yield np.array(block, dtype=np.intp).reshape(len(block), k)


def _evaluate(g: Graph, blocks, threads: int | None):
    """Yield ``(rows, costs)`` per block, in block order."""
    workers = threads or os.cpu_count() or 1
    if workers <= 1:
        for rows in blocks:
            yield rows, steiner_costs(g, rows)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        pending = []
        for rows in blocks:
            pending.append((rows, pool.submit(steiner_costs, g, rows)))
            if len(pending) >= 2 * workers:
                rows0, fut = pending.pop(0)
                yield rows0, fut.result()
        for rows0, fut in pending:
            yield rows0, fut.result()


def k_eccentricity(
    g: Graph,
    v: int,
    k: int,
    *,
    budget: int | None = None,
    force: bool = False,
    threads: int | None = None,
) -> EccentricityReport:
    """``e_k(v)``: largest Steiner distance of a k-set containing ``v``.

    The witness is the lexicographically smallest maximizing set.
    """
    _validate(g, k)
    v = g.index(v)
    check_budget(comb(g.vertex_count - 1, k - 1), budget, force)
    others = [w for w in range(g.vertex_count) if w != v]
    combos = (tuple(sorted((v, *c))) for c in combinations(others, k - 1))
    best_val, best_set = -1, None
    for rows, costs in _evaluate(g, _chunks(combos, k), threads):
        top = int(costs.max())
        if top < best_val:
            continue
        cands = rows[costs == top]
        first = tuple(int(x) for x in cands[np.lexsort(cands.T[::-1])[0]])
        if top > best_val or first < best_set:
            best_val, best_set = top, first
    return EccentricityReport(v, k, best_val, best_set)


def steiner_profile(
    g: Graph,
    k: int,
    *,
    budget: int | None = None,
    force: bool = False,
    threads: int | None = None,
) -> RadiusDiameterReport:
    """All k-eccentricities from one pass over every k-subset."""
    _validate(g, k)
    n = g.vertex_count
    check_budget(comb(n, k), budget, force)
    best = np.full(n, -1, dtype=np.int64)
    witness: list[tuple[int, ...] | None] = [None] * n
    for rows, costs in _evaluate(g, _chunks(combinations(range(n), k), k), threads):
        member = np.zeros((len(rows), n), dtype=bool)
        np.put_along_axis(member, rows, True, axis=1)
        masked = np.where(member, costs[:, None].astype(np.int64), -1)
        top = masked.max(axis=0)
        first = masked.argmax(axis=0)
        # blocks arrive in lexicographic order: only a strict gain replaces a witness
        for w in np.flatnonzero(top > best):
            best[w] = top[w]
            witness[w] = tuple(int(x) for x in rows[first[w]])
    reports = tuple(EccentricityReport(w, k, int(best[w]), witness[w]) for w in range(n))
    srad, sdiam = int(best.min()), int(best.max())
    center = frozenset(int(w) for w in np.flatnonzero(best == srad))
    diametral = min(r.witness for r in reports if r.value == sdiam)
    return RadiusDiameterReport(k, srad, sdiam, center, diametral, reports)


def steiner_radius(g: Graph, k: int, **kw) -> RadiusDiameterReport:
    return steiner_profile(g, k, **kw)


def steiner_diameter(g: Graph, k: int, **kw) -> RadiusDiameterReport:
    return steiner_profile(g, k, **kw)


def steiner_center(g: Graph, k: int, **kw) -> frozenset[int]:
    return steiner_profile(g, k, **kw).center_vertices


def diametral_set(g: Graph, k: int, **kw) -> tuple[int, ...]:
    """Lexicographically smallest k-set whose Steiner distance is the k-diameter."""
    return steiner_profile(g, k, **kw).diametral_set
