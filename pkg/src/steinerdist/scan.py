"""Randomized ratio scans and the small-graph test corpus."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from .eccentricity import RadiusDiameterReport, steiner_profile
from .families import EnsembleConfig, EnsembleError, random_graph
from .graph import Graph
from .verify import REFUTED, bound_for, check_lemma, tree_bound_for, within

log = logging.getLogger(__name__)

LEMMA_SHRINK = Fraction(999, 1000)


@dataclass
class Violation:
    trial: int
    seed: int
    kind: str  # "bound" or "lemma"
    graph: Graph
    detail: str


@dataclass
class ScanResult:
    config: EnsembleConfig
    k: int
    trials: int
    bound: Fraction
    best_ratio: Fraction | None = None
    best_trial: int | None = None
    best_graph: Graph | None = None
    best_profile: RadiusDiameterReport | None = None
    violations: list[Violation] = field(default_factory=list)
    skipped: list[tuple[int, str]] = field(default_factory=list)
    lemma_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def format(self) -> str:
        cfg = self.config
        parts = [
            "claim=scan",
            f"status={'Verified' if self.ok else 'Refuted'}",
            f"ensemble={cfg.kind}",
            f"n={cfg.n}",
        ]
        if cfg.kind == "gnp":
            parts.append(f"p={cfg.p.numerator}/{cfg.p.denominator}")
        parts += [f"k={self.k}", f"seed={cfg.seed}", f"trials={self.trials}"]
        if self.best_ratio is not None:
            b = self.best_profile
            parts += [
                f"best_ratio={self.best_ratio.numerator}/{self.best_ratio.denominator}",
                f"best_trial={self.best_trial}",
                f"best_srad={b.srad}",
                f"best_sdiam={b.sdiam}",
            ]
        parts += [
            f"bound={self.bound.numerator}/{self.bound.denominator}",
            f"violations={len(self.violations)}",
            f"lemma_checked={self.lemma_checked}",
            f"skipped={len(self.skipped)}",
        ]
        return " ".join(parts)


def ratio_scan(
    cfg: EnsembleConfig,
    k: int,
    trials: int,
    *,
    lemma: bool = True,
    **kw,
) -> ScanResult:
    """Exact sdiam_k / srad_k over ``trials`` seeded graphs.

    Trial ``t`` uses seed ``cfg.seed + t``.  Trees are held to ``k/(k-1)``,
    other graphs to ``bound_for(k)``.  When ``lemma`` is set, every
    trial with ratio above 1 also runs the lemma check at
    ``p = ratio * 999/1000``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if k > cfg.n:
        raise ValueError(f"k={k} exceeds n={cfg.n}")
    bound = tree_bound_for(k) if cfg.kind == "tree" else bound_for(k)
    res = ScanResult(cfg, k, trials, bound)
    for t in range(trials):
        seed = (cfg.seed + t) % 2**64
        try:
            g = random_graph(cfg.with_seed(seed))
        except EnsembleError as exc:
            log.warning("trial %d skipped: %s", t, exc)
            res.skipped.append((t, str(exc)))
            continue
        prof = steiner_profile(g, k, **kw)
        ratio = prof.ratio
        if not within(prof.sdiam, prof.srad, bound):
            res.violations.append(Violation(t, seed, "bound", g, f"ratio={ratio}"))
        if lemma and ratio > 1:
            rep = check_lemma(g, k, ratio * LEMMA_SHRINK, profile=prof)
            res.lemma_checked += 1
            if rep.status == REFUTED:
                res.violations.append(Violation(t, seed, "lemma", g, rep.format()))
        if res.best_ratio is None or ratio > res.best_ratio:
            res.best_ratio, res.best_trial, res.best_graph, res.best_profile = ratio, t, g, prof
    if res.best_graph is not None:
        again = steiner_profile(res.best_graph, k, force=True).ratio
        if again != res.best_ratio:
            raise AssertionError(f"best witness recomputes to {again}, scan recorded {res.best_ratio}")
    return res


# small-graph corpus


def _refine(n: int, adj: list[int]) -> list[int]:
    colors = [bin(adj[v]).count("1") for v in range(n)]
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in range(n) if adj[v] >> w & 1)))
            for v in range(n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_form(n: int, adj: list[int]) -> tuple[int, int]:
    """Isomorphism-invariant code: ``(n, smallest adjacency code)``.

    The minimum runs over vertex orderings that list color-refinement
    classes in class order, which is itself an invariant set of orderings.
    """
    colors = _refine(n, adj)
    cells = [[v for v in range(n) if colors[v] == c] for c in sorted(set(colors))]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    best = None
    for parts in product(*(permutations(c) for c in cells)):
        order = [v for part in parts for v in part]
        code = 0
        for i, j in pairs:
            code = code << 1 | (adj[order[i]] >> order[j] & 1)
        if best is None or code < best:
            best = code
    return n, best


def _graph_from_code(n: int, code: int) -> Graph:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    bits = len(pairs)
    return Graph.from_edge_list(n, [e for idx, e in enumerate(pairs) if code >> (bits - 1 - idx) & 1])


def all_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class on ``n`` vertices, sorted by code."""
    return [_graph_from_code(n, code) for code in _class_codes(n)]


@lru_cache(maxsize=None)
def _class_codes(n: int) -> tuple[int, ...]:
    layer = {(0, 0)} if n == 0 else {(1, 0)}
    for size in range(2, n + 1):
        nxt = set()
        for _, code in sorted(layer):
            base = _graph_from_code(size - 1, code)
            adj = [sum(1 << w for w in base.adjacency[v]) for v in range(size - 1)]
            for nb in range(1 << (size - 1)):
                ext = [a | ((nb >> v & 1) << (size - 1)) for v, a in enumerate(adj)]
                ext.append(nb)
                nxt.add(canonical_form(size, ext))
        layer = nxt
    return tuple(code for _, code in sorted(layer))


def connected_graphs(n: int) -> list[Graph]:
    return [g for g in all_graphs(n) if g.connected]


CORPUS_EXHAUSTIVE_MAX = 7
CORPUS_RANDOM = 100
CORPUS_SEED = 20_250_101


def seeded_corpus(max_n: int, random_count: int = CORPUS_RANDOM, seed: int = CORPUS_SEED) -> list[Graph]:
    """Every connected graph up to ``min(max_n, 7)`` vertices, plus seeded G(8, p) graphs when ``max_n == 8``."""
    if not 1 <= max_n <= 8:
        raise ValueError(f"max_n must be between 1 and 8, got {max_n}")
    out = []
    for n in range(1, min(max_n, CORPUS_EXHAUSTIVE_MAX) + 1):
        out.extend(connected_graphs(n))
    if max_n > CORPUS_EXHAUSTIVE_MAX:
        densities = (Fraction(1, 4), Fraction(2, 5), Fraction(3, 5))
        for i in range(random_count):
            cfg = EnsembleConfig("gnp", max_n, seed=seed + i, p=densities[i % 3])
            out.append(random_graph(cfg))
    return out
