"""Exact checks of Steiner radius/diameter values, ratio bounds and tree inequalities.

Every comparison is integer or ``Fraction`` arithmetic.  Each check returns a
:class:`VerificationReport` whose ``format()`` is a stable ``key=value`` line.
"""

from __future__ import annotations

import os
import tempfile
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from .decomposition import Decomposition, classify_shape, decompose, prune_to_t_double_prime
from .eccentricity import (
    BudgetExceeded,
    RadiusDiameterReport,
    k_eccentricity,
    steiner_profile,
)
from .families import H_MATCHING, build_gk, build_h
from .graph import Graph, GraphError, distance, dumps, is_tree
from .steiner import enumerate_min_steiner_trees, steiner_distance

VERIFIED = "Verified"
REFUTED = "Refuted"
PREMISE_NOT_MET = "PremiseNotMet"
SKIPPED = "Skipped"

GK_EXHAUSTIVE_MAX_K = 8


def bound_for(k: int) -> Fraction:
    """Largest possible sdiam_k / srad_k over connected graphs."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k == 2:
        return Fraction(2)
    if k == 3:
        return Fraction(8, 5)
    if k == 4:
        return Fraction(10, 7)
    return Fraction(k + 3, k + 1)


def tree_bound_for(k: int) -> Fraction:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    return Fraction(k, k - 1)


def within(sdiam: int, srad: int, bound: Fraction) -> bool:
    return bound.denominator * sdiam <= bound.numerator * srad


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (tuple, list, frozenset, set)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return ",".join(_fmt(x) for x in items)
    return str(value)


@dataclass
class VerificationReport:
    claim: str
    status: str = VERIFIED
    values: list[tuple[str, object]] = field(default_factory=list)
    runtime: float = 0.0
    failures: list[str] = field(default_factory=list)

    def add(self, name: str, value) -> None:
        self.values.append((name, value))

    def expect(self, name: str, ok: bool) -> None:
        if not ok:
            self.status = REFUTED
            self.failures.append(name)

    def value(self, name: str):
        for key, val in self.values:
            if key == name:
                return val
        raise KeyError(name)

    @property
    def ok(self) -> bool:
        return self.status in (VERIFIED, PREMISE_NOT_MET)

    def format(self, runtime: bool = False) -> str:
        parts = [f"claim={self.claim}", f"status={self.status}"]
        parts += [f"{k}={_fmt(v)}" for k, v in self.values]
        if self.failures:
            parts.append(f"failed={','.join(self.failures)}")
        if runtime:
            parts.append(f"runtime={self.runtime:.3f}")
        return " ".join(parts)


class _timed:
    def __init__(self, report: VerificationReport):
        self.report = report

    def __enter__(self):
        self.start = time.perf_counter()
        return self.report

    def __exit__(self, exc_type, exc, tb):
        self.report.runtime = time.perf_counter() - self.start
        if exc_type is BudgetExceeded:
            self.report.status = SKIPPED
            self.report.add("estimate", exc.estimate)
            self.report.add("budget", exc.budget)
            return True
        return False


def dump_witness(g: Graph, report: VerificationReport, directory=None) -> Path:
    """Write the graph and report of a refuted check for inspection."""
    base = Path(directory or os.environ.get("STEINER_DUMP_DIR") or Path(tempfile.gettempdir()) / "steinerdist-refuted")
    base.mkdir(parents=True, exist_ok=True)
    stem = f"{report.claim}-{int(time.time() * 1000)}"
    path = base / f"{stem}.graph"
    path.write_text(dumps(g), encoding="utf-8")
    (base / f"{stem}.report").write_text(report.format() + "\n", encoding="utf-8")
    return path


def _bound_report(claim, g, k, bound, profile, kw, dump_dir) -> VerificationReport:
    rep = VerificationReport(claim)
    with _timed(rep):
        prof = profile or steiner_profile(g, k, **kw)
        rep.add("k", k)
        rep.add("srad", prof.srad)
        rep.add("sdiam", prof.sdiam)
        rep.add("ratio", prof.ratio)
        rep.add("bound", bound)
        rep.expect("bound", within(prof.sdiam, prof.srad, bound))
        if rep.status == REFUTED:
            rep.add("witness_file", dump_witness(g, rep, dump_dir))
    return rep


def check_bound(g: Graph, k: int, *, profile: RadiusDiameterReport | None = None, dump_dir=None, **kw):
    """``sdiam_k <= bound(k) * srad_k`` with ``bound_for(k)``."""
    return _bound_report("bound", g, k, bound_for(k), profile, kw, dump_dir)


def check_tree_bound(t: Graph, k: int, *, profile: RadiusDiameterReport | None = None, dump_dir=None, **kw):
    """``sdiam_k(T) <= k/(k-1) * srad_k(T)`` for a tree ``T``."""
    if not is_tree(t):
        raise GraphError("check_tree_bound needs a tree")
    return _bound_report("tree_bound", t, k, tree_bound_for(k), profile, kw, dump_dir)


def verify_gk(k: int, tier: str = "witness", *, force: bool = False, **kw) -> VerificationReport:
    """Check srad_k(G_k) = k+1 and sdiam_k(G_k) = k+3."""
    rep = VerificationReport("gk")
    if tier not in ("witness", "exhaustive"):
        raise ValueError(f"unknown tier {tier!r}")
    with _timed(rep):
        h = build_gk(k)
        g = h.graph
        rep.add("k", k)
        if tier == "exhaustive" and k > GK_EXHAUSTIVE_MAX_K and not force:
            rep.status = SKIPPED
            rep.add("max_k", GK_EXHAUSTIVE_MAX_K)
            return rep
        r_set = ["r"] + [f"d{i}" for i in range(1, k)]
        d_set = [f"d{i}" for i in range(1, k + 1)]
        d_r = steiner_distance(g, r_set).cost
        d_d = steiner_distance(g, d_set).cost
        e_r = k_eccentricity(g, h["r"], k, force=force, **kw).value
        rep.add("dR", d_r)
        rep.add("dD", d_d)
        rep.add("e_r", e_r)
        rep.expect("dR", d_r == k + 1)
        rep.expect("dD", d_d == k + 3)
        rep.expect("e_r", e_r == k + 1)
        if tier == "exhaustive":
            prof = steiner_profile(g, k, force=force, **kw)
            e_d1 = prof.eccentricity(h["d1"]).value
            rep.add("e_d1", e_d1)
            rep.add("srad", prof.srad)
            rep.add("sdiam", prof.sdiam)
            rep.add("ratio", prof.ratio)
            rep.expect("e_d1", e_d1 == k + 3)
            rep.expect("srad", prof.srad == k + 1)
            rep.expect("sdiam", prof.sdiam == k + 3)
            rep.expect("tight", prof.ratio == bound_for(k))
    return rep


def _h_distance_failures(h) -> list[str]:
    g = h.graph
    bad = []
    for i in range(1, 5):
        want = 2 if i == 4 else 1
        if distance(g, h["v0"], h[f"u{i}"]) != want:
            bad.append(f"v0-u{i}")
    for i in range(1, 5):
        for j in range(1, 5):
            if (i, j) not in H_MATCHING and distance(g, h[f"u{i}"], h[f"v{j}"]) != 6:
                bad.append(f"u{i}-v{j}")
    return bad


def verify_h(tier: str = "witness", *, force: bool = False, **kw) -> VerificationReport:
    """Distances, ``e_4(v0) = 20`` and ``d(v1..v4) = 26`` on H; optionally the full sweep."""
    rep = VerificationReport("h")
    with _timed(rep):
        h = build_h()
        g = h.graph
        bad = _h_distance_failures(h)
        rep.add("distances", "ok" if not bad else ",".join(bad))
        rep.expect("distances", not bad)
        e_v0 = k_eccentricity(g, h["v0"], 4, force=force, **kw).value
        d_d = steiner_distance(g, ["v1", "v2", "v3", "v4"]).cost
        rep.add("e_v0", e_v0)
        rep.add("dD", d_d)
        rep.add("ratio", Fraction(d_d, e_v0))
        rep.expect("e_v0", e_v0 == 20)
        rep.expect("dD", d_d == 26)
        rep.expect("below_10_7", within(d_d, e_v0, Fraction(10, 7)) and 7 * d_d < 10 * e_v0)
        if tier == "exhaustive":
            prof = steiner_profile(g, 4, force=force, **kw)
            rep.add("srad", prof.srad)
            rep.add("sdiam", prof.sdiam)
            rep.add("center", tuple(g.name(v) for v in sorted(prof.center_vertices)))
            rep.expect("srad", prof.srad == 20)
            rep.expect("sdiam", prof.sdiam == 26)
        elif tier != "witness":
            raise ValueError(f"unknown tier {tier!r}")
    return rep


def _pick_fourleaf(trees, terminals, v0, want):
    for t in trees:
        shape = classify_shape(t, terminals, v0)
        if shape.kind == "fourleaf" and (want is None or want(shape, t)):
            return t, shape
    return None, None


def verify_claim_violation(limit: int = 2000) -> VerificationReport:
    """Reproduce ``|T_2''| + a_1 + b_1 = 25 < 26 = sdiam_4(H)``.

    Steiner trees are not unique in H, so both ``T_1`` and ``T_2`` are taken
    from the full list of minimum trees: ``T_2`` as the four-leaf tree centred
    at ``u3`` and ``T_1`` as the four-leaf tree centred at ``u4``.
    """
    rep = VerificationReport("claim")
    with _timed(rep):
        h = build_h()
        g = h.graph
        v0 = h["v0"]
        d = [h[f"v{j}"] for j in range(1, 5)]
        sdiam = steiner_distance(g, d).cost

        d2 = [v0, h["v1"], h["v3"], h["v4"]]
        t2, shape2 = _pick_fourleaf(
            enumerate_min_steiner_trees(g, d2, limit), d2, v0, lambda s, t: s.s == h["u3"]
        )
        rep.expect("T2_found", t2 is not None)
        if t2 is None:
            return rep
        t2pp = prune_to_t_double_prime(t2, shape2)
        rep.add("T2", t2.cost)
        rep.add("T2pp", t2pp.size)
        rep.expect("T2", t2.cost == 19)
        rep.expect("T2pp", t2pp.size == 13)

        d1 = [v0, h["v2"], h["v3"], h["v4"]]
        t1, shape1 = _pick_fourleaf(
            enumerate_min_steiner_trees(g, d1, limit), d1, v0, lambda s, t: s.measurements() == (6, 6, 6, 0, 2)
        )
        rep.expect("T1_found", t1 is not None)
        if t1 is None:
            return rep
        dec = decompose(g, d, v0, trees={1: t1, 2: t2})
        shape = classify_shape(dec.entry(1).tree, dec.entry(1).terminals, v0)
        a, b, c, dd, ell = shape.measurements()
        for name, val in zip(("a1", "b1", "c1", "d1", "ell1"), (a, b, c, dd, ell)):
            rep.add(name, val)
        rep.expect("shape", (a, b, c, dd, ell) == (6, 6, 6, 0, 2))
        rep.expect("ell_identity", dec.entry(1).ell == ell)
        lhs = t2pp.size + a + b
        rep.add("lhs", lhs)
        rep.add("sdiam", sdiam)
        rep.expect("sdiam", sdiam == 26)
        rep.expect("violation", lhs == 25 and lhs < sdiam)
        # findings about the claim's hypotheses on this instance
        ells = tuple(e.ell for e in dec.entries)
        rep.add("ells", ells)
        rep.add("ell1_minimal", ells[0] == min(ells))
        pts = [v0, *d]
        min_pair = min(distance(g, u, v) for u, v in combinations(pts, 2))
        rep.add("min_pair_dist", min_pair)
        rep.add("pair_premise", 10 * min_pair > 3 * sdiam)
        rep.add("ell_premise", 10 * ell < sdiam)
    return rep


def lemma_bounds(dec: Decomposition, sdiam: int, p: Fraction):
    """Smallest tree distances in ``T_1`` next to the two lemma thresholds."""
    first = dec.first
    others = [e.removed for e in dec.entries if e.index != first.index]
    dist = {v: first.tree.distances_from(v) for v in others}
    to_v0 = min(dist[v][dec.v0] for v in others)
    pairs = [dist[u][w] for u, w in combinations(others, 2)]
    threshold = (p - 1) / p * sdiam
    return to_v0, (min(pairs) if pairs else None), threshold


def check_lemma(
    g: Graph,
    k: int,
    p,
    *,
    profile: RadiusDiameterReport | None = None,
    all_centers: bool = False,
    **kw,
) -> VerificationReport:
    """Lemma inequalities on a diametral set and central vertex.

    With ``sdiam > p * srad`` and ``T_1`` the tree of least ell, every other
    ``v_i`` is farther than ``(p-1)/p * sdiam`` from v0 inside ``T_1`` and
    every pair ``v_i, v_j`` farther than that plus ``ell_1``.  Each ``T_i``
    also has at most ``srad`` edges.
    """
    p = Fraction(p)
    if p <= 1:
        raise ValueError("p must exceed 1")
    rep = VerificationReport("lemma")
    with _timed(rep):
        prof = profile or steiner_profile(g, k, **kw)
        rep.add("k", k)
        rep.add("p", p)
        rep.add("srad", prof.srad)
        rep.add("sdiam", prof.sdiam)
        if not prof.sdiam > p * prof.srad:
            rep.status = PREMISE_NOT_MET
            return rep
        centers = sorted(prof.center_vertices) if all_centers else [min(prof.center_vertices)]
        worst_v0 = worst_pair = None
        for v0 in centers:
            dec = decompose(g, prof.diametral_set, v0)
            rep.expect("tree_le_srad", all(e.tree.size <= prof.srad for e in dec.entries))
            to_v0, pair, threshold = lemma_bounds(dec, prof.sdiam, p)
            rep.expect("dist_v0", to_v0 > threshold)
            if pair is not None:
                rep.expect("dist_pair", pair > threshold + dec.first.ell)
            worst_v0 = to_v0 if worst_v0 is None else min(worst_v0, to_v0)
            if pair is not None:
                slack = pair - dec.first.ell
                worst_pair = slack if worst_pair is None else min(worst_pair, slack)
        rep.add("threshold", threshold)
        rep.add("min_dist_v0", worst_v0)
        if worst_pair is not None:
            rep.add("min_pair_minus_ell1", worst_pair)
        rep.add("centers_checked", len(centers))
        rep.failures = sorted(set(rep.failures))
    return rep


def check_corollary(g: Graph, k: int, **kw) -> VerificationReport:
    """Lemma instance at ``p = bound_for(k)`` (3/10 for k = 4, 2/(k+3) for k >= 5)."""
    rep = check_lemma(g, k, bound_for(k), **kw)
    rep.claim = "corollary"
    return rep

