"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 refuted claim or bound
violation, 3 computation budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from .eccentricity import BudgetExceeded, k_eccentricity, steiner_profile
from .families import EnsembleConfig, build_gk, build_h
from .graph import GraphError, read_graph, write_graph
from .scan import ratio_scan
from .steiner import steiner_distance
from .verify import (
    REFUTED,
    SKIPPED,
    check_bound,
    check_lemma,
    verify_claim_violation,
    verify_gk,
    verify_h,
)

EXIT_OK, EXIT_USAGE, EXIT_REFUTED, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def rational(text: str) -> Fraction:
    parts = text.split("/")
    if len(parts) != 2 or not all(p.strip().lstrip("-").isdigit() for p in parts):
        raise argparse.ArgumentTypeError(f"expected NUM/DEN, got {text!r}")
    num, den = (int(p) for p in parts)
    if den == 0:
        raise argparse.ArgumentTypeError("denominator must be nonzero")
    return Fraction(num, den)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: all cores)")
    common.add_argument("--budget", type=int, default=None, help="Steiner evaluation cap (default: $STEINER_BUDGET)")
    common.add_argument("--force", action="store_true", help="ignore the evaluation budget")

    p = _Parser(prog="steinerdist", description="Exact Steiner distances, k-radius and k-diameter.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("dist", parents=[common], help="Steiner distance of a vertex set")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("-S", "--set", required=True, help="comma-separated labels or indices")

    s = sub.add_parser("ecc", parents=[common], help="Steiner k-eccentricity of a vertex")
    s.add_argument("-g", "--graph", required=True)
    s.add_argument("-k", type=int, required=True)
    s.add_argument("-v", "--vertex", required=True)

    for name in ("radius", "diameter", "center"):
        s = sub.add_parser(name, parents=[common], help=f"Steiner k-{name}")
        s.add_argument("-g", "--graph", required=True)
        s.add_argument("-k", type=int, required=True)
        s.add_argument("--witness", action="store_true")

    s = sub.add_parser("gen", help="write a family graph")
    s.add_argument("family", choices=["gk", "h"])
    s.add_argument("-k", type=int)
    s.add_argument("-o", "--output", required=True)

    s = sub.add_parser("verify", parents=[common], help="check a known value, bound or inequality")
    s.add_argument("target", choices=["gk", "h", "claim", "bound", "lemma"])
    s.add_argument("-k", type=int)
    s.add_argument("-g", "--graph")
    s.add_argument("-p", type=rational)
    s.add_argument("--tier", choices=["witness", "exhaustive"], default="witness")

    s = sub.add_parser("scan", parents=[common], help="random search for extreme ratios")
    s.add_argument("--ensemble", choices=["tree", "gnp"], required=True)
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-p", type=rational, default=Fraction(3, 10))
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output", help="write the best witness graph here")

    s = sub.add_parser("bench", help="time the Steiner DP")
    s.add_argument("--repeat", type=int, default=3)
    return p


def _need(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            flag = f"-{name}" if len(name) == 1 else f"--{name}"
            raise UsageError(f"{args.command} {getattr(args, 'target', '') or ''}: missing {flag}".replace("  ", " "))


def _names(g, vertices) -> str:
    return ",".join(g.name(v) for v in vertices)


def _kw(args) -> dict:
    return {"threads": args.threads, "budget": args.budget, "force": args.force}


def _cmd_dist(args, out):
    g = read_graph(args.graph)
    res = steiner_distance(g, [x.strip() for x in args.set.split(",") if x.strip()])
    out(f"cost={res.cost}")
    out("edges=" + ",".join(f"{g.name(u)}-{g.name(v)}" for u, v in res.sorted_edges()))
    return EXIT_OK


def _cmd_ecc(args, out):
    g = read_graph(args.graph)
    rep = k_eccentricity(g, g.index(args.vertex), args.k, **_kw(args))
    out(f"vertex={g.name(rep.vertex)} k={rep.k} ecc={rep.value} witness={_names(g, rep.witness)}")
    return EXIT_OK


def _cmd_profile(args, out):
    g = read_graph(args.graph)
    prof = steiner_profile(g, args.k, **_kw(args))
    center = _names(g, sorted(prof.center_vertices))
    if args.command == "radius":
        line = f"k={args.k} srad={prof.srad}" + (f" center={center}" if args.witness else "")
    elif args.command == "diameter":
        line = f"k={args.k} sdiam={prof.sdiam}" + (f" diametral={_names(g, prof.diametral_set)}" if args.witness else "")
    else:
        line = f"k={args.k} center={center}" + (f" srad={prof.srad}" if args.witness else "")
    out(line)
    return EXIT_OK


def _cmd_gen(args, out):
    if args.family == "gk":
        _need(args, "k")
        handle = build_gk(args.k)
    else:
        handle = build_h()
    write_graph(handle.graph, args.output)
    out(f"wrote={args.output} n={handle.graph.vertex_count} m={handle.graph.edge_count}")
    return EXIT_OK


def _cmd_verify(args, out):
    kw = _kw(args)
    if args.target == "gk":
        _need(args, "k")
        rep = verify_gk(args.k, args.tier, **kw)
    elif args.target == "h":
        rep = verify_h(args.tier, **kw)
    elif args.target == "claim":
        rep = verify_claim_violation()
    elif args.target == "bound":
        _need(args, "graph", "k")
        rep = check_bound(read_graph(args.graph), args.k, **kw)
    else:
        _need(args, "graph", "k", "p")
        rep = check_lemma(read_graph(args.graph), args.k, args.p, **kw)
    out(rep.format())
    if rep.status == REFUTED:
        return EXIT_REFUTED
    if rep.status == SKIPPED:
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_scan(args, out):
    try:
        cfg = EnsembleConfig(args.ensemble, args.n, seed=args.seed, p=args.p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = ratio_scan(cfg, args.k, args.trials, **_kw(args))
    out(res.format())
    for v in res.violations:
        out(f"violation trial={v.trial} seed={v.seed} kind={v.kind}")
    if args.output and res.best_graph is not None:
        write_graph(res.best_graph, args.output)
        out(f"wrote={args.output}")
    return EXIT_OK if res.ok else EXIT_REFUTED


def _cmd_bench(args, out):
    h = build_h()
    g = h.graph
    cases = [
        ("h_q4", g, ["v1", "v2", "v3", "v4"]),
        ("h_q5", g, ["v0", "v1", "v2", "v3", "v4"]),
        ("g8_q8", build_gk(8).graph, [f"d{i}" for i in range(1, 9)]),
    ]
    for name, graph, terms in cases:
        best = None
        for _ in range(max(1, args.repeat)):
            t0 = time.perf_counter()
            cost = steiner_distance(graph, terms).cost
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        out(f"bench={name} n={graph.vertex_count} q={len(terms)} cost={cost} seconds={best:.6f}")
    t0 = time.perf_counter()
    rep = k_eccentricity(g, h["v0"], 4, force=True)
    out(f"bench=h_e4_v0 value={rep.value} seconds={time.perf_counter() - t0:.3f}")
    return EXIT_OK


COMMANDS = {
    "dist": _cmd_dist,
    "ecc": _cmd_ecc,
    "radius": _cmd_profile,
    "diameter": _cmd_profile,
    "center": _cmd_profile,
    "gen": _cmd_gen,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
    "bench": _cmd_bench,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    def out(line):
        print(line, file=stdout)

    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "threads", None) is not None and args.threads < 1:
            raise UsageError("--threads must be >= 1")
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_BUDGET
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())

