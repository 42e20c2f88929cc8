"""Command-line front end: ``hcpsolve solve|generate|verify|bottleneck``."""

from __future__ import annotations

import argparse
import logging
import random
import sys
from pathlib import Path

from . import verify as checks
from .bottleneck import InfeasibleError, WeightedGraph, solve_bottleneck
from .generators import GENERATORS, SEEDED, GenSpec, benchmark_suite
from .graph import GraphError, components
from .instance import InstanceFormatError, dump_machine, format_instance, read_instance, write_metadata
from .search import SolverParams, solve_disconnected
from .tour import ExternalTourProvider

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_PARSE = 2
EXIT_NO_SOLUTION = 3


def _solver_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-limit", type=float, default=1000.0, help="seconds (default 1000)")
    p.add_argument("--preferred-ratio", type=float, default=25.0)
    p.add_argument("--restarts", type=int, default=10, help="initial spanning trees")
    p.add_argument("--bad-perturbations", type=int, default=3000)
    p.add_argument("--parallel", type=int, default=1, metavar="WORKERS")
    p.add_argument("--tour-provider", default="internal", help="internal | external:<solver binary>")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--dedupe", action="store_true", help="drop repeated edges instead of failing")
    p.add_argument("--timing", action="store_true", help="include wall-clock fields in machine output")


def _params(args) -> SolverParams:
    provider = None
    if args.tour_provider.startswith("external:"):
        provider = ExternalTourProvider(args.tour_provider.split(":", 1)[1])
    elif args.tour_provider != "internal":
        raise SystemExit(f"unknown tour provider {args.tour_provider!r}")
    return SolverParams(
        preferred_ratio=args.preferred_ratio,
        max_initial_trees=args.restarts,
        max_bad_perturbations=args.bad_perturbations,
        time_limit=args.time_limit,
        seed=args.seed,
        tour_provider=provider,
        parallel=args.parallel,
    )


def _params_record(params: SolverParams) -> dict:
    return {
        "label": params.label,
        "preferred_ratio": params.preferred_ratio,
        "max_initial_trees": params.max_initial_trees,
        "max_bad_perturbations": params.max_bad_perturbations,
        "time_limit": params.time_limit,
    }


def cmd_solve(args) -> int:
    try:
        inst = read_instance(args.input)
        g = inst.graph(dedupe=args.dedupe)
    except (InstanceFormatError, OSError) as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    params = _params(args)
    name = Path(args.input).stem
    record = {"instance": name, "n": g.n, "m": g.m, "seed": params.seed, "params": _params_record(params)}
    if g.n < 3:
        # no Hamiltonian cycle exists below 3 vertices; report the path partition only
        ppn = len(components(g)) if g.m == 0 else 1
        record.update(hcn_estimate=None, ppn=ppn, added_edges=[], interrupted=False)
        _emit(record, args, None)
        return EXIT_OK
    ncomp = len(components(g))
    if ncomp > 1:
        print(f"notice: {name} is disconnected ({ncomp} components); solving each separately", file=sys.stderr)
    sol = solve_disconnected(g, params)
    record.update(
        hcn_estimate=sol.hcn_estimate,
        added_edges=[[inst.label(u), inst.label(v)] for u, v in sol.added_edges],
        paths=len(sol.partition),
        interrupted=sol.interrupted,
        certified=sol.certified,
        restarts_used=sol.restarts_used,
        perturbations_used=sol.perturbations_used,
    )
    timing = {"elapsed": round(sol.elapsed, 6), "first_found": round(sol.first_found, 6)}
    _emit(record, args, timing)
    return EXIT_OK


def _emit(record: dict, args, timing: dict | None) -> None:
    if args.format == "machine":
        if args.timing and timing:
            record = {**record, **timing}
        dump_machine(record, sys.stdout)
        return
    if record["hcn_estimate"] is None:
        print(f"{record['instance']}: n={record['n']} < 3, path partition number {record['ppn']}")
        return
    seconds = timing["first_found"] if getattr(args, "report_first_found", False) else timing["elapsed"]
    flag = " interrupted" if record["interrupted"] else ""
    print(f"{record['instance']:<32} {record['hcn_estimate']} ({seconds:.2f} s){flag}")
    print(f"  n={record['n']} m={record['m']} seed={record['seed']} params={record['params']['label']}")
    if record["added_edges"]:
        shown = " ".join(f"{a}-{b}" for a, b in record["added_edges"][:20])
        more = " ..." if len(record["added_edges"]) > 20 else ""
        print(f"  added edges: {shown}{more}")


def cmd_generate(args) -> int:
    if args.suite:
        out_dir = Path(args.output or "instances")
        out_dir.mkdir(parents=True, exist_ok=True)
        for spec in benchmark_suite(args.max_edges):
            _write_generated(spec, out_dir / f"{spec.name}.col")
        return EXIT_OK
    if not args.kind:
        print("error: generator kind required (or --suite paper)", file=sys.stderr)
        return EXIT_INFEASIBLE
    try:
        spec = _spec_from_args(args)
        if args.output:
            _write_generated(spec, Path(args.output))
        else:
            g = spec.build()
            sys.stdout.write(format_instance(g, _comments(spec, g)))
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    return EXIT_OK


def _spec_from_args(args) -> GenSpec:
    kind, vals = args.kind, args.values
    if kind == "er":
        if args.avg_degree is not None:
            return GenSpec("er-degree", {"n": int(vals[0]), "avg_degree": args.avg_degree}, args.seed)
        p = args.p if args.p is not None else float(vals[1])
        return GenSpec("er", {"n": int(vals[0]), "p": p}, args.seed)
    names = {
        "circulant": ("n", "k"),
        "grid": ("rows", "cols"),
        "pa": ("n", "out_degree"),
        "star": ("n",),
        "tree": ("levels", "children"),
    }
    if kind not in names:
        raise ValueError(f"unknown generator {kind!r}")
    if len(vals) != len(names[kind]):
        raise ValueError(f"{kind} takes {len(names[kind])} values: {' '.join(names[kind])}")
    return GenSpec(kind, {k: int(v) for k, v in zip(names[kind], vals)}, args.seed if kind in SEEDED else None)


def _comments(spec: GenSpec, g) -> list[str]:
    return [f"generator {spec.kind} {spec.params}" + (f" seed {spec.seed}" if spec.kind in SEEDED else "")]


def _write_generated(spec: GenSpec, path: Path) -> None:
    g = spec.build()
    path.write_text(format_instance(g, _comments(spec, g)))
    meta = {
        "generator": spec.kind,
        "parameters": spec.params,
        "seed": spec.seed if spec.kind in SEEDED else None,
        "n": g.n,
        "m": g.m,
        "components": len(components(g)),
    }
    if spec.kind == "pa":
        meta["initial_clique"] = spec.params["out_degree"] + 1
    write_metadata(path.with_suffix(path.suffix + ".meta.json"), meta)


def cmd_verify(args) -> int:
    rng = random.Random(args.seed)
    reports = []
    run_all = not (args.trees or args.spanning_trees or args.upper_bound or args.consistency or args.monotonicity)
    if args.trees or run_all:
        reports.append(checks.tree_optimality(args.trees or 200, args.max_n, rng))
    if args.consistency or run_all:
        reports.append(checks.hcn_ppn_consistency(args.consistency or 100, min(args.max_n, 10), rng))
    if args.spanning_trees or run_all:
        reports.append(checks.spanning_tree_bound(args.spanning_tree_count, min(args.max_n, 8), rng))
    if args.monotonicity or run_all:
        reports.append(checks.monotonicity(args.monotonicity or 500, args.max_n, rng))
    if args.upper_bound or run_all:
        params = SolverParams(seed=args.seed, time_limit=args.time_limit)
        report, equal = checks.upper_bound(args.upper_bound or 50, min(args.max_n, 10), rng, params)
        reports.append(report)
        print(f"     estimate equal to exact in {equal}/{report.total}")
    for r in reports:
        print(r.line())
        for f in r.failures:
            print(f"     {f}")
    return EXIT_OK if all(r.failed == 0 for r in reports) else EXIT_INFEASIBLE


def cmd_bottleneck(args) -> int:
    try:
        inst = read_instance(args.input, weighted=True)
        wg = WeightedGraph.from_edges(
            inst.n, [(u, v, w) for (u, v), w in zip(inst.edges, inst.weights or [])], dedupe=args.dedupe
        )
    except (InstanceFormatError, GraphError, OSError) as exc:
        print(f"error: {args.input}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    params = _params(args)
    try:
        res = solve_bottleneck(wg, args.k, params, inner="exact" if args.exact else "heuristic")
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    record = {
        "instance": Path(args.input).stem,
        "k": args.k,
        "threshold": res.threshold,
        "paths": [[inst.label(v) for v in p] for p in res.paths],
        "certificate_edges": [[inst.label(u), inst.label(v)] for u, v in res.certificate_edges],
        "upper_bound": res.upper_bound,
    }
    if args.format == "machine":
        dump_machine(record, sys.stdout)
    else:
        note = " (upper bound: heuristic inner solver)" if res.upper_bound else " (exact)"
        print(f"{record['instance']}: k={args.k} threshold={_fmt_number(res.threshold)}{note}")
        for p in record["paths"]:
            print("  " + " - ".join(p))
    return EXIT_OK


def _fmt_number(x):
    return int(x) if isinstance(x, float) and x.is_integer() else x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hcpsolve", description="Hamiltonian completion by multi-start local search")
    parser.add_argument("-v", "--verbose", action="store_true")
    # also accept -v after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="estimate the Hamiltonian completion number of an instance")
    p.add_argument("input")
    _solver_args(p)
    p.add_argument("--report-first-found", action="store_true", help="report when the final value was first reached")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", parents=[common], help="write a benchmark instance")
    p.add_argument("kind", nargs="?", choices=sorted(set(GENERATORS) - {"er-degree"}))
    p.add_argument("values", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--avg-degree", type=float)
    p.add_argument("-p", type=float, help="edge probability for er")
    p.add_argument("-o", "--output", help="file (or directory with --suite); stdout if omitted")
    p.add_argument("--suite", choices=("paper",))
    p.add_argument("--max-edges", type=int, default=2_000_000)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", parents=[common], help="cross-check against the exact oracles on small random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--trees", type=int, default=0, metavar="COUNT")
    p.add_argument("--consistency", type=int, default=0, metavar="COUNT", help="HCN/PPN consistency on random graphs")
    p.add_argument(
        "--spanning-trees", "--lemma5", dest="spanning_trees", action="store_true",
        help="minimum over all spanning trees equals PPN (n <= 8)",
    )
    p.add_argument("--spanning-tree-count", type=int, default=50)
    p.add_argument("--monotonicity", type=int, default=0, metavar="COUNT")
    p.add_argument("--upper-bound", type=int, default=0, metavar="COUNT")
    p.add_argument("--time-limit", type=float, default=60.0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bottleneck", parents=[common], help="min-max edge weight cover by at most k paths")
    p.add_argument("input")
    p.add_argument("k", type=int)
    p.add_argument("--exact", action="store_true", help="exact inner solver (n <= 16)")
    _solver_args(p)
    p.set_defaults(func=cmd_bottleneck)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
