"""Command-line entry point: ``hmnet {ndl,pipeline,analyze,experiment}``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .degrees import DegreeDistributionSpec, ndl_stats, parse_dist, read_ndl, sample_ndl, validate_ndl, write_ndl
from .errors import ConstructionError, HmnetError, NDLError, ParseError, SamplingError, InvalidSpecError
from .experiments import columns, run_suite, summarize, to_csv
from .graph import read_edge_list, write_edge_list
from .metrics import compute_report, write_report
from .pipeline import run_pipeline
from .richclub import parse_condition
from .rng import U64, stream
from .topology import average_edge_distance, parse_topology, write_topology

EXIT_USAGE = 2
EXIT_CONSTRUCTION = 3
EXIT_IO = 4

log = logging.getLogger("hmnet")


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value <= U64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _add_dist_flags(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--dist", required=required, help="normal:<mean>,<sd> or powerlaw:<gamma>[,<xmin>]")
    p.add_argument("--n", type=int, required=required, help="number of nodes")
    p.add_argument("--degmin", type=int, default=3, help="minimum node degree (default 3)")
    p.add_argument("--degcap", type=int, help="maximum node degree (default n // 3)")


def _spec(args) -> DegreeDistributionSpec:
    kind = parse_dist(args.dist)
    return DegreeDistributionSpec(kind, deg_min=args.degmin, deg_max_cap=args.degcap)


def _params_line(**params) -> str:
    return "# " + " ".join(f"{k}={v}" for k, v in params.items())


def cmd_ndl(args) -> int:
    spec = _spec(args)
    ndl = sample_ndl(spec, args.n, stream(args.seed, "ndl"))
    validate_ndl(ndl, args.n, spec)
    if args.out:
        write_ndl(args.out, ndl, spec.describe(), args.seed)
    print("min\tmax\tmean\tstddev\tmode\tmedian\tM")
    print(ndl_stats(ndl).row())
    return 0


def cmd_pipeline(args) -> int:
    if args.ndl:
        ndl, fields = read_ndl(args.ndl)
        source = f"file:{args.ndl}"
    elif args.dist:
        if args.n is None:
            raise InvalidSpecError("--dist needs --n")
        spec = _spec(args)
        ndl = sample_ndl(spec, args.n, stream(args.seed, "ndl"))
        source = spec.describe()
    else:
        raise InvalidSpecError("give --ndl FILE or --dist/--n")
    validate_ndl(ndl, len(ndl))
    rich = parse_condition(args.rich_club)
    res = run_pipeline(
        ndl, args.seed, ts=args.ts, pg=args.pg, rich_club=rich, attempts=args.attempts,
        retries=args.retries, depth=args.depth, jobs=args.jobs,
    )
    params = _params_line(
        ndl=source, ts=args.ts, pg=args.pg, rich_club=args.rich_club,
        attempts=args.attempts if args.attempts is not None else "default",
        construction_attempt=res.construction_attempt,
    )
    prefix = Path(args.out_prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    for stage, g in (("g0", res.g0), ("gr", res.gr), ("gm", res.gm)):
        write_edge_list(f"{prefix}.{stage}.edges", g, args.seed, [params + f" stage={stage}"])
    head = [f"# seed={args.seed}", params]
    write_report(f"{prefix}.gr.report", res.report_r, head + ["# stage=gr reference=gr"])
    write_report(f"{prefix}.gm.report", res.report_m, head + ["# stage=gm reference=gr"])
    if args.dump_topology:
        write_topology(f"{prefix}.topology", res.topology)
    r, m = res.report_r, res.report_m
    print(f"aed_r={r.aed!r} aed_m={m.aed!r} q2={m.q2!r} top_q_r={r.top_q!r} top_q_m={m.top_q!r}")
    return 0


def cmd_analyze(args) -> int:
    g, fields, _ = read_edge_list(args.graph)
    topology = parse_topology(args.topology) if args.topology else None
    if topology is not None and topology.n != g.n:
        raise InvalidSpecError(f"topology has {topology.n} nodes, graph {g.n}")
    ref = None
    if args.reference:
        if topology is None:
            raise InvalidSpecError("--reference needs --topology")
        gref, _, _ = read_edge_list(args.reference)
        ref = average_edge_distance(gref, topology)
    report = compute_report(g, topology, ref, depth=args.depth, jobs=args.jobs, strict_h=args.strict_h)
    if not report.connected:
        print("warning: graph is disconnected; path metrics use the largest component", file=sys.stderr)
    head = [f"# graph={args.graph} seed={fields.get('seed', 'unknown')}",
            f"# topology={args.topology or 'none'} reference={args.reference or 'none'}"]
    if args.report:
        write_report(args.report, report, head)
    else:
        sys.stdout.write(report.to_text())
    return 0


def cmd_experiment(args) -> int:
    seeds = range(args.seed, args.seed + args.seeds)
    rows = run_suite(args.suite, seeds, jobs=args.jobs, ts=args.ts, pg=args.pg)
    cols = columns(args.suite)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    prov = [f"suite={args.suite} seeds={args.seed}..{args.seed + args.seeds - 1} ts={args.ts} pg={args.pg}"]
    keys = ["ndl", "condition", "seed", "stage", "status"]
    (out / f"{args.suite}_runs.csv").write_text(to_csv(rows, keys + cols, prov))
    summary = summarize(rows, cols)
    skeys = ["ndl", "condition", "stage", "runs"] + [f"{c}_{s}" for c in cols for s in ("mean", "sd")]
    (out / f"{args.suite}_summary.csv").write_text(to_csv(summary, skeys, prov))
    print(f"{len(rows)} rows written to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hmnet", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ndl", help="sample a node degree list")
    _add_dist_flags(p, required=True)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out", help="degree-list file to write")
    p.set_defaults(func=cmd_ndl)

    p = sub.add_parser("pipeline", help="generate G0, Gr and Gm and measure them")
    p.add_argument("--ndl", help="degree-list file")
    _add_dist_flags(p, required=False)
    p.add_argument("--ts", type=int, default=4, help="minimum module size (default 4)")
    p.add_argument("--pg", type=float, default=0.8, help="modularization multiplier (default 0.8)")
    p.add_argument("--attempts", type=int, help="randomization attempts (default n(n-1)/16)")
    p.add_argument("--rich-club", default="none", help="none | top10:0.75 | top10:0.00 | random10:<p> ...")
    p.add_argument("--retries", type=int, default=0, help="extra construction attempts with fresh streams")
    p.add_argument("--depth", type=int, default=3, help="topology levels reported for Q")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for path metrics")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--dump-topology", action="store_true")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("analyze", help="measure an edge-list file")
    p.add_argument("--graph", required=True)
    p.add_argument("--topology", help="<n>:<ts>")
    p.add_argument("--reference", help="edge list that Q2 compares against")
    p.add_argument("--report", help="report file (stdout if omitted)")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--strict-h", action="store_true",
                   help="count equal-degree steps as breaking a hierarchical path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("experiment", help="multi-seed experiment suites")
    p.add_argument("--suite", choices=("table2", "appendixA"), required=True)
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--seed", type=_seed, default=0, help="first seed")
    p.add_argument("--ts", type=int, default=4)
    p.add_argument("--pg", type=float, default=0.8)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except ConstructionError as exc:
        print(f"error: construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NDLError, SamplingError, InvalidSpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HmnetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
