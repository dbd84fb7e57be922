#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
CLI entry point for the regular-loops package
This module provides the command-line interface when installed via pip
"""

import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from regular_loops.config import Budgets, configure_logging, format_version_info, get_app_info
from regular_loops.errors import RegularLoopsError
from regular_loops.experiments import (
    SweepConfig,
    excess_tail_probability,
    run_sweep,
    walk_intersection_probability,
)
from regular_loops.graphs import GraphModelFactory, RngStream, load_graph, save_graph
from regular_loops.loops import take_census
from regular_loops.plot import emit_plot
from regular_loops.spectra import gk_discrepancy, spectral_report
from regular_loops.theory import (
    asymptotic_count,
    exact_expected_simple,
    exact_simple_closed_prob,
    exact_simple_walk_prob,
    predicted_ratio,
)

logger = logging.getLogger(__name__)

BUDGET_FIELDS = ["enumeration", "oracle", "dfs", "trace", "direct", "rejection"]


def _int_list(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _name_list(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _print_json(payload: Any) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _budgets(args: argparse.Namespace) -> Budgets:
    overrides = {name: getattr(args, f"budget_{name}", None) for name in BUDGET_FIELDS}
    return Budgets.from_env().with_overrides(**overrides)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_sample(args: argparse.Namespace) -> int:
    sampler = GraphModelFactory.create_sampler(args.model, _budgets(args))
    graph = sampler(args.d, args.n, RngStream(args.seed, args.stream_index))
    if args.out:
        save_graph(graph, args.out)
        logger.info(f"Sampled {args.model} graph d={args.d} n={args.n} -> {args.out}")
    else:
        _print_json(graph.to_dict())
    return 0


def cmd_census(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    budgets = _budgets(args)
    lengths = args.k_grid or ([args.k] if args.k is not None else None)
    if not lengths:
        raise argparse.ArgumentTypeError("census needs --k or --k-grid")
    results = [take_census(graph, k, args.methods, budgets).to_json() for k in lengths]
    _print_json(results[0] if args.k_grid is None else results)
    return 0


def cmd_spectrum(args: argparse.Namespace) -> int:
    graph = load_graph(args.graph)
    budgets = _budgets(args)
    payload = spectral_report(graph, budgets).to_json()
    if args.gk_check:
        payload["gk_discrepancy"] = gk_discrepancy(graph, budgets.direct)
    _print_json(payload)
    return 0


def cmd_expect(args: argparse.Namespace) -> int:
    value = exact_expected_simple(args.d, args.n, args.k)
    print(f"{value.numerator}/{value.denominator}")
    print(f"{float(value):#.12g}")
    if args.details:
        p = exact_simple_closed_prob(args.d, args.n, args.k).value
        print(f"p = {p.numerator}/{p.denominator}")
        if args.d >= 2:
            print(f"asymptote = {float(asymptotic_count(args.d, args.k)):#.12g}")
        if args.k <= args.n:
            print(f"predicted_ratio = {predicted_ratio(args.d, args.n, args.k):#.12g}")
        print(f"simple_walk_prob = {float(exact_simple_walk_prob(args.d, args.n, args.k)):#.12g}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    budgets = _budgets(args)
    if args.config:
        config = SweepConfig.from_yaml(args.config, budgets)
    else:
        required = (("--d", args.d), ("--n", args.n), ("--k-grid", args.k_grid))
        missing = [flag for flag, value in required if value is None]
        if missing:
            raise argparse.ArgumentTypeError(f"sweep needs --config or {', '.join(missing)}")
        config = SweepConfig(
            d=args.d,
            n_values=tuple(args.n),
            k_values=tuple(args.k_grid),
            replicates=args.replicates,
            seed=args.seed,
            model=args.model,
            methods=tuple(args.methods),
            budgets=budgets,
            epsilon=args.epsilon,
            gap_epsilon=args.gap_epsilon,
        )
    result = run_sweep(config)
    if args.out:
        result.write(args.out)
    else:
        sys.stdout.write(result.to_csv())
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    where: Dict[str, str] = {}
    for condition in args.where or []:
        column, sep, value = condition.partition("=")
        if not sep:
            raise argparse.ArgumentTypeError(f"--where expects COLUMN=VALUE, got {condition!r}")
        where[column] = value
    emit_plot(args.csv, args.x, args.y, args.out, log_x=args.log_x, series_column=args.series, where=where or None)
    return 0


def cmd_walks(args: argparse.Namespace) -> int:
    stream = RngStream(args.seed)
    tail = excess_tail_probability(args.d, args.n, args.k, args.walks, stream.substream(0))
    intersection = walk_intersection_probability(args.d, args.n, args.k, args.walks, stream.substream(1))
    _print_json({"excess_tail": tail.to_json(), "intersection": intersection.to_json()})
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regular-loops",
        description="Regular Loops - non-backtracking loops on random regular graphs",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  regular-loops sample --d 3 --n 10 --seed 7 --out g.json      # Sample a configuration-model graph
  regular-loops census --graph g.json --k 6                    # Count loops of length 6
  regular-loops expect --d 3 --n 2 --k 1                       # Exact E[N_simp] under G(d, n)
  regular-loops sweep --config sweep.yaml --out results/run    # Monte Carlo sweep
  regular-loops --version                                      # Show version
        """,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable verbose logging")
    parser.add_argument("--version", action="store_true", help="Show version information")
    parser.add_argument("--info", action="store_true", help="Show application information")

    budgets = argparse.ArgumentParser(add_help=False)
    for name in BUDGET_FIELDS:
        budgets.add_argument(f"--budget-{name}", type=int, default=None, help=f"Override the {name} budget")

    subparsers = parser.add_subparsers(dest="command")

    sample = subparsers.add_parser("sample", parents=[budgets], help="Sample a random regular multigraph")
    sample.add_argument("--d", type=int, required=True, help="Degree")
    sample.add_argument("--n", type=int, required=True, help="Number of vertices")
    sample.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    sample.add_argument("--stream-index", type=int, default=0, help="Stream index under the seed (default: 0)")
    sample.add_argument("--model", default="configuration", help="configuration | uniform-simple")
    sample.add_argument("--out", help="Output graph JSON (default: standard output)")
    sample.set_defaults(handler=cmd_sample)

    census = subparsers.add_parser("census", parents=[budgets], help="Count loops on a graph")
    census.add_argument("--graph", required=True, help="Graph JSON file")
    census.add_argument("--k", type=int, help="Loop length")
    census.add_argument("--k-grid", type=_int_list, help="Comma-separated loop lengths")
    census.add_argument("--methods", type=_name_list, default=["dfs", "exact-trace"],
                        help="Comma list of dfs, exact-trace, spectral (default: dfs,exact-trace)")
    census.set_defaults(handler=cmd_census)

    spectrum = subparsers.add_parser("spectrum", parents=[budgets], help="Adjacency and non-backtracking spectra")
    spectrum.add_argument("--graph", required=True, help="Graph JSON file")
    spectrum.add_argument("--gk-check", action="store_true", help="Compare mapped and direct spectra")
    spectrum.set_defaults(handler=cmd_spectrum)

    expect = subparsers.add_parser("expect", help="Exact expected number of simple loops")
    expect.add_argument("--d", type=int, required=True, help="Degree")
    expect.add_argument("--n", type=int, required=True, help="Number of vertices")
    expect.add_argument("--k", type=int, required=True, help="Loop length")
    expect.add_argument("--details", action="store_true", help="Also print p, the asymptote and predictors")
    expect.set_defaults(handler=cmd_expect)

    sweep = subparsers.add_parser("sweep", parents=[budgets], help="Monte Carlo sweep over n and k")
    sweep.add_argument("--config", help="YAML sweep configuration")
    sweep.add_argument("--d", type=int, help="Degree")
    sweep.add_argument("--n", type=_int_list, help="Comma-separated vertex counts")
    sweep.add_argument("--k-grid", type=_int_list, help="Comma-separated loop lengths")
    sweep.add_argument("--replicates", type=int, default=10, help="Graphs per n value (default: 10)")
    sweep.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    sweep.add_argument("--model", default="configuration", help="configuration | uniform-simple")
    sweep.add_argument("--methods", type=_name_list, default=["dfs", "exact-trace"],
                       help="Comma list of dfs, exact-trace, spectral (default: dfs,exact-trace)")
    sweep.add_argument("--epsilon", type=float, default=0.25, help="Concentration tolerance (default: 0.25)")
    sweep.add_argument("--gap-epsilon", type=float, default=0.1, help="Spectral gap epsilon (default: 0.1)")
    sweep.add_argument("--out", help="Output prefix; writes PREFIX.csv and PREFIX.json (default: CSV to stdout)")
    sweep.set_defaults(handler=cmd_sweep)

    plot = subparsers.add_parser("plot", help="SVG line chart from a sweep CSV")
    plot.add_argument("--csv", required=True, help="Sweep CSV file")
    plot.add_argument("--x", default="k", help="x column (default: k)")
    plot.add_argument("--y", default="ratio_R", help="y column (default: ratio_R)")
    plot.add_argument("--series", default="n", help="Column that splits series (default: n)")
    plot.add_argument("--where", action="append", help="Row filter COLUMN=VALUE, repeatable")
    plot.add_argument("--log-x", action="store_true", help="Log-scaled x axis")
    plot.add_argument("--out", required=True, help="Output SVG file")
    plot.set_defaults(handler=cmd_plot)

    walks = subparsers.add_parser("walks", help="Self-intersection statistics of random walks")
    walks.add_argument("--d", type=int, required=True, help="Degree")
    walks.add_argument("--n", type=int, required=True, help="Number of vertices")
    walks.add_argument("--k", type=int, required=True, help="Walk length")
    walks.add_argument("--walks", type=int, default=10000, help="Number of walks (default: 10000)")
    walks.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    walks.set_defaults(handler=cmd_walks)

    return parser


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; 0 on success, 1 on a domain error, 2 on a usage error"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    configure_logging("DEBUG" if args.verbose else None)

    # Handle version
    if args.version:
        print(format_version_info())
        return 0

    # Handle info
    if args.info:
        _print_json(get_app_info())
        return 0

    handler: Optional[Callable[[argparse.Namespace], int]] = getattr(args, "handler", None)
    if handler is None:
        parser.print_help(sys.stderr)
        return 2

    try:
        return handler(args)
    except argparse.ArgumentTypeError as e:
        print(f"❌ Usage error: {e}", file=sys.stderr)
        return 2
    except RegularLoopsError as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        if args.verbose:
            import traceback
            traceback.print_exc()
        return 1
    except OSError as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return 1


def main():
    """Main CLI entry point for the regular-loops command"""
    sys.exit(dispatch())


if __name__ == '__main__':
    main()
