"""Command-line experiment driver: run, compare, and bench subcommands.

Artifacts: stats CSV (`problem,variant,dim,runs,best,mean,sd,mean_nfe`),
per-run trace CSVs (`nfe,best`), a comparison CSV with per-problem NFE and
acceleration-rate columns,
and JSON mirrors of each (JSON keeps full precision; CSV statistics use the
3-significant-digit, zero-below-threshold table style).

Exit codes: 0 success, 2 usage/configuration error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from .core import ConfigurationError
from .engine import STRATEGIES, RunResult, TerminationRule, VariantConfig
from .harness import (
    ComparisonTable,
    ExperimentStats,
    aggregate,
    compare_table,
    convergence_export,
    format_stat,
    run_batch,
)
from .problems import BENCHMARK_NAMES, ENGINEERING_NAMES, PROBLEM_NAMES, make_problem

STATS_HEADER = ["problem", "variant", "dim", "runs", "best", "mean", "sd", "mean_nfe"]

BENCH_DIMENSIONS = {
    "sphere": (30, 60),
    "griewank": (30, 60),
    "ackley": (30, 60),
    "rastrigin": (30, 60),
    "schaffer": (2, 3),
}


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def write_stats_csv(path: Path, stats: list[ExperimentStats]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(STATS_HEADER)
        for s in stats:
            writer.writerow(
                [s.problem, s.variant, s.dim, s.runs,
                 format_stat(s.best), format_stat(s.mean), format_stat(s.sd),
                 f"{s.mean_nfe:g}"]
            )


def write_stats_json(path: Path, stats: list[ExperimentStats]) -> None:
    with open(path, "w") as fh:
        json.dump([vars(s) for s in stats], fh, indent=2)
        fh.write("\n")


def read_stats_json(path: Path) -> list[ExperimentStats]:
    with open(path) as fh:
        return [ExperimentStats(**record) for record in json.load(fh)]


def write_trace_csv(path: Path, result: RunResult) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["nfe", "best"])
        for nfe, best in result.trace:
            writer.writerow([nfe, repr(best)])


def write_comparison_csv(path: Path, table: ComparisonTable) -> None:
    others = [v for v in table.variants if v != table.baseline]
    header = (["problem"] + [f"nfe_{v}" for v in table.variants]
              + [f"ar_{table.baseline}_vs_{v}" for v in others])
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for p in table.problems:
            row = [p] + [f"{table.nfe[v][p]:g}" for v in table.variants]
            for v in others:
                row.append("---" if table.slower[v][p] else f"{table.ar[v][p]:.2f}")
            writer.writerow(row)
        writer.writerow(["average_ar"] + [""] * len(table.variants)
                        + [f"{table.average_ar[v]:.2f}" for v in others])


def write_comparison_json(path: Path, table: ComparisonTable) -> None:
    doc = {
        "baseline": table.baseline,
        "problems": list(table.problems),
        "variants": list(table.variants),
        "nfe": table.nfe,
        "acceleration_rate": table.ar,
        "baseline_slower": table.slower,
        "average_acceleration_rate": table.average_ar,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def write_convergence_csv(path: Path, grid, median) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["nfe", "median_best"])
        for n, f in zip(grid, median):
            writer.writerow([f"{n:g}", repr(float(f))])


# ---------------------------------------------------------------------------
# Experiment plumbing
# ---------------------------------------------------------------------------

def _build_problem(name: str, dim: int | None, atoms: int | None):
    if name not in PROBLEM_NAMES:
        raise ConfigurationError(
            f"unknown problem {name!r}; choose from {', '.join(PROBLEM_NAMES)}"
        )
    return make_problem(name, dimension=dim, n_atoms=atoms)


def _build_variant(args, strategy: str) -> VariantConfig:
    adaptive = False if getattr(args, "no_adaptive", False) else None
    return VariantConfig(
        strategy=strategy,
        limit=args.limit,
        c_factor=args.c_factor,
        adaptive_sizing=adaptive,
        initial_colony=args.colony,
    )


def _build_termination(args, problem) -> TerminationRule:
    # accuracy stop only applies where an exact optimum is known (benchmarks)
    return TerminationRule(
        max_nfe=args.max_nfe,
        accuracy=args.accuracy,
        target=problem.known_optimum,
    )


def _execute(problem, args, strategy: str):
    config = _build_variant(args, strategy)
    termination = _build_termination(args, problem)
    results = run_batch(problem, config, termination, args.runs, args.seed, args.jobs)
    stats = aggregate(problem, strategy, results, sample_sd=args.sample_sd)
    return results, stats


def _emit_stats(out_dir: Path, fmt: str, stats: list[ExperimentStats]) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    if fmt in ("csv", "both"):
        write_stats_csv(out_dir / "stats.csv", stats)
    if fmt in ("json", "both"):
        write_stats_json(out_dir / "stats.json", stats)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_run(args) -> int:
    problem = _build_problem(args.problem, args.dim, args.atoms)
    results, stats = _execute(problem, args, args.variant)
    out_dir = Path(args.output_dir)
    _emit_stats(out_dir, args.format, [stats])
    if args.traces:
        for r in results:
            write_trace_csv(
                out_dir / f"{problem.name}_{args.variant}_trace_seed{r.seed}.csv", r
            )
        grid, median = convergence_export(results)
        write_convergence_csv(
            out_dir / f"{problem.name}_{args.variant}_convergence.csv", grid, median
        )
    print(f"{stats.problem} {stats.variant}: best={format_stat(stats.best)} "
          f"mean={format_stat(stats.mean)} sd={format_stat(stats.sd)} "
          f"mean_nfe={stats.mean_nfe:g}")
    return 0


def cmd_compare(args) -> int:
    variants = _split(args.variants)
    if len(variants) < 2:
        raise ConfigurationError("compare needs at least 2 variants")
    if args.baseline not in variants:
        raise ConfigurationError(f"baseline {args.baseline!r} is not among the variants")
    problems = [_build_problem(p, args.dim, args.atoms) for p in _split(args.problems)]
    all_stats = []
    for problem in problems:
        for strategy in variants:
            _, stats = _execute(problem, args, strategy)
            all_stats.append(stats)
    table = compare_table(all_stats, args.baseline)
    out_dir = Path(args.output_dir)
    _emit_stats(out_dir, args.format, all_stats)
    if args.format in ("csv", "both"):
        write_comparison_csv(out_dir / "comparison.csv", table)
    if args.format in ("json", "both"):
        write_comparison_json(out_dir / "comparison.json", table)
    for v, avg in table.average_ar.items():
        print(f"average AR {table.baseline} vs {v}: {avg:.2f}%")
    return 0


def cmd_bench(args) -> int:
    if args.suite not in ("benchmarks", "engineering", "all"):
        raise ConfigurationError(f"unknown suite {args.suite!r}")
    out_dir = Path(args.output_dir)
    all_stats: list[ExperimentStats] = []
    if args.suite in ("benchmarks", "all"):
        for name, dims in BENCH_DIMENSIONS.items():
            for dim in dims:
                problem = make_problem(name, dimension=dim)
                for strategy in STRATEGIES:
                    _, stats = _execute(problem, args, strategy)
                    all_stats.append(stats)
    comparison = None
    if args.suite in ("engineering", "all"):
        eng_stats = []
        for name in ENGINEERING_NAMES:
            problem = _build_problem(name, None, args.atoms)
            for strategy in STRATEGIES:
                _, stats = _execute(problem, args, strategy)
                eng_stats.append(stats)
        all_stats.extend(eng_stats)
        comparison = compare_table(
            [s for s in eng_stats if s.variant != "gbest"], "sac2"
        )
    _emit_stats(out_dir, args.format, all_stats)
    if comparison is not None:
        if args.format in ("csv", "both"):
            write_comparison_csv(out_dir / "comparison.csv", comparison)
        if args.format in ("json", "both"):
            write_comparison_json(out_dir / "comparison.json", comparison)
    print(f"wrote {len(all_stats)} stats records to {out_dir}")
    return 0


# ---------------------------------------------------------------------------
# Argument handling
# ---------------------------------------------------------------------------

def _split(csv_list: str) -> list[str]:
    return [item.strip() for item in csv_list.split(",") if item.strip()]


def load_config_file(path: str) -> dict:
    """Simple key=value file; keys use the long flag names."""
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected key=value")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


_INT_KEYS = {"dim", "atoms", "runs", "seed", "colony", "limit", "max_nfe", "jobs"}
_FLOAT_KEYS = {"c_factor", "accuracy"}
_BOOL_KEYS = {"traces", "no_adaptive", "sample_sd"}


def _coerce_config(values: dict) -> dict:
    out = {}
    for key, value in values.items():
        if key in _INT_KEYS:
            out[key] = int(float(value))
        elif key in _FLOAT_KEYS:
            out[key] = float(value)
        elif key in _BOOL_KEYS:
            out[key] = value.lower() in ("1", "true", "yes", "on")
        else:
            out[key] = value
    return out


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--runs", type=int, default=30)
    parser.add_argument("--seed", type=int, default=1, help="base seed; run i uses seed+i")
    parser.add_argument("--colony", type=int, default=100,
                        help="colony size (bees); food sources are half of this")
    parser.add_argument("--limit", type=int, default=100, help="abandonment limit")
    parser.add_argument("--c-factor", type=float, default=1.5)
    parser.add_argument("--max-nfe", type=int, default=1_000_000)
    parser.add_argument("--accuracy", type=float, default=1e-20)
    parser.add_argument("--no-adaptive", action="store_true",
                        help="disable adaptive colony sizing for the sac variants")
    parser.add_argument("--sample-sd", action="store_true",
                        help="use the n-1 standard deviation instead of population")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--output-dir", default="beehive_out")
    parser.add_argument("--format", choices=("csv", "json", "both"), default="both")
    parser.add_argument("--config", help="key=value config file; flags win on conflict")
    parser.add_argument("--dim", type=int, default=None)
    parser.add_argument("--atoms", type=int, default=None,
                        help="atom count for lennard_jones")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="beehive",
                                     description="Bee colony optimization experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one problem with one variant")
    p_run.add_argument("--problem", required=True)
    p_run.add_argument("--variant", choices=STRATEGIES, default="basic")
    p_run.add_argument("--traces", action="store_true",
                       help="write per-run trace CSVs and the median convergence series")
    _add_common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_cmp = sub.add_parser("compare", help="compare variants over a problem list")
    p_cmp.add_argument("--problems", required=True, help="comma-separated problem names")
    p_cmp.add_argument("--variants", default="basic,sac,sac1,sac2")
    p_cmp.add_argument("--baseline", default="sac2")
    _add_common(p_cmp)
    p_cmp.set_defaults(func=cmd_compare)

    p_bench = sub.add_parser("bench", help="run a full suite with standard settings")
    p_bench.add_argument("suite", choices=("benchmarks", "engineering", "all"))
    _add_common(p_bench)
    p_bench.set_defaults(func=cmd_bench)
    parser.command_parsers = [p_run, p_cmp, p_bench]
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if "--config" in argv:
        try:
            cfg_path = argv[argv.index("--config") + 1]
        except IndexError:
            parser.error("--config requires a path")
        try:
            defaults = _coerce_config(load_config_file(cfg_path))
            # options live on the subcommand parsers, so defaults go there too
            for sub in parser.command_parsers:
                sub.set_defaults(**defaults)
        except ConfigurationError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        except ValueError as exc:
            print(f"error: bad config value: {exc}", file=sys.stderr)
            return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if "BEEHIVE_SEED" in os.environ:
        try:
            args.seed = int(os.environ["BEEHIVE_SEED"])
        except ValueError:
            print("error: BEEHIVE_SEED must be an integer", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
