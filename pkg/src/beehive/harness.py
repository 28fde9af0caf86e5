"""Multi-run experiments: 30-run statistics, acceleration rates, comparison tables."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import ConfigurationError
from .engine import RunResult, TerminationRule, VariantConfig, run
from .problems import Problem, make_problem

# Report formatting threshold: statistics whose magnitude falls below this are
# written as exact zero.
ZERO_THRESHOLD = 1e-20


@dataclass(frozen=True)
class ExperimentStats:
    """Cross-run aggregates for one (problem, variant) pair."""

    problem: str
    variant: str
    dim: int
    runs: int
    best: float
    mean: float
    sd: float
    mean_nfe: float


def _run_remote(problem_name, dimension, config, termination, seed):
    # worker-side rebuild keeps the payload picklable (no objective closures)
    problem = make_problem(problem_name, dimension)
    return run(problem, config, termination, seed)


def run_batch(problem: Problem, config: VariantConfig, termination: TerminationRule,
              runs: int, base_seed: int, jobs: int = 1) -> list[RunResult]:
    """Independent seeded runs, seed = base_seed + index; order follows the seeds."""
    if runs < 1:
        raise ConfigurationError("runs must be >= 1")
    seeds = [base_seed + i for i in range(runs)]
    if jobs <= 1 or runs == 1:
        return [run(problem, config, termination, s) for s in seeds]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [
            pool.submit(_run_remote, problem.name, problem.dimension, config, termination, s)
            for s in seeds
        ]
        return [f.result() for f in futures]


def aggregate(problem: Problem, variant: str, results: list[RunResult],
              sample_sd: bool = False) -> ExperimentStats:
    """Best/mean/SD of final objectives plus mean NFE, in the user's sense."""
    bests = np.array([r.best_objective for r in results])
    best = float(bests.max() if problem.direction == "maximize" else bests.min())
    ddof = 1 if sample_sd and len(results) > 1 else 0
    return ExperimentStats(
        problem=problem.name,
        variant=variant,
        dim=problem.dimension,
        runs=len(results),
        best=best,
        mean=float(bests.mean()),
        sd=float(bests.std(ddof=ddof)),
        mean_nfe=float(np.mean([r.nfe for r in results])),
    )


def run_experiment(problem: Problem, config: VariantConfig, termination: TerminationRule,
                   runs: int = 30, base_seed: int = 0, jobs: int = 1,
                   sample_sd: bool = False) -> ExperimentStats:
    results = run_batch(problem, config, termination, runs, base_seed, jobs)
    return aggregate(problem, config.strategy, results, sample_sd=sample_sd)


def acceleration_rate(nfe_baseline: float, nfe_other: float) -> float:
    """Percent NFE reduction of `other` relative to `baseline`; positive = faster."""
    if nfe_baseline <= 0:
        raise ValueError("baseline NFE must be positive")
    return 100.0 * (nfe_baseline - nfe_other) / nfe_baseline


@dataclass(frozen=True)
class ComparisonTable:
    """NFE columns per variant plus pairwise acceleration rates against a baseline.

    `ar[variant][problem]` holds the signed rate even where the baseline is
    slower; `slower` flags those cells (rendered as "---"). Averages include
    the signed values as-is, so slower cells pull the footer average down.
    """

    problems: tuple[str, ...]
    variants: tuple[str, ...]
    baseline: str
    nfe: dict[str, dict[str, float]]  # variant -> problem -> mean NFE
    ar: dict[str, dict[str, float]]   # non-baseline variant -> problem -> AR
    slower: dict[str, dict[str, bool]]
    average_ar: dict[str, float]


def compare_table(stats: list[ExperimentStats], baseline_variant: str) -> ComparisonTable:
    """Build the per-problem NFE/AR comparison against `baseline_variant`."""
    variants = tuple(dict.fromkeys(s.variant for s in stats))
    if baseline_variant not in variants:
        raise ConfigurationError(f"baseline {baseline_variant!r} not among the stats")
    by_variant: dict[str, dict[str, float]] = {v: {} for v in variants}
    for s in stats:
        by_variant[s.variant][s.problem] = s.mean_nfe
    problems = tuple(by_variant[baseline_variant])
    for v in variants:
        if tuple(by_variant[v]) != problems:
            raise ConfigurationError(f"variant {v!r} does not cover the same problems")

    others = tuple(v for v in variants if v != baseline_variant)
    ar: dict[str, dict[str, float]] = {}
    slower: dict[str, dict[str, bool]] = {}
    average_ar: dict[str, float] = {}
    for v in others:
        ar[v] = {
            p: acceleration_rate(by_variant[v][p], by_variant[baseline_variant][p])
            for p in problems
        }
        slower[v] = {p: ar[v][p] < 0 for p in problems}
        average_ar[v] = sum(ar[v].values()) / len(problems)
    return ComparisonTable(
        problems=problems,
        variants=variants,
        baseline=baseline_variant,
        nfe=by_variant,
        ar=ar,
        slower=slower,
        average_ar=average_ar,
    )


def convergence_export(results: list[RunResult]) -> tuple[np.ndarray, np.ndarray]:
    """Median best-objective across runs on a common NFE grid.

    The grid is the sorted union of all trace NFE values; each trace is
    linearly interpolated onto it (held flat beyond its ends).
    """
    if not results:
        raise ValueError("no runs to export")
    grid = np.unique(np.concatenate([[n for n, _ in r.trace] for r in results]))
    series = np.empty((len(results), grid.size))
    for row, r in enumerate(results):
        xs = np.array([n for n, _ in r.trace], dtype=float)
        ys = np.array([f for _, f in r.trace])
        series[row] = np.interp(grid, xs, ys)
    return grid, np.median(series, axis=0)


def format_stat(value: float) -> str:
    """Report-table cell: values under the zero threshold print as 0."""
    if abs(value) < ZERO_THRESHOLD:
        return "0"
    return f"{value:.2E}"
