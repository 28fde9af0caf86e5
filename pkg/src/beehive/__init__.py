"""Bee colony optimization library with adaptive colony sizing and an experiment harness."""

from .core import Bounds, Colony, ConfigurationError, FoodSource, RngStream
from .engine import (
    STRATEGIES,
    RunResult,
    TerminationRule,
    VariantConfig,
    fitness_map,
    run,
)
from .harness import (
    ExperimentStats,
    acceleration_rate,
    compare_table,
    convergence_export,
    run_batch,
    run_experiment,
)
from .problems import (
    BENCHMARK_NAMES,
    ENGINEERING_NAMES,
    PROBLEM_NAMES,
    LJConfig,
    Problem,
    make_benchmark,
    make_problem,
)

__all__ = [
    "Bounds",
    "Colony",
    "ConfigurationError",
    "FoodSource",
    "RngStream",
    "STRATEGIES",
    "RunResult",
    "TerminationRule",
    "VariantConfig",
    "fitness_map",
    "run",
    "ExperimentStats",
    "acceleration_rate",
    "compare_table",
    "convergence_export",
    "run_batch",
    "run_experiment",
    "BENCHMARK_NAMES",
    "ENGINEERING_NAMES",
    "PROBLEM_NAMES",
    "LJConfig",
    "Problem",
    "make_benchmark",
    "make_problem",
]
