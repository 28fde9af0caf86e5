"""Batch statistics, acceleration rates, comparison tables, convergence export."""
import math

import numpy as np
import pytest

from beehive.core import ConfigurationError
from beehive.engine import RunResult, TerminationRule, VariantConfig
from beehive.harness import (
    ExperimentStats,
    acceleration_rate,
    aggregate,
    compare_table,
    convergence_export,
    format_stat,
    run_batch,
    run_experiment,
)
from beehive.problems import make_problem


def stub_result(best, nfe=100, seed=0, trace=None):
    if trace is None:
        trace = ((0, best * 2), (nfe, best))
    return RunResult(best_objective=best, best_position=np.zeros(2),
                     nfe=nfe, cycles=1, trace=trace, seed=seed)


def stub_stats(problem, variant, mean_nfe):
    return ExperimentStats(problem=problem, variant=variant, dim=2, runs=30,
                           best=0.0, mean=0.0, sd=0.0, mean_nfe=mean_nfe)


class TestRunBatch:
    def test_seeds_are_consecutive(self):
        problem = make_problem("sphere", dimension=2)
        results = run_batch(problem, VariantConfig(strategy="basic"),
                            TerminationRule(max_nfe=500), runs=3, base_seed=10)
        assert [r.seed for r in results] == [10, 11, 12]

    def test_parallel_matches_sequential(self):
        problem = make_problem("rastrigin", dimension=3)
        config = VariantConfig(strategy="sac2", initial_colony=20, sn_min=10, sn_max=20)
        term = TerminationRule(max_nfe=2000)
        seq = run_batch(problem, config, term, runs=4, base_seed=7, jobs=1)
        par = run_batch(problem, config, term, runs=4, base_seed=7, jobs=2)
        for a, b in zip(seq, par):
            assert a.best_objective == b.best_objective
            assert a.nfe == b.nfe
            assert a.trace == b.trace

    def test_zero_runs_rejected(self):
        problem = make_problem("sphere", dimension=2)
        with pytest.raises(ConfigurationError):
            run_batch(problem, VariantConfig(), TerminationRule(), runs=0, base_seed=0)


class TestAggregate:
    def test_single_run(self):
        problem = make_problem("sphere", dimension=2)
        stats = aggregate(problem, "basic", [stub_result(3.5, nfe=120)])
        assert stats.best == stats.mean == 3.5
        assert stats.sd == 0.0
        assert stats.mean_nfe == 120.0
        assert stats.runs == 1

    def test_known_values(self):
        problem = make_problem("sphere", dimension=2)
        results = [stub_result(v, nfe=n) for v, n in [(1.0, 100), (2.0, 200), (6.0, 300)]]
        stats = aggregate(problem, "basic", results)
        assert stats.best == 1.0
        assert stats.mean == 3.0
        assert abs(stats.sd - math.sqrt(14.0 / 3.0)) < 1e-12
        assert stats.mean_nfe == 200.0

    def test_sample_sd_uses_n_minus_one(self):
        problem = make_problem("sphere", dimension=2)
        results = [stub_result(v) for v in (1.0, 2.0, 6.0)]
        stats = aggregate(problem, "basic", results, sample_sd=True)
        assert abs(stats.sd - math.sqrt(14.0 / 2.0)) < 1e-12

    def test_two_pass_agreement(self):
        rng = np.random.default_rng(4)
        values = rng.random(30) * 1e-8
        problem = make_problem("sphere", dimension=2)
        stats = aggregate(problem, "basic", [stub_result(v) for v in values])
        mean = sum(values) / 30
        var = sum((v - mean) ** 2 for v in values) / 30
        assert abs(stats.sd - math.sqrt(var)) < 1e-12 * max(1.0, stats.sd)

    def test_maximization_best_is_max(self):
        problem = make_problem("air_heater")
        stats = aggregate(problem, "sac2", [stub_result(v) for v in (3.1, 4.2, 2.0)])
        assert stats.best == 4.2

    def test_run_experiment_end_to_end(self):
        problem = make_problem("sphere", dimension=2)
        stats = run_experiment(problem, VariantConfig(strategy="basic"),
                               TerminationRule(max_nfe=500), runs=3, base_seed=1)
        assert stats.problem == "sphere" and stats.variant == "basic"
        assert stats.runs == 3 and stats.dim == 2
        assert stats.best <= stats.mean


class TestAccelerationRate:
    def test_examples(self):
        assert abs(acceleration_rate(306, 197) - 35.62) < 0.005
        assert acceleration_rate(150, 150) == 0.0
        assert acceleration_rate(100, 150) == -50.0

    def test_zero_baseline_rejected(self):
        with pytest.raises(ValueError):
            acceleration_rate(0, 100)

    def test_full_reduction_is_100(self):
        assert acceleration_rate(500, 0) == 100.0


class TestCompareTable:
    # reference mean NFE per variant on five design problems, with a known footer
    NFE = {
        "basic": (306, 838, 463, 240000, 8438),
        "sac": (289, 756, 418, 240000, 8517),
        "sac1": (249, 524, 317, 240000, 6913),
        "sac2": (197, 513, 321, 240000, 5568),
    }
    PROBLEMS = ("gas_production", "air_heater", "gear_train",
                "lennard_jones", "gas_compressor")

    def _stats(self):
        return [
            stub_stats(p, v, nfe)
            for v, row in self.NFE.items()
            for p, nfe in zip(self.PROBLEMS, row)
        ]

    def test_reference_averages(self):
        table = compare_table(self._stats(), "sac2")
        assert table.baseline == "sac2"
        assert table.problems == self.PROBLEMS
        assert abs(table.average_ar["basic"] - 27.82) < 0.005
        assert abs(table.average_ar["sac"] - 24.36) < 0.005
        assert abs(table.average_ar["sac1"] - 8.24) < 0.005

    def test_cell_values_and_slower_flags(self):
        table = compare_table(self._stats(), "sac2")
        assert abs(table.ar["basic"]["gas_production"] - 35.62) < 0.005
        assert table.ar["basic"]["lennard_jones"] == 0.0
        assert abs(table.ar["sac1"]["gear_train"] - (-1.26)) < 0.005
        assert table.slower["sac1"]["gear_train"] is True
        flags = [table.slower[v][p] for v in table.ar for p in self.PROBLEMS]
        assert sum(flags) == 1

    def test_identical_variants_give_zero(self):
        stats = [stub_stats("sphere", v, 1000.0) for v in ("basic", "sac2")]
        table = compare_table(stats, "sac2")
        assert table.ar["basic"]["sphere"] == 0.0
        assert table.average_ar["basic"] == 0.0

    def test_missing_baseline_rejected(self):
        stats = [stub_stats("sphere", "basic", 1000.0)]
        with pytest.raises(ConfigurationError):
            compare_table(stats, "sac2")

    def test_mismatched_problem_sets_rejected(self):
        stats = [
            stub_stats("sphere", "basic", 1000.0),
            stub_stats("ackley", "basic", 1000.0),
            stub_stats("sphere", "sac2", 900.0),
        ]
        with pytest.raises(ConfigurationError):
            compare_table(stats, "sac2")


class TestConvergenceExport:
    def test_single_run_passthrough(self):
        trace = ((0, 8.0), (50, 2.0), (100, 1.0))
        grid, median = convergence_export([stub_result(1.0, trace=trace)])
        assert grid.tolist() == [0, 50, 100]
        assert median.tolist() == [8.0, 2.0, 1.0]

    def test_flat_traces(self):
        runs = [stub_result(5.0, trace=((0, 5.0), (100, 5.0))),
                stub_result(5.0, trace=((0, 5.0), (80, 5.0)))]
        grid, median = convergence_export(runs)
        assert grid.tolist() == [0, 80, 100]
        assert median.tolist() == [5.0, 5.0, 5.0]

    def test_median_of_linear_traces(self):
        a = stub_result(9.0, trace=((0, 10.0), (100, 9.0)))
        b = stub_result(19.0, trace=((0, 20.0), (100, 19.0)))
        grid, median = convergence_export([a, b])
        # both decay at 1/100 per evaluation, so the median is the midline
        assert np.allclose(median, 15.0 - grid / 100.0)

    def test_interpolates_interior_points(self):
        a = stub_result(0.0, trace=((0, 10.0), (100, 0.0)))
        b = stub_result(4.0, trace=((0, 10.0), (50, 4.0), (100, 4.0)))
        grid, median = convergence_export([a, b])
        assert grid.tolist() == [0, 50, 100]
        assert median.tolist() == [10.0, 4.5, 2.0]

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            convergence_export([])


class TestFormatStat:
    def test_zero_threshold(self):
        assert format_stat(0.0) == "0"
        assert format_stat(5e-21) == "0"
        assert format_stat(-5e-21) == "0"

    def test_scientific_cells(self):
        assert format_stat(1.234e-5) == "1.23E-05"
        assert format_stat(169.8437) == "1.70E+02"
        assert format_stat(-1.4621) == "-1.46E+00"
