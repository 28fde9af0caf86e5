"""Objective functions: five scalable benchmarks and five engineering design problems.

All problems expose the same `Problem` record. Objectives are evaluated in the
user's optimization sense; `evaluate_min` gives the minimization-sense value the
optimizer consumes (maximization problems are negated at this boundary, once).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import Bounds, ConfigurationError

# Degenerate-bracket cutoff for the gas production objective: below this the
# 0^(-0.85) term is treated as 0 so the function stays total at x1 = 40.
GAS_PRODUCTION_EPS = 1e-12

# Squared-distance floor for Lennard-Jones: coincident atoms get a large but
# finite pair energy so the fitness mapping stays well defined.
LJ_R2_FLOOR = 1e-12
LJ_PENALTY = 1e30


@dataclass(frozen=True)
class Problem:
    """An objective with its box, optimization sense, and optional known optimum."""

    name: str
    dimension: int
    bounds: Bounds
    evaluate: Callable[[np.ndarray], float]
    direction: str = "minimize"  # or "maximize"
    integrality: np.ndarray | None = None  # bool mask, length D
    known_optimum: float | None = None  # minimization sense

    def evaluate_min(self, x: np.ndarray) -> float:
        """Objective in minimization sense (negated for maximization problems)."""
        f = self.evaluate(x)
        return f if self.direction == "minimize" else -f

    def to_user_sense(self, f_min: float) -> float:
        return f_min if self.direction == "minimize" else -f_min


# ---------------------------------------------------------------------------
# Benchmark functions
# ---------------------------------------------------------------------------

def _sphere(x):
    return float(np.dot(x, x))


def _griewank(x):
    s = np.dot(x, x) / 4000.0
    p = np.prod(np.cos(x / np.sqrt(np.arange(1.0, x.size + 1.0))))
    return float(s - p + 1.0)


def _ackley(x):
    n = x.size
    return float(
        -20.0 * math.exp(-0.2 * math.sqrt(np.dot(x, x) / n))
        - math.exp(np.sum(np.cos(2.0 * math.pi * x)) / n)
        + 20.0
        + math.e
    )


def _rastrigin(x):
    return float(10.0 * x.size + np.sum(x * x - 10.0 * np.cos(2.0 * math.pi * x)))


def _schaffer(x):
    s = float(np.dot(x, x))
    return 0.5 + (math.sin(math.sqrt(s)) ** 2 - 0.5) / (1.0 + 0.001 * s) ** 2


_BENCHMARKS = {
    "sphere": (_sphere, 5.12),
    "griewank": (_griewank, 600.0),
    "ackley": (_ackley, 32.0),
    "rastrigin": (_rastrigin, 5.12),
    "schaffer": (_schaffer, 100.0),
}


def make_benchmark(name: str, dimension: int = 30) -> Problem:
    """Benchmark problem on its standard box, minimum 0 at the origin."""
    try:
        fn, half_width = _BENCHMARKS[name]
    except KeyError:
        raise ConfigurationError(f"unknown benchmark {name!r}") from None
    if dimension < 1:
        raise ConfigurationError("dimension must be >= 1")
    return Problem(
        name=name,
        dimension=dimension,
        bounds=Bounds.cube(-half_width, half_width, dimension),
        evaluate=fn,
        known_optimum=0.0,
    )


# ---------------------------------------------------------------------------
# Engineering design problems
# ---------------------------------------------------------------------------

def _gas_production(x):
    x1, x2 = float(x[0]), float(x[1])
    t = (40.0 - x1) * math.log(x2 / 200.0)
    bracket = t ** -0.85 if t > GAS_PRODUCTION_EPS else 0.0
    return (
        61.8
        + 5.72 * x1
        + 0.2623 * bracket
        + 0.087 * t
        + 700.23 * x2 ** -0.75
    )


def make_gas_production() -> Problem:
    """Optimal capacity of gas production facilities, 2 variables, minimize."""
    return Problem(
        name="gas_production",
        dimension=2,
        bounds=Bounds(np.array([17.5, 300.0]), np.array([40.0, 600.0])),
        evaluate=_gas_production,
    )


# The friction-factor chain is implemented exactly as typeset: f_r's power term
# uses x3, while R_M uses x2 (likely a typo for x2 in the original reference).
# AIR_HEATER_FR_USES_X2 switches f_r to the x2 reading.
AIR_HEATER_FR_USES_X2 = False


def _air_heater(x):
    x1, x2, x3 = float(x[0]), float(x[1]), float(x[2])
    fs = 0.079 * x3 ** -0.25
    fr_base = x2 if AIR_HEATER_FR_USES_X2 else x3
    fr = 2.0 / (0.95 * fr_base ** 0.53 + 2.5 * math.log(1.0 / (2.0 * x1)) ** 2 - 3.75) ** 2
    f_bar = 0.5 * (fs + fr)
    e_plus = x1 * x3 * math.sqrt(f_bar / 2.0)
    r_m = 0.95 * x2 ** 0.53
    g_h = 4.5 * e_plus ** 0.28 * 0.7 ** 0.57
    return 2.51 * math.log(e_plus) + 5.5 - 0.1 * r_m - g_h


def make_air_heater() -> Problem:
    """Thermohydraulic performance of a roughened air heater, 3 variables, maximize."""
    return Problem(
        name="air_heater",
        dimension=3,
        bounds=Bounds(np.array([0.02, 10.0, 3000.0]), np.array([0.8, 40.0, 20000.0])),
        evaluate=_air_heater,
        direction="maximize",
    )


def _gear_train(x):
    # teeth counts are integers: round half away from zero before evaluating
    t = np.floor(np.asarray(x, dtype=float) + 0.5)
    ratio = (t[0] * t[1]) / (t[2] * t[3])
    return float((1.0 / 6.931 - ratio) ** 2)


def make_gear_train() -> Problem:
    """Compound gear train ratio matching, 4 integer variables, minimize."""
    return Problem(
        name="gear_train",
        dimension=4,
        bounds=Bounds.cube(12.0, 60.0, 4),
        evaluate=_gear_train,
        integrality=np.ones(4, dtype=bool),
    )


@dataclass(frozen=True)
class LJConfig:
    """Lennard-Jones cluster setup: atom count and the symmetric coordinate box."""

    n_atoms: int
    box_half_width: float | None = None  # default scales with cluster radius

    def __post_init__(self):
        if self.n_atoms < 2:
            raise ConfigurationError("Lennard-Jones cluster needs at least 2 atoms")

    @property
    def half_width(self) -> float:
        if self.box_half_width is not None:
            return self.box_half_width
        return 2.0 * self.n_atoms ** (1.0 / 3.0)


def make_lennard_jones(config: LJConfig | None = None, n_atoms: int | None = None) -> Problem:
    """Cluster potential energy, 3N coordinates, minimize.

    Pair energy is normalized so a pair at unit distance sits at the minimum
    with energy -1 (i.e. 1/r^12 - 2/r^6); a cluster of N atoms at mutual unit
    distances therefore scores -1 per pair.
    """
    if config is None:
        config = LJConfig(n_atoms if n_atoms is not None else 3)
    n = config.n_atoms
    half = config.half_width

    def evaluate(x):
        pts = np.asarray(x, dtype=float).reshape(n, 3)
        total = 0.0
        for i in range(n - 1):
            d = pts[i + 1:] - pts[i]
            r2 = np.einsum("ij,ij->i", d, d)
            tiny = r2 < LJ_R2_FLOOR
            r2 = np.where(tiny, 1.0, r2)
            inv6 = 1.0 / (r2 * r2 * r2)
            pair = inv6 * inv6 - 2.0 * inv6
            total += float(np.sum(np.where(tiny, LJ_PENALTY, pair)))
        return total

    return Problem(
        name="lennard_jones",
        dimension=3 * n,
        bounds=Bounds.cube(-half, half, 3 * n),
        evaluate=evaluate,
    )


def _gas_compressor(x):
    x1, x2, x3 = float(x[0]), float(x[1]), float(x[2])
    return (
        8.61e5 * math.sqrt(x1) * x2 * x3 ** (-2.0 / 3.0) / math.sqrt(x2 * x2 - 1.0)
        + 3.69e4 * x3
        + 7.72e8 / x1 * x2 ** 0.219
        - 765.43e6 / x1
    )


def make_gas_compressor() -> Problem:
    """Gas transmission compressor design, 3 variables, minimize."""
    return Problem(
        name="gas_compressor",
        dimension=3,
        bounds=Bounds(np.array([10.0, 1.1, 10.0]), np.array([55.0, 2.0, 40.0])),
        evaluate=_gas_compressor,
    )


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

BENCHMARK_NAMES = tuple(_BENCHMARKS)
ENGINEERING_NAMES = (
    "gas_production",
    "air_heater",
    "gear_train",
    "lennard_jones",
    "gas_compressor",
)
PROBLEM_NAMES = BENCHMARK_NAMES + ENGINEERING_NAMES


def make_problem(name: str, dimension: int | None = None, n_atoms: int | None = None) -> Problem:
    """Build any registered problem by name.

    `dimension` applies to the benchmarks (default 30, schaffer 2) and, for
    lennard_jones, may stand in for 3*n_atoms when `n_atoms` is not given.
    """
    if name in _BENCHMARKS:
        if dimension is None:
            dimension = 2 if name == "schaffer" else 30
        return make_benchmark(name, dimension)
    if name == "gas_production":
        return make_gas_production()
    if name == "air_heater":
        return make_air_heater()
    if name == "gear_train":
        return make_gear_train()
    if name == "lennard_jones":
        if n_atoms is None:
            if dimension is not None:
                if dimension % 3:
                    raise ConfigurationError("lennard_jones dimension must be 3*n_atoms")
                n_atoms = dimension // 3
            else:
                n_atoms = 3
        return make_lennard_jones(LJConfig(n_atoms))
    if name == "gas_compressor":
        return make_gas_compressor()
    raise ConfigurationError(f"unknown problem {name!r}")
