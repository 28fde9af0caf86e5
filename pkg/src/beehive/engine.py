"""The bee colony optimization loop and its pluggable candidate strategies.

One cycle runs employed bees, then fitness-proportional onlookers, then at most
one scout, then (for the adaptive variants) a colony resize driven by the
per-source size gene. All strategies modify a single randomly chosen coordinate
of the bee's own position; out-of-box values are clamped to the violated bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    Bounds,
    Colony,
    ConfigurationError,
    FoodSource,
    RngStream,
    random_position,
)
from .problems import Problem

STRATEGIES = ("basic", "sac", "sac1", "sac2", "gbest")

# Strategies that resize the colony each cycle unless explicitly disabled.
_ADAPTIVE_BY_DEFAULT = frozenset({"sac", "sac1", "sac2"})


@dataclass(frozen=True)
class VariantConfig:
    """Which candidate strategy runs and with which control parameters."""

    strategy: str = "basic"
    limit: int = 100
    c_factor: float = 1.5
    adaptive_sizing: bool | None = None  # None: strategy default
    initial_colony: int = 100  # bees; food sources are half of this
    sn_min: int = 10
    sn_max: int = 100

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ConfigurationError(f"unknown strategy {self.strategy!r}")
        if self.limit < 1:
            raise ConfigurationError("limit must be positive")
        if self.initial_colony < 8 or self.initial_colony % 2:
            raise ConfigurationError("initial_colony must be even and >= 8")
        if not (4 <= self.sn_min <= self.sn_max) or self.sn_min % 2 or self.sn_max % 2:
            raise ConfigurationError("sn_min/sn_max must be even with 4 <= sn_min <= sn_max")
        if self.adaptive_sizing is None:
            object.__setattr__(
                self, "adaptive_sizing", self.strategy in _ADAPTIVE_BY_DEFAULT
            )


@dataclass(frozen=True)
class TerminationRule:
    """Stop on NFE budget (cycle boundary) or on closeness to a known optimum."""

    max_nfe: int = 1_000_000
    accuracy: float = 1e-20
    target: float | None = None  # minimization sense

    def reached(self, best_objective: float) -> bool:
        return self.target is not None and abs(best_objective - self.target) < self.accuracy


@dataclass(frozen=True)
class RunResult:
    """Outcome of a single seeded run, reported in the user's optimization sense."""

    best_objective: float
    best_position: np.ndarray
    nfe: int
    cycles: int
    trace: tuple[tuple[int, float], ...]  # (nfe, best_objective) per cycle
    seed: int


def fitness_map(objective: float) -> float:
    """Map a raw objective (minimization sense) to a strictly positive fitness."""
    if not math.isfinite(objective):
        raise ValueError("objective must be finite")
    if objective >= 0.0:
        return 1.0 / (1.0 + objective)
    return 1.0 + abs(objective)


def selection_probabilities(colony: Colony) -> np.ndarray:
    """Fitness-proportional onlooker probabilities; sums to 1."""
    if not colony.sources:
        raise ValueError("colony is empty")
    fits = np.array([s.fitness for s in colony.sources])
    return fits / fits.sum()


def _evaluate(colony: Colony, problem: Problem, position: np.ndarray) -> float:
    """Single counted evaluation; keeps best-so-far memory current."""
    f = problem.evaluate_min(position)
    colony.nfe += 1
    if f < colony.best_objective:
        colony.best_objective = f
        colony.best_position = position.copy()
    return f


def _child_gene(parent: FoodSource, partner: FoodSource, phi: float) -> float | None:
    """Parent gene perturbed by the same phi draw, against the partner's gene."""
    g = parent.size_gene
    if g is None:
        return None
    return g + phi * (g - partner.size_gene)


def _pick_other(n: int, rng: RngStream, *taken: int) -> int:
    k = rng.uniform_int(n)
    while k in taken:
        k = rng.uniform_int(n)
    return k


def _clip(v: float, lo: float, hi: float) -> float:
    return lo if v < lo else hi if v > hi else v


def candidate_basic(i, colony, bounds, rng):
    """Neighborhood move: perturb coordinate j toward/away from a random partner.

    Draw order: dimension j, partner k != i, phi in [-1, 1).
    """
    sources = colony.sources
    n = len(sources)
    if n < 2:
        raise ValueError("basic candidate needs at least 2 sources")
    j = rng.uniform_int(bounds.dimension)
    k = _pick_other(n, rng, i)
    phi = rng.uniform_real(-1.0, 1.0)
    xi = sources[i].position
    pos = xi.copy()
    pos[j] = _clip(
        xi[j] + phi * (xi[j] - sources[k].position[j]), bounds.lower[j], bounds.upper[j]
    )
    return pos, _child_gene(sources[i], sources[k], phi)


def candidate_elitist(i, colony, bounds, rng):
    """Elitist move: coordinate j is built on the best-so-far position.

    Draw order: dimension j, partner r1 != i, partner k not in {i, r1},
    phi in [-1, 1).
    """
    sources = colony.sources
    n = len(sources)
    if n < 3:
        raise ValueError("elitist candidate needs at least 3 sources")
    j = rng.uniform_int(bounds.dimension)
    r1 = _pick_other(n, rng, i)
    k = _pick_other(n, rng, i, r1)
    phi = rng.uniform_real(-1.0, 1.0)
    pos = sources[i].position.copy()
    pos[j] = _clip(
        colony.best_position[j]
        + phi * (sources[r1].position[j] - sources[k].position[j]),
        bounds.lower[j],
        bounds.upper[j],
    )
    return pos, _child_gene(sources[i], sources[k], phi)


def candidate_global_local(i, colony, bounds, rng, c_factor=1.5):
    """Neighborhood move plus a weighted pull from the best toward a partner.

    Draw order: dimension j, partner k != i, partner r1 not in {i, k},
    phi in [-1, 1).
    """
    sources = colony.sources
    n = len(sources)
    if n < 3:
        raise ValueError("global-local candidate needs at least 3 sources")
    j = rng.uniform_int(bounds.dimension)
    k = _pick_other(n, rng, i)
    r1 = _pick_other(n, rng, i, k)
    phi = rng.uniform_real(-1.0, 1.0)
    xi = sources[i].position
    pos = xi.copy()
    pos[j] = _clip(
        xi[j]
        + phi * (xi[j] - sources[k].position[j])
        + c_factor * (colony.best_position[j] - sources[r1].position[j]),
        bounds.lower[j],
        bounds.upper[j],
    )
    return pos, _child_gene(sources[i], sources[k], phi)


def candidate_gbest(i, colony, bounds, rng, c_factor=1.5):
    """Neighborhood move plus a random pull toward the best-so-far position.

    Draw order: dimension j, partner k != i, phi in [-1, 1), psi in [0, C).
    """
    sources = colony.sources
    n = len(sources)
    if n < 2:
        raise ValueError("gbest candidate needs at least 2 sources")
    j = rng.uniform_int(bounds.dimension)
    k = _pick_other(n, rng, i)
    phi = rng.uniform_real(-1.0, 1.0)
    psi = rng.uniform_real(0.0, c_factor)
    xi = sources[i].position
    pos = xi.copy()
    pos[j] = _clip(
        xi[j]
        + phi * (xi[j] - sources[k].position[j])
        + psi * (colony.best_position[j] - xi[j]),
        bounds.lower[j],
        bounds.upper[j],
    )
    return pos, _child_gene(sources[i], sources[k], phi)


def _strategy_fn(config: VariantConfig):
    s = config.strategy
    if s in ("basic", "sac"):
        return candidate_basic
    if s == "sac1":
        return candidate_elitist
    if s == "sac2":
        c = config.c_factor
        return lambda i, colony, bounds, rng: candidate_global_local(i, colony, bounds, rng, c)
    c = config.c_factor
    return lambda i, colony, bounds, rng: candidate_gbest(i, colony, bounds, rng, c)


def _clamp_gene(gene: float | None, config: VariantConfig) -> float | None:
    if gene is None:
        return None
    return _clip(gene, float(config.sn_min), float(config.sn_max))


def _fresh_gene(config: VariantConfig, rng: RngStream) -> float:
    return float(config.sn_min + rng.uniform_int(config.sn_max - config.sn_min + 1))


def greedy_select(current, candidate_position, colony, problem, size_gene=None):
    """Evaluate the candidate once; keep it iff its fitness ties or beats the incumbent."""
    f = _evaluate(colony, problem, candidate_position)
    fit = fitness_map(f)
    if fit >= current.fitness:
        return FoodSource(candidate_position, f, fit, 0, size_gene)
    current.trials += 1
    return current


def employed_phase(colony, config, problem, rng):
    """One candidate per source, in order; NFE grows by the source count."""
    make = _strategy_fn(config)
    bounds = problem.bounds
    sources = colony.sources
    for i in range(len(sources)):
        pos, gene = make(i, colony, bounds, rng)
        sources[i] = greedy_select(
            sources[i], pos, colony, problem, _clamp_gene(gene, config)
        )
    return colony


def onlooker_phase(colony, config, problem, rng):
    """Exactly SN fitness-proportional placements via a roving roulette index."""
    probs = selection_probabilities(colony).tolist()
    make = _strategy_fn(config)
    bounds = problem.bounds
    sources = colony.sources
    n = len(sources)
    placed = 0
    i = 0
    rand = rng.random
    while placed < n:
        if rand() < probs[i]:
            pos, gene = make(i, colony, bounds, rng)
            sources[i] = greedy_select(
                sources[i], pos, colony, problem, _clamp_gene(gene, config)
            )
            placed += 1
        i += 1
        if i == n:
            i = 0
    return colony


def scout_phase(colony, config, problem, rng):
    """Replace at most one exhausted source with a fresh random one."""
    sources = colony.sources
    worst = 0
    for i in range(1, len(sources)):
        if sources[i].trials > sources[worst].trials:
            worst = i
    if sources[worst].trials <= config.limit:
        return colony
    pos = random_position(problem.bounds, rng)
    gene = _fresh_gene(config, rng) if config.adaptive_sizing else None
    f = _evaluate(colony, problem, pos)
    sources[worst] = FoodSource(pos, f, fitness_map(f), 0, gene)
    return colony


def adapt_colony_size(colony, config, rng, problem):
    """Resize toward the gene average: round half up, force even, clamp.

    Growth adds random evaluated sources with fresh genes; shrinkage drops the
    lowest-fitness sources.
    """
    sources = colony.sources
    mean_gene = sum(s.size_gene for s in sources) / len(sources)
    sn = math.floor(mean_gene + 0.5)
    if sn % 2:
        sn += 1
    sn = min(max(sn, config.sn_min), config.sn_max)
    current = len(sources)
    if sn > current:
        for _ in range(sn - current):
            pos = random_position(problem.bounds, rng)
            gene = _fresh_gene(config, rng)
            f = _evaluate(colony, problem, pos)
            sources.append(FoodSource(pos, f, fitness_map(f), 0, gene))
    elif sn < current:
        doomed = set(
            sorted(range(current), key=lambda i: (sources[i].fitness, -i))[: current - sn]
        )
        colony.sources = [s for i, s in enumerate(sources) if i not in doomed]
    return colony


def run(problem: Problem, config: VariantConfig, termination: TerminationRule,
        seed: int) -> RunResult:
    """Full optimization run; deterministic for a fixed (problem, config, seed)."""
    rng = RngStream(seed)
    colony = Colony(
        sources=[],
        best_position=np.zeros(problem.dimension),
        best_objective=math.inf,
        cycle=0,
        nfe=0,
    )
    for _ in range(config.initial_colony // 2):
        pos = random_position(problem.bounds, rng)
        gene = _fresh_gene(config, rng) if config.adaptive_sizing else None
        f = _evaluate(colony, problem, pos)
        colony.sources.append(FoodSource(pos, f, fitness_map(f), 0, gene))

    trace = [(colony.nfe, colony.best_objective)]
    while not termination.reached(colony.best_objective) and colony.nfe < termination.max_nfe:
        employed_phase(colony, config, problem, rng)
        if termination.reached(colony.best_objective):
            break
        onlooker_phase(colony, config, problem, rng)
        if termination.reached(colony.best_objective):
            break
        scout_phase(colony, config, problem, rng)
        if termination.reached(colony.best_objective):
            break
        if config.adaptive_sizing:
            adapt_colony_size(colony, config, rng, problem)
            if termination.reached(colony.best_objective):
                break
        colony.cycle += 1
        trace.append((colony.nfe, colony.best_objective))
    if trace[-1] != (colony.nfe, colony.best_objective):
        trace.append((colony.nfe, colony.best_objective))

    best_position = colony.best_position.copy()
    if problem.integrality is not None:
        mask = problem.integrality
        best_position[mask] = np.floor(best_position[mask] + 0.5)
    return RunResult(
        best_objective=problem.to_user_sense(colony.best_objective),
        best_position=best_position,
        nfe=colony.nfe,
        cycles=colony.cycle,
        trace=tuple((n, problem.to_user_sense(f)) for n, f in trace),
        seed=seed,
    )
