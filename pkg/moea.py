"""
Adaptive hybrid multi-objective optimizer for red-light ratio vectors.

Each generation every parent produces one child with a strategy drawn by
roulette from the probabilities ``p`` over GA (SBX + polynomial mutation),
DE/rand/1/bin, PSO and local search. Strategy probabilities move toward the
observed success rates ``p = (1 - alpha) p + alpha R_succ``, are floored at
``p_floor`` and renormalised. Survivors are chosen by non-dominated sorting
with crowding-distance truncation.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from demand import DemandProfile
from objectives import (
    LAMBDA_MAX,
    LAMBDA_MIN,
    MEAN_TABLE,
    ROBUSTNESS_MODES,
    EvaluationContext,
    Evaluator,
    MemoryBuffer,
    ObjectiveVector,
    clamp_lambda,
)
from seeded_streams import STREAM_EVALUATION, STREAM_INIT, STREAM_OFFSPRING, SeededStream, derive_seed
from traffic_network import ConfigurationError, TrafficNetwork

logger = logging.getLogger(__name__)

GA, DE, PSO, LS = 0, 1, 2, 3
STRATEGY_NAMES = ("GA", "DE", "PSO", "LS")
N_STRATEGIES = len(STRATEGY_NAMES)
P_FLOOR = 0.02

PER_STRATEGY = "strategy"
GRAND_TOTAL = "total"


class AhmoaConfig(BaseModel):
    """Optimizer hyperparameters. Frozen; derive variants with ``model_copy(update=...)``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    population_size: int = Field(default=120, ge=4)
    max_generations: int = Field(default=50, ge=0)
    n_e: int = Field(default=5, ge=1)
    alpha: float = Field(default=0.3, ge=0.0, le=1.0)
    eta_c: float = Field(default=15.0, gt=0.0)
    eta_m: float = Field(default=20.0, gt=0.0)
    mutation_probability: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    de_f: float = Field(default=0.5, ge=0.0)
    de_cr: float = Field(default=0.9, ge=0.0, le=1.0)
    pso_w: float = Field(default=0.7, ge=0.0)
    pso_c1: float = Field(default=1.5, ge=0.0)
    pso_c2: float = Field(default=1.5, ge=0.0)
    v_max: float = Field(default=0.2, gt=0.0)
    ls_delta: float = Field(default=0.02, ge=0.0)
    memory_depth: int = Field(default=5, ge=1)
    lambda_min: float = Field(default=LAMBDA_MIN, ge=0.0, le=1.0)
    lambda_max: float = Field(default=LAMBDA_MAX, ge=0.0, le=1.0)
    p_floor: float = Field(default=P_FLOOR, ge=0.0, le=0.25)
    initial_probabilities: Tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)
    adaptive: bool = True
    success_denominator: str = PER_STRATEGY
    robustness_mode: str = MEAN_TABLE
    moead_neighborhood_fraction: float = Field(default=0.1, gt=0.0, le=1.0)
    moead_max_replacements: int = Field(default=2, ge=1)
    workers: int = Field(default=1, ge=1)
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    evaluation_seed: Optional[int] = Field(default=None, ge=0, lt=2 ** 64)

    @model_validator(mode="after")
    def _check_consistency(self):
        if self.lambda_min >= self.lambda_max:
            raise ValueError(f"lambda_min {self.lambda_min} must be below lambda_max {self.lambda_max}")
        if any(p < 0 for p in self.initial_probabilities) or abs(sum(self.initial_probabilities) - 1.0) > 1e-9:
            raise ValueError(f"initial_probabilities must be non-negative and sum to 1, got {self.initial_probabilities}")
        if self.success_denominator not in (PER_STRATEGY, GRAND_TOTAL):
            raise ValueError(f"success_denominator must be '{PER_STRATEGY}' or '{GRAND_TOTAL}'")
        if self.robustness_mode not in ROBUSTNESS_MODES:
            raise ValueError(f"robustness_mode must be one of {ROBUSTNESS_MODES}")
        return self

    def resolved_mutation_probability(self, n: int) -> float:
        return self.mutation_probability if self.mutation_probability is not None else 1.0 / n

    def resolved_evaluation_seed(self) -> int:
        if self.evaluation_seed is not None:
            return self.evaluation_seed
        return derive_seed(self.seed, STREAM_EVALUATION)


@dataclass(eq=False)
class Solution:
    """Candidate red-light ratio vector plus its search state."""

    lam: np.ndarray
    objectives: Optional[ObjectiveVector] = None
    rank: int = -1
    crowding: float = 0.0
    velocity: Optional[np.ndarray] = None
    personal_best: Optional[Tuple[np.ndarray, ObjectiveVector]] = None
    strategy: Optional[int] = None

    def __post_init__(self):
        self.lam = np.asarray(self.lam, dtype=float)
        if self.velocity is None:
            self.velocity = np.zeros_like(self.lam)

    @property
    def evaluated(self) -> bool:
        return self.objectives is not None

    def objective_array(self) -> np.ndarray:
        if self.objectives is None:
            raise ValueError("Solution has not been evaluated")
        return self.objectives.as_array()

    def to_dict(self) -> Dict:
        return {
            "lambda": [float(v) for v in self.lam],
            "objectives": list(self.objectives.as_tuple()) if self.objectives else None,
            "rank": self.rank,
        }


class StrategyState:
    """Strategy probabilities and the success/total counters of the last generation."""

    def __init__(self, probabilities: Sequence[float], alpha: float, p_floor: float = P_FLOOR,
                 successes: Optional[Sequence[int]] = None, totals: Optional[Sequence[int]] = None):
        self.probabilities = np.asarray(probabilities, dtype=float)
        if self.probabilities.shape != (N_STRATEGIES,):
            raise ValueError(f"Expected {N_STRATEGIES} strategy probabilities, got {self.probabilities.shape}")
        self.alpha = alpha
        self.p_floor = p_floor
        self.successes = np.zeros(N_STRATEGIES, dtype=np.int64) if successes is None else np.asarray(successes, dtype=np.int64)
        self.totals = np.zeros(N_STRATEGIES, dtype=np.int64) if totals is None else np.asarray(totals, dtype=np.int64)
        if np.any(self.successes > self.totals):
            raise ValueError("Strategy successes cannot exceed totals")

    @classmethod
    def initial(cls, cfg: AhmoaConfig) -> "StrategyState":
        return cls(cfg.initial_probabilities, cfg.alpha, cfg.p_floor)

    def __repr__(self) -> str:
        p = ", ".join(f"{name}={v:.3f}" for name, v in zip(STRATEGY_NAMES, self.probabilities))
        return f"StrategyState({p})"

    def success_rates(self, denominator: str = PER_STRATEGY) -> np.ndarray:
        """S[s] / T[s] (0 where T[s] = 0), or S[s] / sum(T) for the grand-total denominator."""
        if denominator == GRAND_TOTAL:
            total = self.totals.sum()
            return self.successes / total if total > 0 else np.zeros(N_STRATEGIES)
        rates = np.zeros(N_STRATEGIES)
        tried = self.totals > 0
        rates[tried] = self.successes[tried] / self.totals[tried]
        return rates

    def with_counts(self, successes: Sequence[int], totals: Sequence[int]) -> "StrategyState":
        return StrategyState(self.probabilities, self.alpha, self.p_floor, successes, totals)

    def updated(self, denominator: str = PER_STRATEGY) -> "StrategyState":
        """Smooth toward the success rates, floor and renormalise. Counters are kept for telemetry."""
        raw = (1.0 - self.alpha) * self.probabilities + self.alpha * self.success_rates(denominator)
        return StrategyState(apply_probability_floor(raw, self.p_floor), self.alpha, self.p_floor,
                             self.successes, self.totals)

    def to_dict(self) -> Dict:
        return {
            "p": [float(v) for v in self.probabilities],
            "successes": [int(v) for v in self.successes],
            "totals": [int(v) for v in self.totals],
        }


def apply_probability_floor(raw: np.ndarray, p_floor: float) -> np.ndarray:
    """Normalise ``raw`` to sum 1 with every entry at least ``p_floor``."""
    raw = np.asarray(raw, dtype=float)
    n = len(raw)
    total = raw.sum()
    p = raw / total if total > 0 else np.full(n, 1.0 / n)
    fixed = np.zeros(n, dtype=bool)
    while True:
        low = (p < p_floor) & ~fixed
        if not low.any():
            return p
        fixed |= low
        free = ~fixed
        if not free.any():
            return np.full(n, 1.0 / n)
        free_mass = 1.0 - p_floor * fixed.sum()
        scaled = p[free] * (free_mass / p[free].sum())
        p = np.full(n, p_floor)
        p[free] = scaled


def dominates(a, b) -> bool:
    """True iff ``a`` is no worse than ``b`` everywhere and strictly better somewhere (minimisation)."""
    a = a.as_array() if isinstance(a, ObjectiveVector) else np.asarray(a, dtype=float)
    b = b.as_array() if isinstance(b, ObjectiveVector) else np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"Objective vectors differ in length: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


def objective_matrix(population) -> np.ndarray:
    """Stack objectives of Solutions, ObjectiveVectors or raw rows into an [n, m] array."""
    rows = []
    for item in population:
        if isinstance(item, Solution):
            rows.append(item.objective_array())
        elif isinstance(item, ObjectiveVector):
            rows.append(item.as_array())
        else:
            rows.append(np.asarray(item, dtype=float))
    if not rows:
        return np.zeros((0, 3))
    return np.vstack(rows)


def dominance_matrix(F: np.ndarray) -> np.ndarray:
    """D[a, b] is True when row a dominates row b."""
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    return le & lt


def non_dominated_sort(population) -> List[List[int]]:
    """Partition indices into successive fronts; within a front indices ascend."""
    F = objective_matrix(population)
    n = len(F)
    if n == 0:
        return []
    dom = dominance_matrix(F)
    dominated_count = dom.sum(axis=0)
    assigned = np.zeros(n, dtype=bool)
    fronts = []
    while not assigned.all():
        current = np.flatnonzero((dominated_count == 0) & ~assigned)
        fronts.append([int(k) for k in current])
        assigned[current] = True
        dominated_count = dominated_count - dom[current].sum(axis=0)
    return fronts


def crowding_distance(front) -> np.ndarray:
    """NSGA-II crowding distance; boundaries of each non-degenerate objective get +inf."""
    F = objective_matrix(front)
    n = len(F)
    if n == 0:
        raise ValueError("Crowding distance needs a non-empty front")
    if n <= 2:
        return np.full(n, np.inf)
    distance = np.zeros(n)
    for m in range(F.shape[1]):
        values = F[:, m]
        span = values.max() - values.min()
        if span <= 0:
            continue
        order = np.argsort(values, kind="stable")
        distance[order[0]] = np.inf
        distance[order[-1]] = np.inf
        gaps = (values[order[2:]] - values[order[:-2]]) / span
        distance[order[1:-1]] += gaps
    return distance


def assign_rank_and_crowding(population: Sequence[Solution]) -> List[List[int]]:
    fronts = non_dominated_sort(population)
    for rank, front in enumerate(fronts):
        distances = crowding_distance([population[k] for k in front])
        for k, d in zip(front, distances):
            population[k].rank = rank
            population[k].crowding = float(d)
    return fronts


def first_front(population: Sequence[Solution]) -> List[Solution]:
    if not population:
        return []
    return [population[k] for k in non_dominated_sort(population)[0]]


def select_strategy(state: StrategyState, rng: SeededStream) -> int:
    """Roulette-wheel draw of a strategy index with probability ``p_i``."""
    cumulative = np.cumsum(state.probabilities)
    index = int(np.searchsorted(cumulative, rng.random() * cumulative[-1], side="right"))
    return min(index, N_STRATEGIES - 1)


def binary_tournament(population: Sequence[Solution], rng: SeededStream) -> int:
    """Index of the better of two uniform picks: lower rank, then larger crowding; the first pick wins ties."""
    first, second = (int(k) for k in rng.integers(0, len(population), size=2))
    a, b = population[first], population[second]
    if (b.rank, -b.crowding) < (a.rank, -a.crowding):
        return second
    return first


def ga_offspring(parent_a, parent_b, cfg: AhmoaConfig, rng: SeededStream) -> np.ndarray:
    """
    Simulated binary crossover (one child) followed by polynomial mutation.

    Each gene independently takes the SBX value spread around ``parent_a`` or
    the one spread around ``parent_b``.
    """
    a = np.asarray(parent_a, dtype=float)
    b = np.asarray(parent_b, dtype=float)
    n = len(a)
    u = rng.random(n)
    beta = np.where(u <= 0.5,
                    (2.0 * u) ** (1.0 / (cfg.eta_c + 1.0)),
                    (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (cfg.eta_c + 1.0)))
    near_a = rng.random(n) < 0.5
    child = np.where(near_a,
                     0.5 * ((1.0 + beta) * a + (1.0 - beta) * b),
                     0.5 * ((1.0 - beta) * a + (1.0 + beta) * b))

    pm = cfg.resolved_mutation_probability(n)
    mutate = rng.random(n) < pm
    v = rng.random(n)
    exponent = 1.0 / (cfg.eta_m + 1.0)
    delta = np.where(v < 0.5, (2.0 * v) ** exponent - 1.0, 1.0 - (2.0 * (1.0 - v)) ** exponent)
    child = np.where(mutate, child + delta * (cfg.lambda_max - cfg.lambda_min), child)
    return clamp_lambda(child, cfg.lambda_min, cfg.lambda_max)


def de_offspring(parent, population: Sequence[np.ndarray], cfg: AhmoaConfig, rng: SeededStream,
                 parent_index: Optional[int] = None) -> np.ndarray:
    """DE/rand/1/bin trial vector with three donors distinct from each other and the parent."""
    if len(population) < 4:
        raise ValueError(f"DE needs a population of at least 4, got {len(population)}")
    x = np.asarray(parent, dtype=float)
    if parent_index is None:
        parent_index = next((k for k, member in enumerate(population) if np.array_equal(member, x)), -1)
    candidates = np.array([k for k in range(len(population)) if k != parent_index])
    r1, r2, r3 = rng.choice(candidates, size=3, replace=False)
    donor = (np.asarray(population[r1], dtype=float)
             + cfg.de_f * (np.asarray(population[r2], dtype=float) - np.asarray(population[r3], dtype=float)))
    n = len(x)
    cross = rng.random(n) < cfg.de_cr
    cross[int(rng.integers(0, n))] = True
    return clamp_lambda(np.where(cross, donor, x), cfg.lambda_min, cfg.lambda_max)


def pso_offspring(particle: Solution, global_best, cfg: AhmoaConfig, rng: SeededStream) -> Tuple[np.ndarray, np.ndarray]:
    """Velocity and position update clamped to ``v_max`` and the lambda bounds."""
    x = particle.lam
    pbest = particle.personal_best[0] if particle.personal_best is not None else x
    n = len(x)
    r1 = rng.random(n)
    r2 = rng.random(n)
    velocity = (cfg.pso_w * particle.velocity
                + cfg.pso_c1 * r1 * (pbest - x)
                + cfg.pso_c2 * r2 * (np.asarray(global_best, dtype=float) - x))
    velocity = np.clip(velocity, -cfg.v_max, cfg.v_max)
    position = clamp_lambda(x + velocity, cfg.lambda_min, cfg.lambda_max)
    return position, velocity


def local_search_offspring(parent, cfg: AhmoaConfig, rng: SeededStream) -> np.ndarray:
    x = np.asarray(parent, dtype=float)
    step = rng.uniform(-cfg.ls_delta, cfg.ls_delta, len(x))
    return clamp_lambda(x + step, cfg.lambda_min, cfg.lambda_max)


def evaluate_population(solutions: Sequence[Solution], context: EvaluationContext, workers: int = 1) -> None:
    """Evaluate every solution against ``context`` (in place)."""
    results = context.evaluate_all([s.lam for s in solutions], workers=workers)
    for solution, objectives in zip(solutions, results):
        solution.objectives = objectives


def refresh_personal_bests(solutions: Sequence[Solution], context: EvaluationContext, workers: int = 1) -> None:
    """
    Re-score every stored personal best against ``context``.

    Solutions must already be evaluated on ``context``; a personal best at the
    solution's own position reuses those objectives.
    """
    stale = []
    for solution in solutions:
        if solution.personal_best is None:
            continue
        if np.array_equal(solution.personal_best[0], solution.lam):
            solution.personal_best = (solution.personal_best[0], solution.objectives)
        else:
            stale.append(solution)
    for solution, objectives in zip(stale, context.evaluate_all([s.personal_best[0] for s in stale], workers)):
        solution.personal_best = (solution.personal_best[0], objectives)


def _personal_best_update(child: Solution, inherited) -> None:
    if inherited is None or dominates(child.objectives, inherited[1]):
        child.personal_best = (child.lam.copy(), child.objectives)
    else:
        child.personal_best = inherited


def generate_offspring(population: Sequence[Solution], state: StrategyState, cfg: AhmoaConfig,
                       context: EvaluationContext, rng: SeededStream) -> Tuple[List[Solution], StrategyState]:
    """
    One child per parent with a roulette-selected strategy.

    A child counts as a success for its strategy when it dominates its parent.
    Parents must carry ranks and personal bests scored on the current context
    (PSO draws the global best uniformly from rank 0).
    """
    lambdas = [s.lam for s in population]
    leaders = [s for s in population if s.rank == 0] or list(population)
    children = []
    for k, parent in enumerate(population):
        stream = rng.child(k)
        strategy = select_strategy(state, stream)
        if strategy == GA:
            mate = population[binary_tournament(population, stream)]
            child = Solution(ga_offspring(parent.lam, mate.lam, cfg, stream), strategy=GA)
        elif strategy == DE:
            child = Solution(de_offspring(parent.lam, lambdas, cfg, stream, parent_index=k), strategy=DE)
        elif strategy == PSO:
            leader = leaders[int(stream.integers(0, len(leaders)))]
            position, velocity = pso_offspring(parent, leader.lam, cfg, stream)
            child = Solution(position, velocity=velocity, strategy=PSO)
        else:
            child = Solution(local_search_offspring(parent.lam, cfg, stream), strategy=LS)
        children.append(child)

    evaluate_population(children, context, cfg.workers)

    successes = np.zeros(N_STRATEGIES, dtype=np.int64)
    totals = np.zeros(N_STRATEGIES, dtype=np.int64)
    for parent, child in zip(population, children):
        totals[child.strategy] += 1
        if dominates(child.objectives, parent.objectives):
            successes[child.strategy] += 1
        _personal_best_update(child, parent.personal_best if child.strategy == PSO else None)

    counted = state.with_counts(successes, totals)
    new_state = counted.updated(cfg.success_denominator) if cfg.adaptive else counted
    return children, new_state


def environmental_selection(parents: Sequence[Solution], offspring: Sequence[Solution],
                            target_size: int) -> List[Solution]:
    """Fill fronts in order; truncate the splitting front by descending crowding (ties by index)."""
    combined = list(parents) + list(offspring)
    if target_size > len(combined):
        raise ValueError(f"target_size {target_size} exceeds combined population {len(combined)}")
    selected: List[Solution] = []
    for rank, front in enumerate(non_dominated_sort(combined)):
        members = [combined[k] for k in front]
        distances = crowding_distance(members)
        for member, d in zip(members, distances):
            member.rank = rank
            member.crowding = float(d)
        room = target_size - len(selected)
        if len(members) <= room:
            selected.extend(members)
        else:
            order = sorted(range(len(members)), key=lambda k: (-distances[k], k))
            selected.extend(members[k] for k in order[:room])
        if len(selected) == target_size:
            break
    return selected


@dataclass
class GenerationRecord:
    generation: int
    p: List[float]
    front_size: int
    best_f1: float
    best_f2: float
    best_r: float
    successes: List[int] = field(default_factory=list)
    totals: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            "generation": self.generation,
            "p": self.p,
            "front_size": self.front_size,
            "best_f1": self.best_f1,
            "best_f2": self.best_f2,
            "best_r": self.best_r,
            "successes": self.successes,
            "totals": self.totals,
        }


@dataclass
class RunResult:
    """Final front plus per-generation telemetry of one optimizer run."""

    algorithm: str
    front: List[Solution]
    population: List[Solution]
    initial_front: List[Solution]
    history: List[GenerationRecord]
    seed: int
    evaluation_seed: int
    context: EvaluationContext


def generation_record(generation: int, population: Sequence[Solution], state: StrategyState) -> GenerationRecord:
    front = first_front(population)
    F = objective_matrix(front)
    return GenerationRecord(
        generation=generation,
        p=[float(v) for v in state.probabilities],
        front_size=len(front),
        best_f1=float(F[:, 0].min()),
        best_f2=float(F[:, 1].min()),
        best_r=float(F[:, 2].min()),
        successes=[int(v) for v in state.successes],
        totals=[int(v) for v in state.totals],
    )


def initial_population(n_intersections: int, cfg: AhmoaConfig, size: Optional[int] = None) -> List[Solution]:
    """Uniform draws in the lambda bounds; ``size`` defaults to the configured population size."""
    size = cfg.population_size if size is None else size
    lams = SeededStream(cfg.seed, STREAM_INIT).uniform(cfg.lambda_min, cfg.lambda_max, (size, n_intersections))
    return [Solution(row.copy()) for row in lams]


def generation_seed(evaluation_seed: int, generation: int) -> int:
    """Volume-draw seed of one generation; shared by every algorithm using ``evaluation_seed``."""
    return derive_seed(evaluation_seed, generation)


def validate_config(network: TrafficNetwork, cfg: AhmoaConfig) -> None:
    if len(network) < 1:
        raise ConfigurationError("Network has no intersections")
    if cfg.population_size < 4:
        raise ConfigurationError(f"population_size must be >= 4, got {cfg.population_size}")
    if cfg.adaptive and cfg.p_floor * N_STRATEGIES > 1.0:
        raise ConfigurationError(f"p_floor {cfg.p_floor} too large for {N_STRATEGIES} strategies")


def run_ahmoa(network: TrafficNetwork, profile: DemandProfile, cfg: AhmoaConfig,
              evaluator: Optional[Evaluator] = None, algorithm: str = "AHMOA",
              on_generation: Optional[Callable[[GenerationRecord], None]] = None) -> RunResult:
    """
    Run the adaptive hybrid optimizer.

    Every generation draws a fresh evaluation context from the shared memory
    buffer; parents are re-evaluated against it before offspring are produced
    so parents and children compete under the same volumes.
    """
    validate_config(network, cfg)
    evaluator = evaluator or Evaluator(network, profile, cfg.n_e, cfg.robustness_mode)
    evaluation_seed = cfg.resolved_evaluation_seed()
    memory = MemoryBuffer(cfg.memory_depth)

    population = initial_population(len(network), cfg)
    state = StrategyState.initial(cfg)
    context, memory = evaluator.snapshot(memory, generation_seed(evaluation_seed, 0))
    evaluate_population(population, context, cfg.workers)
    for solution in population:
        solution.personal_best = (solution.lam.copy(), solution.objectives)
    assign_rank_and_crowding(population)
    initial_front = [detached_copy(s) for s in first_front(population)]

    history = [generation_record(0, population, state)]
    logger.info(f"{algorithm}: {len(network)} intersections, population {cfg.population_size}, "
                f"{cfg.max_generations} generations")

    for generation in range(1, cfg.max_generations + 1):
        context, memory = evaluator.snapshot(memory, generation_seed(evaluation_seed, generation))
        evaluate_population(population, context, cfg.workers)
        refresh_personal_bests(population, context, cfg.workers)
        assign_rank_and_crowding(population)
        offspring, state = generate_offspring(population, state, cfg, context,
                                              SeededStream(cfg.seed, STREAM_OFFSPRING, generation))
        population = environmental_selection(population, offspring, cfg.population_size)
        record = generation_record(generation, population, state)
        history.append(record)
        if on_generation is not None:
            on_generation(record)
        logger.debug(f"{algorithm} generation {generation}: front {record.front_size}, "
                     f"best f1 {record.best_f1:.3f}, p {np.round(state.probabilities, 3).tolist()}")

    front = [s for s in population if s.rank == 0]
    logger.info(f"{algorithm}: final front of {len(front)} solutions")
    return RunResult(algorithm, front, population, initial_front, history, cfg.seed, evaluation_seed, context)


def detached_copy(solution: Solution) -> Solution:
    return Solution(solution.lam.copy(), objectives=solution.objectives, rank=solution.rank,
                    crowding=solution.crowding)
