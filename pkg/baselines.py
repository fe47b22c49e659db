"""
Comparison optimizers sharing the AHMOA evaluation pipeline.

* ``run_moead`` - MOEA/D with a simplex-lattice weight set, normalised
  Tchebycheff aggregation, neighbourhood mating with GA operators and an
  external non-dominated archive
* ``run_nsga3_style`` - the AHMOA loop pinned to GA variation, no adaptation
* ``run_nsde3`` - the AHMOA loop pinned to DE variation, no adaptation

The NSGA-III comparators keep crowding-distance truncation instead of
reference-point niching.
"""

import logging
from math import comb
from typing import Callable, List, Optional, Sequence

import numpy as np

from demand import DemandProfile
from moea import (
    DE,
    GA,
    N_STRATEGIES,
    AhmoaConfig,
    GenerationRecord,
    RunResult,
    Solution,
    StrategyState,
    crowding_distance,
    detached_copy,
    evaluate_population,
    first_front,
    ga_offspring,
    generation_record,
    generation_seed,
    initial_population,
    objective_matrix,
    run_ahmoa,
    validate_config,
)
from objectives import Evaluator, MemoryBuffer
from seeded_streams import STREAM_MOEAD, SeededStream
from traffic_network import TrafficNetwork

logger = logging.getLogger(__name__)

N_OBJECTIVES = 3
MIN_WEIGHT = 1e-6


class WeightVectorSet:
    """Simplex-lattice weight vectors with their Euclidean neighbourhoods."""

    def __init__(self, divisions: int, neighborhood_size: int):
        if divisions < 1:
            raise ValueError(f"Lattice divisions must be >= 1, got {divisions}")
        points = [(i, j, divisions - i - j) for i in range(divisions + 1) for j in range(divisions + 1 - i)]
        self.divisions = divisions
        self.vectors = np.array(points, dtype=float) / divisions
        if not (1 <= neighborhood_size <= len(self.vectors)):
            raise ValueError(f"neighborhood_size {neighborhood_size} outside [1, {len(self.vectors)}]")
        self.neighborhood_size = neighborhood_size
        distances = np.linalg.norm(self.vectors[:, None, :] - self.vectors[None, :, :], axis=2)
        self.neighbors = np.argsort(distances, axis=1, kind="stable")[:, :neighborhood_size]

    def __len__(self) -> int:
        return len(self.vectors)

    def __repr__(self) -> str:
        return f"WeightVectorSet(size={len(self)}, divisions={self.divisions}, neighborhood={self.neighborhood_size})"

    @staticmethod
    def lattice_size(divisions: int) -> int:
        return comb(divisions + N_OBJECTIVES - 1, N_OBJECTIVES - 1)

    @classmethod
    def nearest_divisions(cls, population_size: int) -> int:
        """Lattice division count whose size is closest to ``population_size`` (smaller on ties)."""
        best = 1
        divisions = 1
        while True:
            size = cls.lattice_size(divisions)
            if abs(size - population_size) < abs(cls.lattice_size(best) - population_size):
                best = divisions
            if size >= population_size:
                return best
            divisions += 1

    @classmethod
    def for_population(cls, population_size: int, neighborhood_fraction: float = 0.1) -> "WeightVectorSet":
        divisions = cls.nearest_divisions(population_size)
        size = cls.lattice_size(divisions)
        if size != population_size:
            logger.info(f"MOEA/D: population {population_size} is not a simplex-lattice size, using {size} "
                        f"({divisions} divisions)")
        neighborhood = min(size, max(2, int(round(neighborhood_fraction * size))))
        return cls(divisions, neighborhood)


def tchebycheff(F: np.ndarray, weight: np.ndarray, ideal: np.ndarray, scale: np.ndarray) -> np.ndarray:
    """max_m w_m |f_m - z_m| / scale_m for every row of ``F``."""
    F = np.atleast_2d(F)
    return np.max(np.maximum(weight, MIN_WEIGHT) * np.abs(F - ideal) / scale, axis=1)


def _normalising_scale(F: np.ndarray, ideal: np.ndarray) -> np.ndarray:
    scale = F.max(axis=0) - ideal
    scale[scale <= 0] = 1.0
    return scale


def update_archive(archive: Sequence[Solution], candidates: Sequence[Solution], capacity: int) -> List[Solution]:
    """Non-dominated, de-duplicated union truncated to ``capacity`` by crowding distance."""
    pooled = first_front(list(archive) + list(candidates))
    unique, seen = [], set()
    for solution in pooled:
        key = tuple(solution.objective_array())
        if key not in seen:
            seen.add(key)
            unique.append(solution)
    if len(unique) <= capacity:
        return unique
    distances = crowding_distance(unique)
    order = sorted(range(len(unique)), key=lambda k: (-distances[k], k))[:capacity]
    return [unique[k] for k in sorted(order)]


def run_moead(network: TrafficNetwork, profile: DemandProfile, cfg: AhmoaConfig,
              evaluator: Optional[Evaluator] = None, algorithm: str = "MOEA/D",
              on_generation: Optional[Callable[[GenerationRecord], None]] = None) -> RunResult:
    """
    MOEA/D with Tchebycheff decomposition and GA variation.

    Uses the same per-generation evaluation contexts as ``run_ahmoa``; the
    population and the archive are re-evaluated against each new context.
    """
    validate_config(network, cfg)
    evaluator = evaluator or Evaluator(network, profile, cfg.n_e, cfg.robustness_mode)
    evaluation_seed = cfg.resolved_evaluation_seed()
    weights = WeightVectorSet.for_population(cfg.population_size, cfg.moead_neighborhood_fraction)
    size = len(weights)
    memory = MemoryBuffer(cfg.memory_depth)
    pinned = StrategyState((1.0, 0.0, 0.0, 0.0), alpha=0.0, p_floor=0.0)

    population = initial_population(len(network), cfg, size)
    context, memory = evaluator.snapshot(memory, generation_seed(evaluation_seed, 0))
    evaluate_population(population, context, cfg.workers)
    archive = update_archive([], population, size)
    initial_front = [detached_copy(s) for s in archive]
    history = [generation_record(0, archive, pinned)]
    logger.info(f"{algorithm}: {len(network)} intersections, {size} subproblems, "
                f"neighbourhood {weights.neighborhood_size}, {cfg.max_generations} generations")

    for generation in range(1, cfg.max_generations + 1):
        context, memory = evaluator.snapshot(memory, generation_seed(evaluation_seed, generation))
        evaluate_population(_unique(population + archive), context, cfg.workers)
        archive = update_archive([], archive, size)

        F = objective_matrix(population)
        ideal = F.min(axis=0)
        scale = _normalising_scale(F, ideal)

        rng = SeededStream(cfg.seed, STREAM_MOEAD, generation)
        streams = [rng.child(k) for k in range(size)]
        children = []
        for k in range(size):
            a, b = streams[k].choice(weights.neighbors[k], size=2, replace=False)
            children.append(Solution(ga_offspring(population[a].lam, population[b].lam, cfg, streams[k]), strategy=GA))
        evaluate_population(children, context, cfg.workers)

        improved = 0
        for k, child in enumerate(children):
            f_child = child.objective_array()
            ideal = np.minimum(ideal, f_child)
            replaced = 0
            for j in streams[k].permutation(weights.neighbors[k]):
                j = int(j)
                w = weights.vectors[j]
                if tchebycheff(f_child, w, ideal, scale)[0] <= tchebycheff(population[j].objective_array(), w, ideal, scale)[0]:
                    population[j] = child
                    replaced += 1
                    if replaced >= cfg.moead_max_replacements:
                        break
            improved += replaced > 0

        archive = update_archive(archive, children, size)
        totals = np.zeros(N_STRATEGIES, dtype=np.int64)
        successes = np.zeros(N_STRATEGIES, dtype=np.int64)
        totals[GA], successes[GA] = size, improved
        record = generation_record(generation, archive, pinned.with_counts(successes, totals))
        history.append(record)
        if on_generation is not None:
            on_generation(record)
        logger.debug(f"{algorithm} generation {generation}: archive {len(archive)}, best f1 {record.best_f1:.3f}")

    for solution in archive:
        solution.rank = 0
    logger.info(f"{algorithm}: final archive of {len(archive)} solutions")
    return RunResult(algorithm, archive, population, initial_front, history, cfg.seed, evaluation_seed, context)


def _unique(solutions: Sequence[Solution]) -> List[Solution]:
    seen, unique = set(), []
    for solution in solutions:
        if id(solution) not in seen:
            seen.add(id(solution))
            unique.append(solution)
    return unique


def pinned_strategy_config(cfg: AhmoaConfig, strategy: int) -> AhmoaConfig:
    """Copy of ``cfg`` that always uses ``strategy`` and never adapts."""
    probabilities: List[float] = [0.0] * N_STRATEGIES
    probabilities[strategy] = 1.0
    return cfg.model_copy(update={"initial_probabilities": tuple(probabilities), "alpha": 0.0, "adaptive": False})


def run_nsga3_style(network: TrafficNetwork, profile: DemandProfile, cfg: AhmoaConfig,
                    evaluator: Optional[Evaluator] = None,
                    on_generation: Optional[Callable[[GenerationRecord], None]] = None) -> RunResult:
    return run_ahmoa(network, profile, pinned_strategy_config(cfg, GA), evaluator,
                     algorithm="NSGA3-style", on_generation=on_generation)


def run_nsde3(network: TrafficNetwork, profile: DemandProfile, cfg: AhmoaConfig,
              evaluator: Optional[Evaluator] = None,
              on_generation: Optional[Callable[[GenerationRecord], None]] = None) -> RunResult:
    """NSGA-III-style loop with DE/rand/1/bin as the only variation operator."""
    return run_ahmoa(network, profile, pinned_strategy_config(cfg, DE), evaluator,
                     algorithm="NSDE3", on_generation=on_generation)
