"""
Objective functions for signal red-light ratio vectors.

Three objectives are minimised:

* ``f1`` - expected average delay, a Webster-style uniform + random delay
  summed over intersections and averaged over the day
* ``f2`` - network stability penalty over adjacent intersections (spatial and
  temporal volume differences weighted by red-ratio mismatch)
* ``r``  - robustness, the mean sample standard deviation of the hourly delay
  and stability series

Volumes are never used raw: each draw is pushed into a ``MemoryBuffer`` and the
objectives read the element-wise mean of the last ``H`` draws.
"""

import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from demand import HOURS_PER_DAY, DemandProfile, VolumeField, generate_volumes, saturation_matrix
from traffic_network import TrafficNetwork

logger = logging.getLogger(__name__)

LAMBDA_MIN = 0.05
LAMBDA_MAX = 0.95
X_CAP = 0.99
SECONDS_PER_HOUR = 3600.0

MEAN_TABLE = "mean_table"
MEAN_OF_DRAWS = "mean_of_draws"
ROBUSTNESS_MODES = (MEAN_TABLE, MEAN_OF_DRAWS)


class ObjectiveVector(BaseModel):
    """(f1, f2, r), all minimised."""

    model_config = ConfigDict(frozen=True)

    f1: float = Field(ge=0.0, description="Average delay (s)")
    f2: float = Field(ge=0.0, description="Stability penalty (vehicles)")
    r: float = Field(ge=0.0, description="Robustness score")

    def as_array(self) -> np.ndarray:
        return np.array([self.f1, self.f2, self.r], dtype=float)

    def as_tuple(self) -> Tuple[float, float, float]:
        return self.f1, self.f2, self.r


class HourlyObjectiveTable:
    """Per-hour objective values, one row per objective (delay, stability)."""

    def __init__(self, values):
        values = np.atleast_2d(np.asarray(values, dtype=float))
        if values.ndim != 2:
            raise ValueError(f"Hourly objective table must be 2-D, got shape {values.shape}")
        if values.shape[1] < 2:
            raise ValueError(f"Robustness needs at least 2 hours, got {values.shape[1]}")
        self.values = values

    @classmethod
    def from_series(cls, *series) -> "HourlyObjectiveTable":
        return cls(np.vstack([np.asarray(s, dtype=float) for s in series]))

    @property
    def n_objectives(self) -> int:
        return self.values.shape[0]

    @property
    def n_hours(self) -> int:
        return self.values.shape[1]


class MemoryBuffer:
    """Ring buffer of the last ``depth`` volume matrices."""

    def __init__(self, depth: int):
        if depth < 1:
            raise ValueError(f"Memory depth must be >= 1, got {depth}")
        self.depth = depth
        self._history = deque(maxlen=depth)

    def __len__(self) -> int:
        return len(self._history)

    def __repr__(self) -> str:
        return f"MemoryBuffer(depth={self.depth}, stored={len(self)})"

    @property
    def shape(self) -> Optional[Tuple[int, int]]:
        return self._history[0].shape if self._history else None

    def push(self, values: np.ndarray) -> None:
        values = np.asarray(values, dtype=float)
        if self._history and values.shape != self._history[0].shape:
            raise ValueError(f"Volume shape {values.shape} does not match memory shape {self._history[0].shape}")
        self._history.append(values)

    def mean(self) -> np.ndarray:
        if not self._history:
            raise ValueError("Memory buffer is empty")
        return np.mean(np.stack(self._history), axis=0)

    def copy(self) -> "MemoryBuffer":
        clone = MemoryBuffer(self.depth)
        clone._history.extend(self._history)
        return clone

    def assign(self, other: "MemoryBuffer") -> None:
        """Replace this buffer's contents with those of ``other``."""
        if other.depth != self.depth:
            raise ValueError(f"Cannot assign a depth {other.depth} buffer to a depth {self.depth} buffer")
        self._history.clear()
        self._history.extend(other._history)


def update_memory(buffer: MemoryBuffer, field: VolumeField) -> np.ndarray:
    """Push ``field`` (evicting the oldest when full) and return the averaged matrix M."""
    values = field.values if isinstance(field, VolumeField) else field
    buffer.push(values)
    return buffer.mean()


def clamp_lambda(lam, low: float = LAMBDA_MIN, high: float = LAMBDA_MAX) -> np.ndarray:
    return np.clip(np.asarray(lam, dtype=float), low, high)


def webster_delay(cycle: float, lam: float, volume: float, saturation: float) -> float:
    """
    Delay per vehicle (s): ``C lam^2 / (2 (1 - lam x)) + x^2 / (2 s' (1 - x))``.

    ``x`` is the degree of saturation capped at 0.99 and ``s'`` the saturation
    flow in vehicles per second.
    """
    if cycle <= 0:
        raise ValueError(f"Cycle length must be positive, got {cycle}")
    if saturation <= 0:
        raise ValueError(f"Saturation flow must be positive, got {saturation}")
    if not (0.0 <= lam <= 1.0):
        raise ValueError(f"Red light ratio must be within [0, 1], got {lam}")
    if volume < 0:
        raise ValueError(f"Volume must be non-negative, got {volume}")
    return float(_delay(np.float64(cycle), np.float64(lam), np.float64(volume), np.float64(saturation)))


def _delay(cycle, lam, volume, saturation):
    """Vectorised delay over broadcastable arrays."""
    x = np.minimum(volume / saturation, X_CAP)
    green = (1.0 - lam) * cycle
    uniform = cycle * (1.0 - green / cycle) ** 2 / (2.0 * (1.0 - lam * x))
    overflow = x ** 2 / (2.0 * (saturation / SECONDS_PER_HOUR) * (1.0 - x))
    return uniform + overflow


def _check_inputs(lam, M: np.ndarray, network: TrafficNetwork, T: Optional[int]) -> Tuple[np.ndarray, np.ndarray, int]:
    lam = np.asarray(lam, dtype=float)
    M = np.asarray(M, dtype=float)
    n = len(network)
    if lam.shape != (n,):
        raise ValueError(f"Lambda vector has shape {lam.shape}, expected ({n},)")
    segments = M.shape[1] if (T is None and M.ndim == 2) else T
    if M.shape != (n, segments):
        raise ValueError(f"Averaged matrix has shape {M.shape}, expected ({n}, {segments})")
    return lam, M, segments


def delay_matrix(lam, M: np.ndarray, network: TrafficNetwork, T: Optional[int] = None,
                 saturation: Optional[np.ndarray] = None) -> np.ndarray:
    """D[i][t] = webster_delay(C_i, lam_i, M[i][t], s_i(t)), shape [N, T]."""
    lam, M, segments = _check_inputs(lam, M, network, T)
    if saturation is None:
        saturation = saturation_matrix(network, segments)
    return _delay(network.cycle_lengths[:, None], lam[:, None], M, saturation)


def average_delay(lam, M: np.ndarray, network: TrafficNetwork, T: Optional[int] = None,
                  saturation: Optional[np.ndarray] = None) -> Tuple[float, np.ndarray, np.ndarray]:
    """
    Expected average delay.

    Returns:
        (f1, per-hour sums over intersections, full delay matrix)
    """
    delays = delay_matrix(lam, M, network, T, saturation)
    per_hour = delays.sum(axis=0)
    return float(per_hour.sum() / delays.shape[1]), per_hour, delays


def network_stability(lam, M: np.ndarray, network: TrafficNetwork, T: Optional[int] = None) -> Tuple[float, np.ndarray]:
    """
    Stability penalty summed over undirected edges (i < j) and segments.

    Each edge contributes ``(|M_i,t - M_j,t| + |M_i,t - M_i,t+1|) (1 + |lam_i - lam_j|) w_i``
    where the temporal neighbour of the last segment is segment 0.
    """
    lam, M, _ = _check_inputs(lam, M, network, T)
    if len(network.edges) == 0:
        per_hour = np.zeros(M.shape[1])
        return 0.0, per_hour
    i, j = network.edges[:, 0], network.edges[:, 1]
    spatial = np.abs(M[i] - M[j])
    temporal = np.abs(M[i] - np.roll(M, -1, axis=1)[i])
    weight = (1.0 + np.abs(lam[i] - lam[j])) * network.type_weights[i]
    per_hour = ((spatial + temporal) * weight[:, None]).sum(axis=0)
    return float(per_hour.sum()), per_hour


def robustness(table) -> float:
    """Mean over objectives of the sample (N-1) standard deviation of the hourly series."""
    if not isinstance(table, HourlyObjectiveTable):
        table = HourlyObjectiveTable(table)
    return float(np.std(table.values, axis=1, ddof=1).mean())


class EvaluationContext:
    """
    Frozen averaged volume matrices for one generation.

    Every solution evaluated against the same context sees the same ``n_e``
    matrices, so dominance comparisons inside a generation are fair.
    """

    def __init__(self, network: TrafficNetwork, averaged: Sequence[np.ndarray], seed: int,
                 robustness_mode: str = MEAN_TABLE):
        if not averaged:
            raise ValueError("An evaluation context needs at least one averaged matrix")
        if robustness_mode not in ROBUSTNESS_MODES:
            raise ValueError(f"Unknown robustness mode '{robustness_mode}'")
        self.network = network
        self.seed = seed
        self.robustness_mode = robustness_mode
        frozen = []
        for matrix in averaged:
            matrix = np.array(matrix, dtype=float)
            matrix.setflags(write=False)
            frozen.append(matrix)
        self.averaged: Tuple[np.ndarray, ...] = tuple(frozen)
        self.segments = frozen[0].shape[1]
        self._saturation = saturation_matrix(network, self.segments)

    def __repr__(self) -> str:
        return f"EvaluationContext(seed={self.seed}, draws={len(self.averaged)}, mode={self.robustness_mode})"

    @property
    def n_draws(self) -> int:
        return len(self.averaged)

    def evaluate(self, lam) -> ObjectiveVector:
        f1_draws, f2_draws, delay_hours, stability_hours = [], [], [], []
        for M in self.averaged:
            f1, delay_per_hour, _ = average_delay(lam, M, self.network, self.segments, self._saturation)
            f2, stability_per_hour = network_stability(lam, M, self.network, self.segments)
            f1_draws.append(f1)
            f2_draws.append(f2)
            delay_hours.append(delay_per_hour)
            stability_hours.append(stability_per_hour)

        if self.robustness_mode == MEAN_TABLE:
            r = robustness(HourlyObjectiveTable.from_series(np.mean(delay_hours, axis=0),
                                                            np.mean(stability_hours, axis=0)))
        else:
            r = float(np.mean([robustness(HourlyObjectiveTable.from_series(d, s))
                               for d, s in zip(delay_hours, stability_hours)]))
        return ObjectiveVector(f1=float(np.mean(f1_draws)), f2=float(np.mean(f2_draws)), r=r)

    def evaluate_all(self, lambdas: Sequence[np.ndarray], workers: int = 1) -> List[ObjectiveVector]:
        """Evaluate many vectors; results are in input order for any worker count."""
        if workers <= 1 or len(lambdas) < 2:
            return [self.evaluate(lam) for lam in lambdas]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(self.evaluate, lambdas))

    def delay_matrix(self, lam) -> np.ndarray:
        """Per-intersection, per-segment delay averaged over the context's draws."""
        return np.mean([delay_matrix(lam, M, self.network, self.segments, self._saturation)
                        for M in self.averaged], axis=0)


class Evaluator:
    """Builds per-generation evaluation contexts from seeded volume draws."""

    def __init__(self, network: TrafficNetwork, profile: DemandProfile, n_e: int = 5,
                 robustness_mode: str = MEAN_TABLE, T: int = HOURS_PER_DAY):
        if n_e < 1:
            raise ValueError(f"n_e must be >= 1, got {n_e}")
        if robustness_mode not in ROBUSTNESS_MODES:
            raise ValueError(f"Unknown robustness mode '{robustness_mode}'")
        self.network = network
        self.profile = profile
        self.n_e = n_e
        self.robustness_mode = robustness_mode
        self.T = T

    def snapshot(self, memory: MemoryBuffer, seed: int) -> Tuple[EvaluationContext, MemoryBuffer]:
        """
        Draw the ``n_e`` volume fields for ``seed`` into a copy of ``memory``.

        Returns the frozen context and the advanced buffer; ``memory`` itself is
        left untouched.
        """
        advanced = memory.copy()
        averaged = []
        for draw_index in range(1, self.n_e + 1):
            field = generate_volumes(self.network, self.profile, seed, draw_index, self.T)
            averaged.append(update_memory(advanced, field))
        logger.debug(f"Evaluation snapshot seed={seed}: {self.n_e} draws, memory {len(advanced)}/{advanced.depth}")
        return EvaluationContext(self.network, averaged, seed, self.robustness_mode), advanced


def evaluate_solution(lam, network: TrafficNetwork, profile: DemandProfile, seed: int, n_e: int,
                      memory: MemoryBuffer, robustness_mode: str = MEAN_TABLE) -> ObjectiveVector:
    """
    Expected objectives over ``n_e`` draws ``VolumeField(seed, j)``, j = 1..n_e.

    Each draw is pushed into ``memory`` (which is mutated) and f1, f2 are
    computed on the resulting averaged matrix.
    """
    context, advanced = Evaluator(network, profile, n_e, robustness_mode).snapshot(memory, seed)
    memory.assign(advanced)
    return context.evaluate(lam)


def export_delay_table(delays: np.ndarray, path: str) -> pd.DataFrame:
    """Write ``i,t,delay_seconds`` rows."""
    delays = np.asarray(delays, dtype=float)
    if delays.ndim != 2:
        raise ValueError(f"Delay matrix must be 2-D, got shape {delays.shape}")
    n, segments = delays.shape
    frame = pd.DataFrame({
        "i": np.repeat(np.arange(n), segments),
        "t": np.tile(np.arange(segments), n),
        "delay_seconds": delays.reshape(-1),
    })
    frame.to_csv(path, index=False)
    return frame
