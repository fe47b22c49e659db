"""
Experiment orchestration: multi-algorithm runs, global front merging and exports.

Output layout under ``out_dir``::

    manifest.json
    network/network.json, nodes.csv, edges.csv
    runs/<algorithm>_rep<r>/front.json, front.csv, telemetry.jsonl
    merged/rep<r>.csv
    merged/global_front.csv, global_front.json, contributions.json
    heatmaps/baseline.csv, <algorithm>.csv
"""

import json
import logging
import math
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict

from baselines import run_moead, run_nsde3, run_nsga3_style
from demand import DemandProfile, generate_volumes, saturation_matrix
from experiment_config import ALGORITHM_KEYS, MERGE_BY_ALGORITHM, ExperimentConfig, canonical_algorithm
from moea import AhmoaConfig, GenerationRecord, RunResult, Solution, non_dominated_sort, run_ahmoa
from objectives import EvaluationContext, ObjectiveVector, export_delay_table
from seeded_streams import STREAM_EVALUATION, derive_seed
from traffic_network import (
    CityArchetype,
    CityConfig,
    ConfigurationError,
    TrafficNetwork,
    build_city,
)

logger = logging.getLogger(__name__)

LOG_DECIMALS = 4
NEG_INF_TOKEN = "-Inf"
BASELINE_LAMBDA = 0.5
FRONT_COLUMNS = ["algorithm", "log_f1", "log_f2", "log_r", "raw_f1", "raw_f2", "raw_r"]

Runner = Callable[[TrafficNetwork, DemandProfile, AhmoaConfig], RunResult]

ALGORITHMS: Dict[str, Tuple[str, Runner]] = {
    "ahmoa": ("AHMOA", run_ahmoa),
    "nsga3_style": ("NSGA3-style", run_nsga3_style),
    "nsde3": ("NSDE3", run_nsde3),
    "moead": ("MOEA/D", run_moead),
}


def display_name(key: str) -> str:
    return ALGORITHMS[canonical_algorithm(key)][0]


def log_transform(raw) -> Tuple[float, float, float]:
    """Natural log of each objective rounded to 4 decimals; 0 maps to -inf."""
    values = raw.as_tuple() if isinstance(raw, ObjectiveVector) else tuple(float(v) for v in raw)
    transformed = []
    for value in values:
        if value < 0 or math.isnan(value):
            raise ValueError(f"Cannot log-transform negative objective value {value}")
        transformed.append(-math.inf if value == 0 else round(math.log(value), LOG_DECIMALS))
    return tuple(transformed)


def format_log_value(value: float) -> str:
    return NEG_INF_TOKEN if value == -math.inf else f"{value:.{LOG_DECIMALS}f}"


class FrontRecord(BaseModel):
    """One solution of an exported front."""

    model_config = ConfigDict(frozen=True)

    algorithm: str
    log_objectives: Tuple[float, float, float]
    raw_objectives: Tuple[float, float, float]
    lam: Tuple[float, ...] = ()
    repetition: Optional[int] = None

    @classmethod
    def from_solution(cls, algorithm: str, solution: Solution, repetition: Optional[int] = None) -> "FrontRecord":
        raw = solution.objectives.as_tuple()
        return cls(algorithm=algorithm, log_objectives=log_transform(raw), raw_objectives=raw,
                   lam=tuple(float(v) for v in solution.lam), repetition=repetition)

    def to_row(self) -> Dict[str, str]:
        row = {"algorithm": self.algorithm}
        for name, value in zip(("log_f1", "log_f2", "log_r"), self.log_objectives):
            row[name] = format_log_value(value)
        for name, value in zip(("raw_f1", "raw_f2", "raw_r"), self.raw_objectives):
            row[name] = repr(float(value))
        return row

    def to_json(self) -> Dict:
        return {
            "algorithm": self.algorithm,
            "repetition": self.repetition,
            "log_objectives": [format_log_value(v) for v in self.log_objectives],
            "raw_objectives": list(self.raw_objectives),
            "lambda": list(self.lam),
        }

    @classmethod
    def from_json(cls, data: Dict) -> "FrontRecord":
        return cls(
            algorithm=data["algorithm"],
            log_objectives=tuple(float(v) for v in data["log_objectives"]),
            raw_objectives=tuple(float(v) for v in data["raw_objectives"]),
            lam=tuple(float(v) for v in data.get("lambda", ())),
            repetition=data.get("repetition"),
        )


def _as_records(algorithm: str, front: Iterable, repetition: Optional[int] = None) -> List[FrontRecord]:
    records = []
    for item in front:
        if isinstance(item, FrontRecord):
            records.append(item)
        else:
            records.append(FrontRecord.from_solution(algorithm, item, repetition))
    return records


def merge_global_front(runs: Sequence[Tuple[str, Iterable]], order: str = "f1") -> List[FrontRecord]:
    """
    Pool the fronts of several runs and keep the global non-dominated set.

    Dominance uses raw objectives; records with identical rounded log values
    are kept once (first seen). Survivors are sorted by ``log_f1`` ascending,
    or by run order of their algorithm and then ``log_f1``.
    """
    pooled: List[FrontRecord] = []
    for algorithm, front in runs:
        pooled.extend(_as_records(algorithm, front))
    if not pooled:
        return []

    survivors = non_dominated_sort([r.raw_objectives for r in pooled])[0]
    unique, seen = [], set()
    for index in survivors:
        key = pooled[index].log_objectives
        if key not in seen:
            seen.add(key)
            unique.append(pooled[index])

    if order == MERGE_BY_ALGORITHM:
        rank = {}
        for algorithm, _ in runs:
            rank.setdefault(algorithm, len(rank))
        return sorted(unique, key=lambda r: (rank.get(r.algorithm, len(rank)), r.log_objectives[0]))
    return sorted(unique, key=lambda r: r.log_objectives[0])


def contribution_summary(records: Iterable[FrontRecord]) -> Dict[str, int]:
    """Number of merged-front records contributed by each algorithm."""
    return dict(sorted(Counter(r.algorithm for r in records).items()))


def write_front_csv(records: Sequence[FrontRecord], path: str) -> None:
    frame = pd.DataFrame([r.to_row() for r in records], columns=FRONT_COLUMNS)
    frame.to_csv(path, index=False)


def read_front_csv(path: str) -> List[FrontRecord]:
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    missing = [c for c in FRONT_COLUMNS if c not in frame.columns]
    if missing:
        raise ValueError(f"Front file {path} is missing columns {missing}")
    records = []
    for row in frame.itertuples(index=False):
        records.append(FrontRecord(
            algorithm=row.algorithm,
            log_objectives=(float(row.log_f1), float(row.log_f2), float(row.log_r)),
            raw_objectives=(float(row.raw_f1), float(row.raw_f2), float(row.raw_r)),
        ))
    return records


def write_front_json(records: Sequence[FrontRecord], path: str) -> None:
    with open(path, "w") as f:
        json.dump([r.to_json() for r in records], f, indent=2)


def read_front_json(path: str) -> List[FrontRecord]:
    with open(path, "r") as f:
        return [FrontRecord.from_json(item) for item in json.load(f)]


def read_front(path: str) -> List[FrontRecord]:
    return read_front_json(path) if path.endswith(".json") else read_front_csv(path)


def write_telemetry(history: Sequence[GenerationRecord], algorithm: str, path: str) -> None:
    """One JSON object per generation."""
    with open(path, "w") as f:
        for record in history:
            f.write(json.dumps({"algorithm": algorithm, **record.to_dict()}) + "\n")


def read_telemetry(path: str) -> List[Dict]:
    with open(path, "r") as f:
        return [json.loads(line) for line in f if line.strip()]


def heatmap_cells(network: TrafficNetwork, layout: Tuple[int, int], archetype: CityArchetype) -> int:
    """
    Number of intersections mapped onto the heatmap grid.

    A radial city's hub (its last intersection) has no place on the ring x
    radial grid and is left out when the layout covers every other node.
    """
    rows, cols = layout
    n = len(network)
    if archetype == CityArchetype.RADIAL_CONCENTRIC and rows * cols == n - 1:
        return n - 1
    return n


def export_heatmap(delays: np.ndarray, layout: Tuple[int, int], path: str) -> pd.DataFrame:
    """
    Write ``row,col,mean_delay_seconds`` of the per-intersection daily mean delay.

    Intersection ``k`` maps to cell ``(k // cols, k % cols)``.

    Raises:
        ValueError: If ``rows * cols`` differs from the number of intersections
    """
    delays = np.asarray(delays, dtype=float)
    rows, cols = layout
    mean_delay = delays.mean(axis=1) if delays.ndim == 2 else delays
    if rows * cols != len(mean_delay):
        raise ValueError(f"Heatmap layout {rows}x{cols} does not match {len(mean_delay)} intersections")
    index = np.arange(rows * cols)
    frame = pd.DataFrame({"row": index // cols, "col": index % cols, "mean_delay_seconds": mean_delay})
    frame.to_csv(path, index=False)
    return frame


def default_layout(city: CityConfig, network: TrafficNetwork) -> Tuple[int, int]:
    """Preset layout, else the generator's arterial x collector grid."""
    if city.heatmap_layout is not None:
        return city.heatmap_layout
    if city.archetype == CityArchetype.RADIAL_CONCENTRIC or city.arterial_count * city.collector_count == len(network):
        return city.arterial_count, city.collector_count
    return 1, len(network)


def export_network_summary(network: TrafficNetwork, context: Optional[EvaluationContext], directory: str) -> List[str]:
    """Node and edge tables: class, degree and mean flow per node; mean saturation per edge."""
    os.makedirs(directory, exist_ok=True)
    network_path = os.path.join(directory, "network.json")
    network.save_json(network_path)

    saturation = saturation_matrix(network)
    if context is not None:
        mean_volume = np.mean([M.mean(axis=1) for M in context.averaged], axis=0)
    else:
        mean_volume = np.full(len(network), np.nan)
    nodes = pd.DataFrame({
        "id": np.arange(len(network)),
        "class": [c.value for c in network.road_classes()],
        "degree": network.degrees,
        "cycle": network.cycle_lengths.astype(int),
        "base_saturation": network.base_saturation,
        "mean_volume": mean_volume,
    })
    i, j = network.edges[:, 0], network.edges[:, 1]
    edges = pd.DataFrame({
        "i": i,
        "j": j,
        "mean_saturation": 0.5 * (saturation[i].mean(axis=1) + saturation[j].mean(axis=1)),
    })
    nodes_path = os.path.join(directory, "nodes.csv")
    edges_path = os.path.join(directory, "edges.csv")
    nodes.to_csv(nodes_path, index=False)
    edges.to_csv(edges_path, index=False)
    return [network_path, nodes_path, edges_path]


def run_seed(master_seed: int, algorithm: str, repetition: int) -> int:
    """Search seed of one run: hash of (master seed, algorithm index, repetition)."""
    return derive_seed(master_seed, ALGORITHM_KEYS.index(canonical_algorithm(algorithm)), repetition)


def repetition_evaluation_seed(master_seed: int, repetition: int) -> int:
    """Volume-draw seed shared by every algorithm of one repetition."""
    return derive_seed(master_seed, STREAM_EVALUATION, repetition)


def _ensure_writable(directory: str) -> None:
    try:
        os.makedirs(directory, exist_ok=True)
    except OSError as e:
        raise ConfigurationError(f"Cannot create output directory {directory}: {e}")
    if not os.access(directory, os.W_OK):
        raise ConfigurationError(f"Output directory {directory} is not writable")


class ExperimentRunner:
    """Runs every algorithm x repetition job of an ExperimentConfig and writes the artifacts."""

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.city = config.resolve_city()
        self.profile = config.demand_profile(self.city)
        self.out_dir = config.out_dir
        self.network: Optional[TrafficNetwork] = None
        self.layout: Optional[Tuple[int, int]] = None
        self._artifacts: List[Dict] = []

    def _record(self, path: str, kind: str, **extra) -> None:
        self._artifacts.append({"path": os.path.relpath(path, self.out_dir), "kind": kind, **extra})

    def prepare(self) -> TrafficNetwork:
        _ensure_writable(self.out_dir)
        self.network = build_city(self.city)
        self.layout = self.config.heatmap_layout or default_layout(self.city, self.network)
        cells = heatmap_cells(self.network, self.layout, self.city.archetype)
        if self.layout[0] * self.layout[1] != cells:
            raise ConfigurationError(
                f"Heatmap layout {self.layout} does not cover the {len(self.network)} intersections of {self.city.label}"
            )
        logger.info(f"Built {self.city.label}: {len(self.network)} intersections, {len(self.network.edges)} edges")
        return self.network

    def run_config(self, algorithm: str, repetition: int) -> AhmoaConfig:
        return self.config.ahmoa.model_copy(update={
            "seed": run_seed(self.config.seed, algorithm, repetition),
            "evaluation_seed": repetition_evaluation_seed(self.config.seed, repetition),
        })

    def _run_job(self, job: Tuple[str, int]) -> RunResult:
        algorithm, repetition = job
        name, runner = ALGORITHMS[algorithm]
        cfg = self.run_config(algorithm, repetition)
        logger.info(f"Running {name} repetition {repetition} (seed {cfg.seed})")
        return runner(self.network, self.profile, cfg)

    def run(self) -> Dict:
        network = self.network or self.prepare()
        jobs = [(algorithm, rep) for rep in range(self.config.repetitions) for algorithm in self.config.algorithms]
        if self.config.parallel_runs > 1:
            with ThreadPoolExecutor(max_workers=self.config.parallel_runs) as pool:
                results = list(pool.map(self._run_job, jobs))
        else:
            results = [self._run_job(job) for job in jobs]

        by_repetition: Dict[int, List[Tuple[str, List[FrontRecord]]]] = {}
        for (algorithm, rep), result in zip(jobs, results):
            name = ALGORITHMS[algorithm][0]
            records = _as_records(name, result.front, rep)
            by_repetition.setdefault(rep, []).append((name, records))
            self._write_run(algorithm, rep, result, records)

        self._write_merged(by_repetition)
        context = results[0].context
        self._write_heatmaps(context, [(a, r) for (a, rep), r in zip(jobs, results) if rep == 0])
        for path in export_network_summary(network, context, os.path.join(self.out_dir, "network")):
            self._record(path, "network")
        if self.config.export_debug_tables:
            self._write_debug_tables(results[0])

        manifest = {
            "city": self.city.label,
            "intersections": len(network),
            "seed": self.config.seed,
            "algorithms": [ALGORITHMS[a][0] for a in self.config.algorithms],
            "repetitions": self.config.repetitions,
            "artifacts": self._artifacts,
        }
        manifest_path = os.path.join(self.out_dir, "manifest.json")
        with open(manifest_path, "w") as f:
            json.dump(manifest, f, indent=2)
        logger.info(f"Wrote {len(self._artifacts)} artifacts; manifest at {manifest_path}")
        return manifest

    def _write_run(self, algorithm: str, rep: int, result: RunResult, records: List[FrontRecord]) -> None:
        directory = os.path.join(self.out_dir, "runs", f"{algorithm}_rep{rep}")
        os.makedirs(directory, exist_ok=True)
        seeds = {"algorithm": result.algorithm, "repetition": rep, "seed": result.seed,
                 "evaluation_seed": result.evaluation_seed}
        json_path = os.path.join(directory, "front.json")
        csv_path = os.path.join(directory, "front.csv")
        telemetry_path = os.path.join(directory, "telemetry.jsonl")
        write_front_json(records, json_path)
        write_front_csv(records, csv_path)
        write_telemetry(result.history, result.algorithm, telemetry_path)
        self._record(json_path, "front_json", **seeds)
        self._record(csv_path, "front_csv", **seeds)
        self._record(telemetry_path, "telemetry", **seeds)

    def _write_merged(self, by_repetition: Dict[int, List[Tuple[str, List[FrontRecord]]]]) -> None:
        directory = os.path.join(self.out_dir, "merged")
        os.makedirs(directory, exist_ok=True)
        order = self.config.merged_order
        pooled = []
        for rep in sorted(by_repetition):
            runs = by_repetition[rep]
            pooled.extend(runs)
            path = os.path.join(directory, f"rep{rep}.csv")
            write_front_csv(merge_global_front(runs, order), path)
            self._record(path, "merged_front_csv", repetition=rep)

        merged = merge_global_front(pooled, order)
        csv_path = os.path.join(directory, "global_front.csv")
        json_path = os.path.join(directory, "global_front.json")
        summary_path = os.path.join(directory, "contributions.json")
        write_front_csv(merged, csv_path)
        write_front_json(merged, json_path)
        with open(summary_path, "w") as f:
            json.dump(contribution_summary(merged), f, indent=2)
        self._record(csv_path, "merged_front_csv")
        self._record(json_path, "merged_front_json")
        self._record(summary_path, "contributions")
        logger.info(f"Global front: {len(merged)} records {contribution_summary(merged)}")

    def _write_heatmaps(self, context: EvaluationContext, runs: Sequence[Tuple[str, RunResult]]) -> None:
        directory = os.path.join(self.out_dir, "heatmaps")
        os.makedirs(directory, exist_ok=True)
        cells = self.layout[0] * self.layout[1]
        baseline = np.full(len(self.network), BASELINE_LAMBDA)
        path = os.path.join(directory, "baseline.csv")
        export_heatmap(context.delay_matrix(baseline)[:cells], self.layout, path)
        self._record(path, "heatmap", scenario="baseline")
        for algorithm, result in runs:
            representative = representative_solution(result.front)
            path = os.path.join(directory, f"{algorithm}.csv")
            export_heatmap(context.delay_matrix(representative.lam)[:cells], self.layout, path)
            self._record(path, "heatmap", scenario=result.algorithm)

    def _write_debug_tables(self, result: RunResult) -> None:
        directory = os.path.join(self.out_dir, "debug")
        os.makedirs(directory, exist_ok=True)
        volumes = generate_volumes(self.network, self.profile, result.evaluation_seed, 1)
        volume_path = os.path.join(directory, "volumes.csv")
        volumes.to_csv(volume_path)
        self._record(volume_path, "volumes", seed=result.evaluation_seed)
        delay_path = os.path.join(directory, "delays.csv")
        export_delay_table(result.context.delay_matrix(representative_solution(result.front).lam), delay_path)
        self._record(delay_path, "delays", algorithm=result.algorithm)


def representative_solution(front: Sequence[Solution]) -> Solution:
    """Minimum-delay member of a front."""
    return min(front, key=lambda s: s.objectives.f1)


def run_experiment(config: ExperimentConfig) -> Dict:
    """Run every configured algorithm and repetition; returns the manifest."""
    return ExperimentRunner(config).run()


def all_artifacts_exist(manifest: Dict, out_dir: str) -> bool:
    return all(os.path.getsize(os.path.join(out_dir, a["path"])) > 0 for a in manifest["artifacts"])
