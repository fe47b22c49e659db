"""
Traffic network data model and deterministic city generators.

A network is a set of signalised intersections (cycle length, base saturation
flow, road class, intersection-type weight) plus an undirected adjacency
structure. Three generators cover the city archetypes used in the experiments:

* ``build_grid_city`` - rigid avenue/street grid (Manhattan)
* ``build_radial_city`` - radial roads crossing concentric rings around a hub (Paris)
* ``build_irregular_city`` - lattice with seeded edge removals and shortcuts
  (Istanbul, Sao Paulo)

Generators are pure functions of their arguments: the same inputs always
produce bit-identical networks.
"""

import json
import logging
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from seeded_streams import STREAM_NETWORK, SeededStream

logger = logging.getLogger(__name__)

DEFAULT_CYCLE_SET = (60, 90, 120)
SATURATION_RANGE = (800.0, 2400.0)
DEFAULT_REWIRE_FRACTION = 0.15
SHORTCUT_REACH = 3

# Base saturation bands (vehicles/hour) by road class.
SATURATION_BANDS = {
    "Local": (800.0, 1400.0),
    "Collector": (1200.0, 1800.0),
    "Arterial": (1800.0, 2400.0),
}

# IT_i encoding by node degree: 4-way (or more) crossings, T-junctions, bends/terminals.
TYPE_WEIGHT_CROSSING = 1.0
TYPE_WEIGHT_T_JUNCTION = 0.75
TYPE_WEIGHT_TERMINAL = 0.5


class ConfigurationError(ValueError):
    """Raised when a generator, optimizer or experiment is configured inconsistently."""


class RoadClass(str, Enum):
    LOCAL = "Local"
    COLLECTOR = "Collector"
    ARTERIAL = "Arterial"

    @property
    def rank(self) -> int:
        return _CLASS_RANK[self]


_CLASS_RANK = {RoadClass.LOCAL: 0, RoadClass.COLLECTOR: 1, RoadClass.ARTERIAL: 2}


def crossing_class(a: RoadClass, b: RoadClass) -> RoadClass:
    """An intersection takes the class of the minor road of its crossing."""
    return a if a.rank <= b.rank else b


class CityArchetype(str, Enum):
    GRID = "Grid"
    RADIAL_CONCENTRIC = "RadialConcentric"
    IRREGULAR_MESH = "IrregularMesh"


class IntersectionSpec(BaseModel):
    """Static attributes of one signalised intersection."""

    model_config = ConfigDict(frozen=True)

    id: int = Field(ge=0)
    cycle_length: int = Field(gt=0, description="Signal cycle length (s)")
    base_saturation: float = Field(
        ge=SATURATION_RANGE[0], le=SATURATION_RANGE[1], description="Saturation flow (veh/hour)"
    )
    road_class: RoadClass
    type_weight: float = Field(gt=0.0)


class CityConfig(BaseModel):
    """Generator and demand-window parameters of one city archetype."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    label: str = "custom"
    archetype: CityArchetype
    arterial_count: int = Field(ge=1)
    collector_count: int = Field(ge=1)
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    peak_windows: List[Tuple[int, int]] = Field(default_factory=lambda: [(7, 9), (17, 19)])
    peak_uplift: float = Field(default=0.0, ge=0.0)
    lunch_window: Tuple[int, int] = (12, 14)
    midnight_window: Tuple[int, int] = (0, 5)
    rewire_fraction: float = Field(default=DEFAULT_REWIRE_FRACTION, ge=0.0, lt=1.0)
    heatmap_layout: Optional[Tuple[int, int]] = None

    @field_validator("peak_windows")
    @classmethod
    def _check_peaks(cls, windows):
        if not windows:
            raise ValueError("peak_windows must not be empty")
        for window in windows:
            _check_window(window)
        return windows

    @field_validator("lunch_window", "midnight_window")
    @classmethod
    def _check_window_field(cls, window):
        return _check_window(window)


def _check_window(window: Tuple[int, int]) -> Tuple[int, int]:
    start, end = window
    if not (0 <= start < 24) or not (0 < end <= 24) or start >= end:
        raise ValueError(f"Invalid hour window {window}: expected 0 <= start < end <= 24")
    return window


CITY_PRESETS: Dict[str, CityConfig] = {
    "manhattan": CityConfig(
        label="Manhattan",
        archetype=CityArchetype.GRID,
        arterial_count=22,
        collector_count=120,
        seed=1001,
        peak_windows=[(7, 9), (17, 19)],
        heatmap_layout=(88, 30),
    ),
    "istanbul": CityConfig(
        label="Istanbul",
        archetype=CityArchetype.IRREGULAR_MESH,
        arterial_count=30,
        collector_count=50,
        seed=1002,
        peak_windows=[(7, 10), (16, 20)],
        peak_uplift=0.25,
        heatmap_layout=(50, 30),
    ),
    "paris": CityConfig(
        label="Paris",
        archetype=CityArchetype.RADIAL_CONCENTRIC,
        arterial_count=20,
        collector_count=60,
        seed=1003,
        peak_windows=[(7, 9), (17, 19)],
        heatmap_layout=(60, 20),
    ),
    "sao_paulo": CityConfig(
        label="Sao Paulo",
        archetype=CityArchetype.IRREGULAR_MESH,
        arterial_count=30,
        collector_count=50,
        seed=1004,
        peak_windows=[(6, 10), (16, 21)],
        heatmap_layout=(50, 30),
    ),
}


def get_city_preset(name: str) -> CityConfig:
    key = name.strip().lower().replace("-", "_").replace(" ", "_")
    if key not in CITY_PRESETS:
        raise ConfigurationError(f"Unknown city preset '{name}'; expected one of {sorted(CITY_PRESETS)}")
    return CITY_PRESETS[key]


class TrafficNetwork:
    """Immutable intersection network with an undirected adjacency structure."""

    def __init__(self, intersections: Sequence[IntersectionSpec], edges: Iterable[Sequence[int]],
                 city_label: str = "custom", cycle_set: Sequence[int] = DEFAULT_CYCLE_SET):
        """
        Args:
            intersections: Intersection specs; ``intersections[k].id`` must equal ``k``
            edges: Undirected edges as index pairs; each pair may appear once
            city_label: Free-text name of the city
            cycle_set: Allowed cycle lengths in seconds

        Raises:
            ValueError: If the structure violates a network invariant
        """
        self.intersections: Tuple[IntersectionSpec, ...] = tuple(intersections)
        self.city_label = city_label
        self.cycle_set = tuple(int(c) for c in cycle_set)
        n = len(self.intersections)
        if n < 1:
            raise ValueError("A traffic network needs at least one intersection")

        for position, spec in enumerate(self.intersections):
            if spec.id != position:
                raise ValueError(f"Intersection at position {position} has id {spec.id}")
            if spec.cycle_length not in self.cycle_set:
                raise ValueError(
                    f"Intersection {position} cycle {spec.cycle_length}s not in allowed set {self.cycle_set}"
                )

        normalised = set()
        for pair in edges:
            i, j = int(pair[0]), int(pair[1])
            if i == j:
                raise ValueError(f"Self-loop at intersection {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"Edge ({i}, {j}) references an unknown intersection")
            key = (min(i, j), max(i, j))
            if key in normalised:
                raise ValueError(f"Duplicate edge {key}")
            normalised.add(key)

        ordered = sorted(normalised)
        self.edges = np.array(ordered, dtype=np.int64).reshape(-1, 2)
        self.edges.setflags(write=False)

        self._neighbors: List[List[int]] = [[] for _ in range(n)]
        for i, j in ordered:
            self._neighbors[i].append(j)
            self._neighbors[j].append(i)
        for k, adjacent in enumerate(self._neighbors):
            if not adjacent:
                raise ValueError(f"Intersection {k} is isolated (degree 0)")
            adjacent.sort()

        self.cycle_lengths = _frozen(np.array([s.cycle_length for s in self.intersections], dtype=float))
        self.base_saturation = _frozen(np.array([s.base_saturation for s in self.intersections], dtype=float))
        self.type_weights = _frozen(np.array([s.type_weight for s in self.intersections], dtype=float))
        self.degrees = _frozen(np.array([len(a) for a in self._neighbors], dtype=np.int64))

    def __len__(self) -> int:
        return len(self.intersections)

    def __repr__(self) -> str:
        return f"TrafficNetwork(city_label={self.city_label!r}, intersections={len(self)}, edges={len(self.edges)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrafficNetwork):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    @property
    def size(self) -> int:
        return len(self.intersections)

    def neighbors(self, i: int) -> List[int]:
        """Sorted indices of the intersections adjacent to ``i``."""
        if not (0 <= i < len(self.intersections)):
            raise IndexError(f"Intersection index {i} out of range for {len(self.intersections)} intersections")
        return list(self._neighbors[i])

    def adjacency_matrix(self) -> np.ndarray:
        """Dense symmetric 0/1 adjacency matrix (AM)."""
        n = len(self.intersections)
        matrix = np.zeros((n, n), dtype=np.uint8)
        if len(self.edges):
            matrix[self.edges[:, 0], self.edges[:, 1]] = 1
            matrix[self.edges[:, 1], self.edges[:, 0]] = 1
        return matrix

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.intersections)))
        graph.add_edges_from(map(tuple, self.edges.tolist()))
        return graph

    def is_connected(self) -> bool:
        return nx.is_connected(self.to_networkx())

    def road_classes(self) -> List[RoadClass]:
        return [spec.road_class for spec in self.intersections]

    def to_dict(self) -> Dict:
        return {
            "city_label": self.city_label,
            "intersections": [
                {
                    "id": spec.id,
                    "cycle": spec.cycle_length,
                    "base_saturation": spec.base_saturation,
                    "class": spec.road_class.value,
                    "type_weight": spec.type_weight,
                }
                for spec in self.intersections
            ],
            "edges": self.edges.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict, cycle_set: Sequence[int] = DEFAULT_CYCLE_SET) -> "TrafficNetwork":
        intersections = [
            IntersectionSpec(
                id=item["id"],
                cycle_length=item["cycle"],
                base_saturation=item["base_saturation"],
                road_class=RoadClass(item["class"]),
                type_weight=item["type_weight"],
            )
            for item in data["intersections"]
        ]
        return cls(intersections, data["edges"], city_label=data.get("city_label", "custom"), cycle_set=cycle_set)

    def save_json(self, path: str) -> None:
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2)
        logger.info(f"Saved network '{self.city_label}' ({len(self)} intersections) to {path}")

    @classmethod
    def load_json(cls, path: str) -> "TrafficNetwork":
        with open(path, "r") as f:
            return cls.from_dict(json.load(f))


def _frozen(values: np.ndarray) -> np.ndarray:
    values.setflags(write=False)
    return values


def neighbors(network: TrafficNetwork, i: int) -> List[int]:
    """Sorted list of j with AM[i][j] = 1."""
    return network.neighbors(i)


def type_weight_for_degree(degree: int) -> float:
    if degree >= 4:
        return TYPE_WEIGHT_CROSSING
    if degree == 3:
        return TYPE_WEIGHT_T_JUNCTION
    return TYPE_WEIGHT_TERMINAL


def _assemble(n: int, edges: Iterable[Tuple[int, int]], classes: Sequence[RoadClass], stream: SeededStream,
              city_label: str, cycle_set: Sequence[int] = DEFAULT_CYCLE_SET) -> TrafficNetwork:
    """Attach seeded cycle lengths, class-banded saturations and degree-based type weights."""
    edge_list = sorted(edges)
    degree = np.zeros(n, dtype=np.int64)
    for i, j in edge_list:
        degree[i] += 1
        degree[j] += 1

    cycles = stream.child(0).choice(np.array(cycle_set, dtype=np.int64), size=n)
    unit = stream.child(1).random(n)
    intersections = []
    for k in range(n):
        low, high = SATURATION_BANDS[classes[k].value]
        intersections.append(
            IntersectionSpec(
                id=k,
                cycle_length=int(cycles[k]),
                base_saturation=float(low + (high - low) * unit[k]),
                road_class=classes[k],
                type_weight=type_weight_for_degree(int(degree[k])),
            )
        )
    return TrafficNetwork(intersections, edge_list, city_label=city_label, cycle_set=cycle_set)


def _lattice_edges(rows: int, cols: int) -> List[Tuple[int, int]]:
    """4-neighbourhood edges of a rows x cols lattice indexed ``r * cols + c``."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            node = r * cols + c
            if c + 1 < cols:
                edges.append((node, node + 1))
            if r + 1 < rows:
                edges.append((node, node + cols))
    return edges


def build_grid_city(avenues: int, streets: int, seed: int, city_label: str = "Grid") -> TrafficNetwork:
    """
    Build an avenue x street grid.

    Intersection ``a * streets + s`` sits on avenue ``a`` and street ``s`` and is
    connected to its 4-neighbourhood. Avenues are Arterial; each street is
    seeded as Collector (one in three on average) or Local, and the
    intersection takes the minor class of its crossing.
    """
    if avenues < 2 or streets < 2:
        raise ConfigurationError(f"Grid city needs avenues >= 2 and streets >= 2, got {avenues}x{streets}")

    stream = SeededStream(seed, STREAM_NETWORK)
    street_draw = stream.child(2).random(streets)
    street_classes = [RoadClass.COLLECTOR if u < 1.0 / 3.0 else RoadClass.LOCAL for u in street_draw]
    classes = [crossing_class(RoadClass.ARTERIAL, street_classes[s]) for _ in range(avenues) for s in range(streets)]

    network = _assemble(avenues * streets, _lattice_edges(avenues, streets), classes, stream, city_label)
    logger.debug(f"Built grid city {avenues}x{streets}: {len(network)} intersections, {len(network.edges)} edges")
    return network


def build_radial_city(radials: int, rings: int, seed: int, city_label: str = "Radial") -> TrafficNetwork:
    """
    Build a ring-radial city.

    Crossing ``r * rings + k`` lies on radial ``r`` and ring ``k`` (ring 0 is the
    innermost); the central hub is the last intersection, index
    ``radials * rings``. Radials are Arterial, rings Collector.
    """
    if radials < 3:
        raise ConfigurationError(f"Radial city needs at least 3 radials, got {radials}")
    if rings < 1:
        raise ConfigurationError(f"Radial city needs at least 1 ring, got {rings}")

    hub = radials * rings
    edges = []
    for r in range(radials):
        edges.append((r * rings, hub))
        for k in range(rings):
            node = r * rings + k
            if k + 1 < rings:
                edges.append((node, node + 1))
            around = ((r + 1) % radials) * rings + k
            edges.append((min(node, around), max(node, around)))

    classes = [crossing_class(RoadClass.ARTERIAL, RoadClass.COLLECTOR)] * hub + [RoadClass.ARTERIAL]
    stream = SeededStream(seed, STREAM_NETWORK)
    network = _assemble(hub + 1, [(min(i, j), max(i, j)) for i, j in edges], classes, stream, city_label)
    logger.debug(f"Built radial city {radials} radials x {rings} rings: {len(network)} intersections")
    return network


def build_irregular_city(arterials: int, collectors: int, seed: int,
                         rewire_fraction: float = DEFAULT_REWIRE_FRACTION,
                         city_label: str = "Irregular") -> TrafficNetwork:
    """
    Build a seeded irregular mesh.

    Starts from the arterials x collectors crossing lattice, removes a seeded
    ``rewire_fraction`` of its edges (skipping any removal that would
    disconnect the graph) and adds the same number of short-range shortcut
    edges. Shortcut endpoints model bridges and tunnels and are Arterial.
    """
    if arterials < 1 or collectors < 1:
        raise ConfigurationError(f"Irregular city needs arterials >= 1 and collectors >= 1, got {arterials}x{collectors}")
    n = arterials * collectors
    if n < 2:
        raise ConfigurationError("Irregular city with a single intersection cannot satisfy degree >= 1")
    if not (0.0 <= rewire_fraction < 1.0):
        raise ConfigurationError(f"rewire_fraction {rewire_fraction} must be in [0, 1)")

    stream = SeededStream(seed, STREAM_NETWORK)
    lattice = _lattice_edges(arterials, collectors)
    target = int(round(rewire_fraction * len(lattice)))

    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(lattice)

    removed = 0
    for index in stream.child(3).permutation(len(lattice)):
        if removed >= target:
            break
        u, v = lattice[int(index)]
        graph.remove_edge(u, v)
        if nx.has_path(graph, u, v):
            removed += 1
        else:
            graph.add_edge(u, v)

    shortcut_stream = stream.child(4)
    shortcut_nodes = set()
    added = 0
    attempts = 0
    while added < removed and attempts < 50 * max(removed, 1):
        attempts += 1
        u = int(shortcut_stream.integers(0, n))
        da, dc = (int(x) for x in shortcut_stream.integers(-SHORTCUT_REACH, SHORTCUT_REACH + 1, size=2))
        a, c = divmod(u, collectors)
        a2, c2 = a + da, c + dc
        if (da == 0 and dc == 0) or not (0 <= a2 < arterials and 0 <= c2 < collectors):
            continue
        v = a2 * collectors + c2
        if graph.has_edge(u, v):
            continue
        graph.add_edge(u, v)
        shortcut_nodes.update((u, v))
        added += 1
    if added < removed:
        logger.debug(f"Irregular city: placed {added} of {removed} shortcut edges")

    classes = [RoadClass.ARTERIAL if k in shortcut_nodes else crossing_class(RoadClass.ARTERIAL, RoadClass.COLLECTOR)
               for k in range(n)]
    edges = [(min(u, v), max(u, v)) for u, v in graph.edges()]
    network = _assemble(n, edges, classes, stream, city_label)
    logger.debug(f"Built irregular city {arterials}x{collectors}: removed {removed}, added {added} edges")
    return network


def build_city(config: CityConfig) -> TrafficNetwork:
    """Dispatch a CityConfig to its archetype generator."""
    if config.archetype == CityArchetype.GRID:
        return build_grid_city(config.arterial_count, config.collector_count, config.seed, city_label=config.label)
    if config.archetype == CityArchetype.RADIAL_CONCENTRIC:
        return build_radial_city(config.arterial_count, config.collector_count, config.seed, city_label=config.label)
    return build_irregular_city(config.arterial_count, config.collector_count, config.seed,
                                rewire_fraction=config.rewire_fraction, city_label=config.label)
