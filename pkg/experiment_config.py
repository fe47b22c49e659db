"""Experiment configuration for multi-algorithm signal optimization runs."""

import logging
import os
from typing import Any, Dict, List, Optional, Tuple

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from demand import DemandProfile
from moea import AhmoaConfig
from traffic_network import CityConfig, ConfigurationError, get_city_preset

logger = logging.getLogger(__name__)

# Canonical algorithm keys; the position is the algorithm index used in run seed derivation.
ALGORITHM_KEYS = ("ahmoa", "nsga3_style", "nsde3", "moead")
ALGORITHM_ALIASES = {
    "ahmoa": "ahmoa",
    "nsga3": "nsga3_style",
    "nsga3_style": "nsga3_style",
    "nsga3-style": "nsga3_style",
    "nsde3": "nsde3",
    "moead": "moead",
    "moea/d": "moead",
    "moea_d": "moead",
}

MERGE_BY_F1 = "f1"
MERGE_BY_ALGORITHM = "algorithm"

ENV_SEED = "AHMOA_SEED"
ENV_OUT_DIR = "AHMOA_OUT_DIR"
ENV_CONFIG_FILE = "AHMOA_CONFIG_FILE"


def canonical_algorithm(name: str) -> str:
    key = ALGORITHM_ALIASES.get(name.strip().lower())
    if key is None:
        raise ConfigurationError(f"Unknown algorithm '{name}'; expected one of {list(ALGORITHM_KEYS)}")
    return key


class ExperimentConfig(BaseModel):
    """One experiment: a city, a demand profile, the algorithms to compare and where to write results."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    city: str = "manhattan"
    city_config: Optional[CityConfig] = None
    demand: Dict[str, Any] = Field(default_factory=dict)
    algorithms: List[str] = Field(default_factory=lambda: ["ahmoa"])
    ahmoa: AhmoaConfig = Field(default_factory=AhmoaConfig)
    repetitions: int = Field(default=1, ge=1)
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    out_dir: str = "results"
    parallel_runs: int = Field(default=1, ge=1)
    merged_order: str = MERGE_BY_F1
    heatmap_layout: Optional[Tuple[int, int]] = None
    export_debug_tables: bool = False

    @field_validator("algorithms")
    @classmethod
    def _check_algorithms(cls, names):
        if not names:
            raise ValueError("algorithm list must not be empty")
        canonical = []
        for name in names:
            key = ALGORITHM_ALIASES.get(str(name).strip().lower())
            if key is None:
                raise ValueError(f"unknown algorithm '{name}', expected one of {list(ALGORITHM_KEYS)}")
            if key not in canonical:
                canonical.append(key)
        return canonical

    @field_validator("merged_order")
    @classmethod
    def _check_order(cls, order):
        if order not in (MERGE_BY_F1, MERGE_BY_ALGORITHM):
            raise ValueError(f"merged_order must be '{MERGE_BY_F1}' or '{MERGE_BY_ALGORITHM}'")
        return order

    @model_validator(mode="after")
    def _check_city_and_demand(self):
        city = self.resolve_city()
        self.demand_profile(city)
        return self

    def resolve_city(self) -> CityConfig:
        """Explicit ``city_config`` wins over the ``city`` preset name."""
        if self.city_config is not None:
            return self.city_config
        return get_city_preset(self.city)

    def demand_profile(self, city: Optional[CityConfig] = None) -> DemandProfile:
        return DemandProfile.for_city(city or self.resolve_city(), **self.demand)


def _format_validation_error(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(p) for p in item.get("loc", ())) or "<root>"
        parts.append(f"{location}: {item.get('msg')}")
    return "; ".join(parts)


def _load_file(path: str) -> Dict:
    if not os.path.exists(path):
        raise ConfigurationError(f"Config file not found: {path}")
    try:
        with open(path, "r") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Failed to parse config {path}: {e}")
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigurationError(f"Config {path} must contain a mapping at the top level")
    logger.info(f"Loaded experiment config from {path}")
    return data


def _apply_env_overrides(data: Dict) -> Dict:
    """AHMOA_SEED and AHMOA_OUT_DIR override the file values."""
    seed = os.environ.get(ENV_SEED)
    if seed:
        try:
            data["seed"] = int(seed)
            logger.info(f"Overriding master seed with {ENV_SEED}={data['seed']}")
        except ValueError:
            logger.warning(f"Invalid {ENV_SEED} value: {seed}")
    out_dir = os.environ.get(ENV_OUT_DIR)
    if out_dir:
        data["out_dir"] = out_dir
        logger.info(f"Overriding output directory with {ENV_OUT_DIR}={out_dir}")
    return data


def build_experiment_config(data: Dict) -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid experiment config: {_format_validation_error(e)}")


def load_experiment_config(path: Optional[str] = None, seed: Optional[int] = None,
                           out_dir: Optional[str] = None) -> ExperimentConfig:
    """
    Load an experiment config from JSON or YAML.

    Precedence (lowest to highest): file, environment, explicit arguments.
    Without ``path`` the file named by AHMOA_CONFIG_FILE is used, and
    without either the defaults apply.

    Raises:
        ConfigurationError: If the file is missing, unparsable or invalid
    """
    path = path or os.environ.get(ENV_CONFIG_FILE)
    data = _load_file(path) if path else {}
    data = _apply_env_overrides(dict(data))
    if seed is not None:
        data["seed"] = seed
    if out_dir is not None:
        data["out_dir"] = out_dir
    return build_experiment_config(data)


def save_experiment_config(config: ExperimentConfig, path: str) -> None:
    with open(path, "w") as f:
        yaml.safe_dump(config.model_dump(mode="json"), f, sort_keys=False)
    logger.info(f"Saved experiment config to {path}")
