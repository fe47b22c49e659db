"""
Stochastic hourly traffic demand and weather-modulated saturation flows.

Demand volumes follow the time-of-day schedule of the traffic data generator:
peak hours scale the base saturation flow by 1.5 with a U[0.9, 1.3] jitter,
lunch hours by 1.1 with a U[0.8, 1.2] jitter, midnight hours drop to 0.5 and
the remaining hours draw from U[0.5, 1.0]. Capacity is modulated separately by
the periodic weather factor ``0.8 + 0.4 sin(2 pi t / T)``.
"""

import logging
import math
from typing import List, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator

from seeded_streams import STREAM_VOLUMES, SeededStream
from traffic_network import CityConfig, TrafficNetwork

logger = logging.getLogger(__name__)

HOURS_PER_DAY = 24

# Hour categories, in precedence order.
MIDNIGHT = "midnight"
PEAK = "peak"
LUNCH = "lunch"
OFF_PEAK = "off_peak"


class DemandProfile(BaseModel):
    """Time-of-day demand schedule. Windows are ``[start, end)`` hour ranges."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    peak_windows: List[Tuple[int, int]] = Field(default_factory=lambda: [(7, 9), (17, 19)])
    lunch_window: Tuple[int, int] = (12, 14)
    midnight_window: Tuple[int, int] = (0, 5)
    peak_base_factor: float = Field(default=1.5, gt=0.0)
    peak_jitter: Tuple[float, float] = (0.9, 1.3)
    offpeak_range: Tuple[float, float] = (0.5, 1.0)
    lunch_base_factor: float = Field(default=1.1, gt=0.0)
    lunch_jitter: Tuple[float, float] = (0.8, 1.2)
    midnight_factor: float = Field(default=0.5, gt=0.0)
    city_uplift: float = Field(default=0.0, ge=0.0)

    @field_validator("peak_jitter", "offpeak_range", "lunch_jitter")
    @classmethod
    def _check_interval(cls, interval):
        low, high = interval
        if low <= 0.0 or high <= 0.0:
            raise ValueError(f"Interval bounds must be strictly positive, got {interval}")
        if low > high:
            raise ValueError(f"Interval low must not exceed high, got {interval}")
        return interval

    @field_validator("peak_windows")
    @classmethod
    def _check_peak_windows(cls, windows):
        if not windows:
            raise ValueError("peak_windows must not be empty")
        for window in windows:
            _check_hours(window)
        return windows

    @field_validator("lunch_window", "midnight_window")
    @classmethod
    def _check_window(cls, window):
        return _check_hours(window)

    @classmethod
    def for_city(cls, city: CityConfig, **overrides) -> "DemandProfile":
        """Profile using a city's peak, lunch and midnight windows and peak uplift."""
        fields = {
            "peak_windows": list(city.peak_windows),
            "lunch_window": city.lunch_window,
            "midnight_window": city.midnight_window,
            "city_uplift": city.peak_uplift,
        }
        fields.update(overrides)
        return cls(**fields)

    def without_jitter(self) -> "DemandProfile":
        """
        Copy with constant hourly factors: the nominal schedule.

        Peak and lunch hours keep their base factors (jitter multiplier 1.0);
        off-peak hours, which have no base factor, use the midpoint of their range.
        """
        centre = 0.5 * (self.offpeak_range[0] + self.offpeak_range[1])
        return DemandProfile(**{
            **self.model_dump(),
            "peak_jitter": (1.0, 1.0),
            "offpeak_range": (centre, centre),
            "lunch_jitter": (1.0, 1.0),
        })

    def hour_category(self, t: int) -> str:
        """Window precedence: midnight > peak > lunch > off-peak."""
        if _in_window(t, self.midnight_window):
            return MIDNIGHT
        if any(_in_window(t, window) for window in self.peak_windows):
            return PEAK
        if _in_window(t, self.lunch_window):
            return LUNCH
        return OFF_PEAK

    def factor_bounds(self, t: int) -> Tuple[float, float]:
        """Closed interval of possible time-of-day factors at hour ``t``."""
        category = self.hour_category(t)
        if category == MIDNIGHT:
            return self.midnight_factor, self.midnight_factor
        if category == PEAK:
            scale = self.peak_base_factor * (1.0 + self.city_uplift)
            return scale * self.peak_jitter[0], scale * self.peak_jitter[1]
        if category == LUNCH:
            return self.lunch_base_factor * self.lunch_jitter[0], self.lunch_base_factor * self.lunch_jitter[1]
        return self.offpeak_range

    def expected_factor(self, t: int) -> float:
        low, high = self.factor_bounds(t)
        return 0.5 * (low + high)


def _check_hours(window: Tuple[int, int]) -> Tuple[int, int]:
    start, end = window
    if not (0 <= start < HOURS_PER_DAY) or not (0 < end <= HOURS_PER_DAY) or start >= end:
        raise ValueError(f"Invalid hour window {window}")
    return window


def _in_window(t: int, window: Tuple[int, int]) -> bool:
    return window[0] <= t < window[1]


class VolumeField:
    """One stochastic draw of hourly vehicle volumes V[i][t] (vehicles/hour)."""

    def __init__(self, values: np.ndarray, seed: int, draw_index: int):
        values = np.asarray(values, dtype=float)
        if values.ndim != 2:
            raise ValueError(f"Volume field must be a 2-D matrix, got shape {values.shape}")
        if np.any(values < 0):
            raise ValueError("Volume field entries must be non-negative")
        values.setflags(write=False)
        self.values = values
        self.seed = seed
        self.draw_index = draw_index

    def __repr__(self) -> str:
        return f"VolumeField(shape={self.values.shape}, seed={self.seed}, draw_index={self.draw_index})"

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape

    def to_frame(self) -> pd.DataFrame:
        n, segments = self.values.shape
        return pd.DataFrame({
            "i": np.repeat(np.arange(n), segments),
            "t": np.tile(np.arange(segments), n),
            "volume": self.values.reshape(-1),
        })

    def to_csv(self, path: str) -> None:
        """Write ``i,t,volume`` rows for debugging."""
        self.to_frame().to_csv(path, index=False)


def weather_factor(t: int, T: int = HOURS_PER_DAY) -> float:
    """omega(t) = 0.8 + 0.4 sin(2 pi t / T), always within [0.4, 1.2]."""
    if T <= 0:
        raise ValueError(f"Segment count T must be positive, got {T}")
    if not (0 <= t < T):
        raise ValueError(f"Segment {t} out of range [0, {T})")
    return 0.8 + 0.4 * math.sin(2.0 * math.pi * t / T)


def weather_factors(T: int = HOURS_PER_DAY) -> np.ndarray:
    return 0.8 + 0.4 * np.sin(2.0 * np.pi * np.arange(T) / T)


def effective_saturation(base: float, t: int, T: int = HOURS_PER_DAY) -> float:
    """s_i(t) = s_base * omega(t)."""
    if base <= 0:
        raise ValueError(f"Base saturation must be positive, got {base}")
    return base * weather_factor(t, T)


def saturation_matrix(network: TrafficNetwork, T: int = HOURS_PER_DAY) -> np.ndarray:
    """Weather-modulated saturation s_i(t) for every intersection and segment, shape [N, T]."""
    return np.outer(network.base_saturation, weather_factors(T))


def time_of_day_factor(profile: DemandProfile, t: int, rng: SeededStream) -> float:
    """
    Demand multiplier for hour ``t`` drawn from ``rng``.

    Every branch consumes exactly one uniform variate so a cell's factor only
    depends on its position in the stream.
    """
    if not (0 <= t < HOURS_PER_DAY):
        raise ValueError(f"Hour {t} out of range [0, {HOURS_PER_DAY})")
    return _factor_from_unit(profile, t, float(rng.random()))


def _factor_from_unit(profile: DemandProfile, t: int, u):
    low, high = profile.factor_bounds(t)
    if low == high:
        return low if np.isscalar(u) else np.full(np.shape(u), low)
    return low + (high - low) * u


def volume_stream(seed: int, draw_index: int) -> SeededStream:
    """Counter-based stream for one draw; cell (i, t) uses counter position ``i * T + t``."""
    return SeededStream(seed, STREAM_VOLUMES, draw_index)


def generate_volumes(network: TrafficNetwork, profile: DemandProfile, seed: int, draw_index: int,
                     T: int = HOURS_PER_DAY) -> VolumeField:
    """
    V[i][t] = base_saturation(i) * time_of_day_factor(profile, t, rng(seed, draw_index, i, t)).

    Deterministic given ``(seed, draw_index)``; distinct draw indices give
    independent fields.
    """
    if T != HOURS_PER_DAY:
        raise ValueError(f"Demand schedule is defined over {HOURS_PER_DAY} hourly segments, got T={T}")
    n = len(network)
    units = volume_stream(seed, draw_index).random((n, T))
    factors = np.empty((n, T))
    for t in range(T):
        factors[:, t] = _factor_from_unit(profile, t, units[:, t])
    values = network.base_saturation[:, None] * factors
    return VolumeField(values, seed=seed, draw_index=draw_index)


def expected_volumes(network: TrafficNetwork, profile: DemandProfile, T: int = HOURS_PER_DAY) -> np.ndarray:
    """Analytic mean volume base * E[factor] per cell, shape [N, T]."""
    expected = np.array([profile.expected_factor(t) for t in range(T)])
    return np.outer(network.base_saturation, expected)
