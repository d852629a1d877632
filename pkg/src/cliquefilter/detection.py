"""Detection outcomes and sensor noise models."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Sequence, Union


class ModelError(ValueError):
    """Invalid noise-model parameters."""


@dataclass(frozen=True)
class DetectionOutcome:
    landmark_id: Hashable
    detected: int
    distance: float

    def __post_init__(self):
        if self.detected not in (0, 1):
            raise ModelError(f"detected must be 0 or 1, got {self.detected!r}")
        if not self.distance >= 0:
            raise ModelError(f"distance must be non-negative, got {self.distance}")


@dataclass(frozen=True)
class DetectionBatch:
    """All outcomes for one clique at one observation time."""

    time: float
    outcomes: tuple

    def __post_init__(self):
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        if not self.outcomes:
            raise ModelError("a detection batch must contain at least one outcome")
        ids = [o.landmark_id for o in self.outcomes]
        if len(set(ids)) != len(ids):
            raise ModelError(f"duplicate landmark ids in batch at t={self.time}")

    @property
    def n_positive(self) -> int:
        return sum(o.detected for o in self.outcomes)

    @property
    def distances(self) -> list:
        return [o.distance for o in self.outcomes]


@dataclass(frozen=True)
class Constant:
    p_miss: float

    def __post_init__(self):
        if not 0 <= self.p_miss < 1:
            raise ModelError(f"p_miss must be in [0, 1), got {self.p_miss}")

    def p_miss_at(self, distance: float) -> float:
        return self.p_miss

    def p_detect_at(self, distance: float) -> float:
        return 1.0 - self.p_miss


@dataclass(frozen=True)
class RangeDegraded:
    s_max: float
    s_obs: float

    def __post_init__(self):
        if not 0 < self.s_obs <= self.s_max:
            raise ModelError(
                f"need 0 < s_obs <= s_max, got s_obs={self.s_obs}, s_max={self.s_max}"
            )

    def p_miss_at(self, distance: float) -> float:
        return range_miss_probability(distance, self.s_max, self.s_obs)

    def p_detect_at(self, distance: float) -> float:
        # direct form keeps precision when the miss probability is close to 1
        return math.exp(-distance * self.s_max / self.s_obs)


MissModel = Union[Constant, RangeDegraded]


@dataclass(frozen=True)
class SensorNoiseModel:
    p_false: float
    miss_model: MissModel

    def __post_init__(self):
        if not 0 <= self.p_false < 1:
            raise ModelError(f"p_false must be in [0, 1), got {self.p_false}")


def range_miss_probability(s: float, s_max: float, s_obs: float) -> float:
    """Missed-detection probability at range ``s``: ``1 - exp(-s * s_max / s_obs)``.

    Zero at the sensor and rising towards 1; the ratio ``s_max / s_obs``
    controls how quickly data beyond the reliable range stops counting.
    """
    if not s >= 0:
        raise ModelError(f"range must be non-negative, got {s}")
    if not 0 < s_obs <= s_max:
        raise ModelError(f"need 0 < s_obs <= s_max, got s_obs={s_obs}, s_max={s_max}")
    return -math.expm1(-s * s_max / s_obs)


def detection_likelihood(
    outcome: DetectionOutcome, noise: SensorNoiseModel, persisting: bool
) -> float:
    """P(j | clique state) for a single landmark detection attempt."""
    j = outcome.detected
    if persisting:
        if j == 0:
            return noise.miss_model.p_miss_at(outcome.distance)
        return noise.miss_model.p_detect_at(outcome.distance)
    return noise.p_false if j == 1 else 1.0 - noise.p_false


def _log(p: float) -> float:
    return math.log(p) if p > 0 else -math.inf


def log_batch_likelihood(
    outcomes: Sequence[DetectionOutcome], noise: SensorNoiseModel, persisting: bool
) -> float:
    """Sum of log detection likelihoods over a batch (conditional independence)."""
    return sum(_log(detection_likelihood(o, noise, persisting)) for o in outcomes)
