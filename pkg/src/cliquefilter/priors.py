"""Survival-time priors for clique persistence.

The filter recursion only ever needs the CDF (and its complement, the
survival function); the density is exposed so tests can integrate the
evidence by brute force.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np


class PriorError(ValueError):
    """Raised for invalid prior parameters or out-of-domain queries."""


def _check_time(t: float) -> None:
    if not t >= 0:
        raise PriorError(f"survival prior queried at negative time t={t}")


@dataclass(frozen=True)
class Exponential:
    """Exponential survival-time prior, ``F(t) = 1 - exp(-rate * t)``."""

    rate: float

    def __post_init__(self):
        if not (self.rate > 0 and math.isfinite(self.rate)):
            raise PriorError(f"exponential rate must be positive, got {self.rate}")

    @classmethod
    def from_median(cls, median: float) -> "Exponential":
        if not median > 0:
            raise PriorError("median must be positive")
        return cls(math.log(2.0) / median)

    def cdf(self, t: float) -> float:
        _check_time(t)
        return -math.expm1(-self.rate * t)

    def log_sf(self, t: float) -> float:
        _check_time(t)
        return -self.rate * t

    def density(self, t: float) -> float:
        _check_time(t)
        if math.isinf(t):
            return 0.0
        return self.rate * math.exp(-self.rate * t)


@dataclass(frozen=True)
class PiecewiseLinearCDF:
    """Empirical prior given as a piecewise-linear CDF through ``knots``.

    ``knots`` is a sequence of ``(time, probability)`` pairs starting at
    ``(0, 0)`` and ending at probability 1; beyond the last knot the CDF
    stays at 1.
    """

    knots: tuple

    def __post_init__(self):
        knots = tuple((float(t), float(p)) for t, p in self.knots)
        object.__setattr__(self, "knots", knots)
        if len(knots) < 2:
            raise PriorError("piecewise prior needs at least two knots")
        if knots[0] != (0.0, 0.0):
            raise PriorError(f"first knot must be (0, 0), got {knots[0]}")
        times = np.array([k[0] for k in knots])
        probs = np.array([k[1] for k in knots])
        if np.any(np.diff(times) <= 0):
            raise PriorError("knot times must be strictly increasing")
        if np.any(np.diff(probs) < 0) or probs.min() < 0 or probs.max() > 1:
            raise PriorError("knot probabilities must be non-decreasing in [0, 1]")
        if probs[-1] != 1.0:
            raise PriorError("last knot probability must be exactly 1")
        object.__setattr__(self, "_times", times)
        object.__setattr__(self, "_probs", probs)

    def cdf(self, t: float) -> float:
        _check_time(t)
        return float(np.interp(t, self._times, self._probs))

    def log_sf(self, t: float) -> float:
        sf = 1.0 - self.cdf(t)
        return math.log(sf) if sf > 0 else -math.inf

    def density(self, t: float) -> float:
        """Segment slope; at an interior knot, the mean of the two slopes."""
        _check_time(t)
        slopes = np.diff(self._probs) / np.diff(self._times)
        i = int(np.searchsorted(self._times, t, side="right")) - 1
        right = float(slopes[i]) if i < len(slopes) else 0.0
        if 0 < i <= len(slopes) and t == self._times[i]:
            return 0.5 * (float(slopes[i - 1]) + right)
        return right


SurvivalPrior = Union[Exponential, PiecewiseLinearCDF]


def survival_cdf(prior: SurvivalPrior, t: float) -> float:
    """Probability that the clique has vanished by time ``t``."""
    return prior.cdf(t)


def survival_density(prior: SurvivalPrior, t: float) -> float:
    return prior.density(t)


def log_survival(prior: SurvivalPrior, t: float) -> float:
    """``log(1 - F(t))``, computed without cancellation where possible."""
    return prior.log_sf(t)


def log_interval_mass(prior: SurvivalPrior, a: float, b: float) -> float:
    """``log(F(b) - F(a))`` for ``a <= b``.

    Evaluated through the survival function so that late intervals, where
    both CDF values are close to 1, keep their relative precision.
    """
    la = prior.log_sf(a)
    lb = prior.log_sf(b)
    if la == -math.inf:
        return -math.inf
    diff = lb - la
    if diff >= 0:
        return -math.inf
    return la + math.log(-math.expm1(diff))


def default_prior(duration: float) -> Exponential:
    """Exponential prior whose median is half the simulated duration."""
    return Exponential.from_median(duration / 2.0)

