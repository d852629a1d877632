"""Recursive joint-clique persistence filter.

State per clique is the triple (persisting-branch likelihood, lower partial
evidence sum, evidence), all kept as natural logs. Every branch of the
evidence shrinks geometrically with the number of detections folded in, so
linear storage underflows within a few hundred cluttered updates; the
posterior only needs their ratios.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .detection import DetectionBatch, SensorNoiseModel, log_batch_likelihood
from .priors import SurvivalPrior, log_interval_mass, log_survival


class FilterError(RuntimeError):
    pass


class OrderingError(FilterError):
    """Batch or query time precedes the filter's last update."""


class DegenerateEvidenceError(FilterError):
    """The detection history has (numerically) zero probability under the model."""


class ConfigError(ValueError):
    pass


def _logaddexp(a: float, b: float) -> float:
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    m = max(a, b)
    return m + math.log1p(math.exp(-abs(a - b)))


@dataclass(frozen=True)
class CliqueFilterState:
    clique_id: Hashable = None
    log_likelihood: float = 0.0
    log_lower_partial_sum: float = -math.inf
    log_evidence: float = 0.0
    last_update_time: float = 0.0
    update_count: int = 0

    @property
    def likelihood(self) -> float:
        return math.exp(self.log_likelihood)

    @property
    def lower_partial_sum(self) -> float:
        return math.exp(self.log_lower_partial_sum)

    @property
    def evidence(self) -> float:
        return math.exp(self.log_evidence)


def initial_state(clique_id: Hashable = None) -> CliqueFilterState:
    return CliqueFilterState(clique_id=clique_id)


def update(
    state: CliqueFilterState,
    batch: DetectionBatch,
    noise: SensorNoiseModel,
    prior: SurvivalPrior,
    log_evidence_floor: float = -math.inf,
) -> CliqueFilterState:
    """Fold one batch of detections at time ``batch.time`` into ``state``.

    Suppression is the caller's business: pass only batches that survived
    :func:`suppress_batch`.
    """
    t_prev, t_new = state.last_update_time, batch.time
    if not t_new > t_prev:
        raise OrderingError(
            f"batch time {t_new} must be after last update time {t_prev}"
        )
    log_alive = log_batch_likelihood(batch.outcomes, noise, persisting=True)
    log_dead = log_batch_likelihood(batch.outcomes, noise, persisting=False)

    # vanished in [t_prev, t_new): old likelihood up to t_prev, new data is clutter
    log_l = log_dead + _logaddexp(
        state.log_lower_partial_sum,
        state.log_likelihood + log_interval_mass(prior, t_prev, t_new),
    )
    log_lik = state.log_likelihood + log_alive
    log_ev = _logaddexp(log_l, log_lik + log_survival(prior, t_new))
    if not log_ev > log_evidence_floor:
        raise DegenerateEvidenceError(
            f"clique {state.clique_id!r}: evidence {log_ev} (log) at t={t_new} "
            f"is at or below the floor {log_evidence_floor}"
        )
    return CliqueFilterState(
        clique_id=state.clique_id,
        log_likelihood=log_lik,
        log_lower_partial_sum=log_l,
        log_evidence=log_ev,
        last_update_time=t_new,
        update_count=state.update_count + 1,
    )


def posterior(state: CliqueFilterState, t: float, prior: SurvivalPrior) -> float:
    """P(T >= t | detections so far), valid for ``t >= last_update_time``."""
    if t < state.last_update_time:
        raise OrderingError(
            f"cannot query t={t} before last update at {state.last_update_time}"
        )
    log_num = state.log_likelihood + log_survival(prior, t)
    if log_num == -math.inf:
        return 0.0
    return min(1.0, math.exp(log_num - state.log_evidence))


def suppression_gate(
    distances: Sequence[float],
    n_positive: int,
    s_max: float,
    s_obs: float,
    delta: float,
) -> bool:
    """True when a clique's batch should be discarded as uninformative.

    ``distances`` covers every landmark in the clique. The clique must sit
    entirely beyond the reliable range, at least partly inside the detection
    range, and have too few positives to be trusted.
    """
    d = np.asarray(distances, dtype=float)
    if d.size == 0:
        return False
    return bool(
        np.all(d > s_obs) and np.any(d < s_max) and n_positive / d.size < delta
    )


def suppress_batch(
    clique_positions,
    sensor_position,
    batch: DetectionBatch,
    s_max: float,
    s_obs: float,
    delta: float,
) -> bool:
    pos = np.atleast_2d(np.asarray(clique_positions, dtype=float))
    if pos.shape[0] == 0:
        raise ValueError("clique_positions must be non-empty")
    if not 0 < s_obs <= s_max:
        raise ConfigError(f"need 0 < s_obs <= s_max, got {s_obs}, {s_max}")
    if not 0 < delta < 1:
        raise ConfigError(f"delta must be in (0, 1), got {delta}")
    d = np.linalg.norm(pos - np.asarray(sensor_position, dtype=float), axis=1)
    return suppression_gate(d, batch.n_positive, s_max, s_obs, delta)


class MaintenanceDecision(enum.Enum):
    KEEP = "keep"
    REJECT_NEW_MEASUREMENTS = "reject"
    REMOVE_FROM_MAP = "remove"


def check_thresholds(rho_h: float, rho_l: float) -> None:
    if not 0 <= rho_l < rho_h <= 1:
        raise ConfigError(f"need 0 <= rho_l < rho_h <= 1, got rho_l={rho_l}, rho_h={rho_h}")


def classify(posterior_value: float, rho_h: float, rho_l: float) -> MaintenanceDecision:
    check_thresholds(rho_h, rho_l)
    if posterior_value >= rho_h:
        return MaintenanceDecision.KEEP
    if posterior_value >= rho_l:
        return MaintenanceDecision.REJECT_NEW_MEASUREMENTS
    return MaintenanceDecision.REMOVE_FROM_MAP


# checkpoint records

_FIELDS = (
    "clique_id",
    "update_count",
    "last_update_time",
    "log_likelihood",
    "log_lower_partial_sum",
    "log_evidence",
)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def format_state(state: CliqueFilterState) -> str:
    """One tab-separated line; floats carry 17 significant digits."""
    return "\t".join(
        [
            str(state.clique_id),
            str(state.update_count),
            _fmt(state.last_update_time),
            _fmt(state.log_likelihood),
            _fmt(state.log_lower_partial_sum),
            _fmt(state.log_evidence),
        ]
    )


def parse_state(line: str) -> CliqueFilterState:
    parts = line.rstrip("\n").split("\t")
    if len(parts) != len(_FIELDS):
        raise ValueError(f"expected {len(_FIELDS)} fields, got {len(parts)}: {line!r}")
    cid, n, t, ll, lps, ev = parts
    return CliqueFilterState(
        clique_id=cid,
        update_count=int(n),
        last_update_time=float(t),
        log_likelihood=float(ll),
        log_lower_partial_sum=float(lps),
        log_evidence=float(ev),
    )

