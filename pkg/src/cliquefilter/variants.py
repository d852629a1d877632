"""Filter variants operating on per-step clique observations.

========  ==================================================================
IFF       one filter per landmark, constant miss rate, updated only when
          that landmark is a detection candidate
JFF       one joint filter per clique, constant miss rate, fed only the
          clique's candidate landmarks (an approximation of the joint
          feature filter: no implied negatives for unobservable members)
JCF       one joint filter per clique, constant miss rate, fed every member
          of the clique whenever any member is a candidate
JCFR      as JCF, with the miss rate degraded by range
========  ==================================================================

All variants share the false-negative suppression gate (optional) and the
sticky keep/reject/remove policy: once a clique's posterior drops below
``rho_l`` its filter is frozen and the removal time recorded.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .detection import (
    Constant,
    DetectionBatch,
    DetectionOutcome,
    RangeDegraded,
    SensorNoiseModel,
)
from .filter import (
    CliqueFilterState,
    ConfigError,
    MaintenanceDecision,
    check_thresholds,
    classify,
    initial_state,
    posterior,
    suppression_gate,
    update,
)
from .priors import SurvivalPrior
from .records import CliqueObservation


class Variant(enum.Enum):
    IFF = "IFF"
    JFF = "JFF"
    JCF = "JCF"
    JCFR = "JCFR"


@dataclass(frozen=True)
class FilterConfig:
    prior: SurvivalPrior
    p_false: float = 0.003
    p_miss: float = 0.85
    s_max: float = 2.0
    s_obs: float = 0.8
    rho_h: float = 0.75
    rho_l: float = 0.1
    delta: float = 0.03
    suppression: bool = True

    def __post_init__(self):
        check_thresholds(self.rho_h, self.rho_l)
        if not 0 < self.delta < 1:
            raise ConfigError(f"delta must be in (0, 1), got {self.delta}")
        if not 0 < self.s_obs <= self.s_max:
            raise ConfigError(f"need 0 < s_obs <= s_max, got {self.s_obs}, {self.s_max}")

    def noise(self, variant: Variant) -> SensorNoiseModel:
        if variant is Variant.JCFR:
            return SensorNoiseModel(self.p_false, RangeDegraded(self.s_max, self.s_obs))
        return SensorNoiseModel(self.p_false, Constant(self.p_miss))


@dataclass(frozen=True)
class StepResult:
    time: float
    clique_id: str
    posterior: float
    decision: MaintenanceDecision
    suppressed: bool


@dataclass
class _CliqueTrack:
    states: dict = field(default_factory=dict)
    members: tuple = ()
    removed_at: Optional[float] = None


class FilterBank:
    """Persistence filters for every clique seen by one variant."""

    def __init__(self, variant: Variant, config: FilterConfig):
        self.variant = Variant(variant)
        self.config = config
        self.noise = config.noise(self.variant)
        self._tracks: dict = {}

    # -- per-variant hooks -------------------------------------------------

    def _batches(self, obs: CliqueObservation) -> dict:
        """Map of state key -> DetectionBatch for this observation."""
        v = self.variant
        if v is Variant.IFF:
            return {
                lid: DetectionBatch(
                    obs.time, (DetectionOutcome(lid, int(d), float(s)),)
                )
                for lid, c, d, s in zip(
                    obs.landmark_ids, obs.candidate, obs.detected, obs.distance
                )
                if c
            }
        mask = obs.candidate if v is Variant.JFF else np.ones(len(obs.candidate), bool)
        outcomes = tuple(
            DetectionOutcome(lid, int(d), float(s))
            for lid, m, d, s in zip(obs.landmark_ids, mask, obs.detected, obs.distance)
            if m
        )
        return {obs.clique_id: DetectionBatch(obs.time, outcomes)}

    def _state_keys(self, track: _CliqueTrack, clique_id: str) -> tuple:
        if self.variant is Variant.IFF:
            return track.members
        return (clique_id,)

    # -- public API ----------------------------------------------------------

    def track(self, clique_id: str) -> _CliqueTrack:
        return self._tracks[clique_id]

    def state(self, key) -> CliqueFilterState:
        """Filter state for a clique id (joint variants) or landmark id (IFF)."""
        for tr in self._tracks.values():
            if key in tr.states:
                return tr.states[key]
        raise KeyError(key)

    def observe(self, obs: CliqueObservation) -> StepResult:
        tr = self._tracks.get(obs.clique_id)
        if tr is None:
            tr = _CliqueTrack(members=tuple(obs.landmark_ids))
            self._tracks[obs.clique_id] = tr
        cfg = self.config
        suppressed = False
        if tr.removed_at is None:
            suppressed = cfg.suppression and suppression_gate(
                obs.distance, obs.n_positive, cfg.s_max, cfg.s_obs, cfg.delta
            )
            if not suppressed:
                for key, batch in self._batches(obs).items():
                    st = tr.states.get(key) or initial_state(key)
                    tr.states[key] = update(st, batch, self.noise, cfg.prior)
        p = self.clique_posterior(obs.clique_id, obs.time)
        if tr.removed_at is not None:
            decision = MaintenanceDecision.REMOVE_FROM_MAP
        else:
            decision = classify(p, cfg.rho_h, cfg.rho_l)
            if decision is MaintenanceDecision.REMOVE_FROM_MAP:
                tr.removed_at = obs.time
        return StepResult(obs.time, obs.clique_id, p, decision, suppressed)

    def landmark_posterior(self, key, t: float) -> float:
        try:
            st = self.state(key)
        except KeyError:
            st = initial_state(key)
        return posterior(st, t, self.config.prior)

    def clique_posterior(self, clique_id: str, t: float) -> float:
        """Persistence belief for a clique at ``t``.

        For IFF this is the mean belief over the clique's landmarks, where a
        landmark that was never updated contributes its prior survival.
        """
        tr = self._tracks[clique_id]
        prior = self.config.prior
        keys = self._state_keys(tr, clique_id)
        vals = []
        for k in keys:
            st = tr.states.get(k) or initial_state(k)
            vals.append(posterior(st, t, prior))
        return float(np.mean(vals))

    def removal_time(self, clique_id: str) -> Optional[float]:
        tr = self._tracks.get(clique_id)
        return None if tr is None else tr.removed_at


def make_filter(variant, config: FilterConfig) -> FilterBank:
    try:
        v = Variant(variant)
    except ValueError:
        raise ConfigError(f"unknown filter variant {variant!r}") from None
    return FilterBank(v, config)
