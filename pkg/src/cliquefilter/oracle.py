"""Direct (non-recursive) evaluation of the clique persistence posterior.

For a history observed at ``t_1 < ... < t_N`` the detection likelihood is
piecewise constant in the survival time ``T``: on ``[t_i, t_{i+1})`` the
first ``i`` batches were taken while the clique existed and the rest were
clutter. The evidence is therefore a finite sum of per-interval likelihoods
weighted by prior mass, which this module evaluates term by term in plain
linear arithmetic. It exists to check :mod:`cliquefilter.filter` and is
deliberately written without reusing the filter's helpers.
"""

from __future__ import annotations

from math import exp
from typing import Sequence

from .detection import Constant, DetectionBatch, SensorNoiseModel
from .priors import SurvivalPrior


def _bernoulli(p_success: float, hit: int) -> float:
    return p_success if hit else 1.0 - p_success


def _batch_prob(batch: DetectionBatch, noise: SensorNoiseModel, alive: bool) -> float:
    prob = 1.0
    for o in batch.outcomes:
        if alive:
            miss = noise.miss_model
            if isinstance(miss, Constant):
                p_hit = 1.0 - miss.p_miss
            else:
                p_hit = exp(-o.distance * miss.s_max / miss.s_obs)
            prob *= _bernoulli(p_hit, o.detected)
        else:
            prob *= _bernoulli(noise.p_false, o.detected)
    return prob


def interval_terms(
    history: Sequence[DetectionBatch], noise: SensorNoiseModel, prior: SurvivalPrior
) -> list:
    """``[(likelihood_i, prior_mass_i)]`` for the intervals ``[t_i, t_{i+1})``, i = 0..N."""
    times = [0.0] + [b.time for b in history]
    alive = [_batch_prob(b, noise, True) for b in history]
    dead = [_batch_prob(b, noise, False) for b in history]
    terms = []
    for i in range(len(history) + 1):
        lik = 1.0
        for a in alive[:i]:
            lik *= a
        for d in dead[i:]:
            lik *= d
        lo = prior.cdf(times[i])
        hi = prior.cdf(times[i + 1]) if i < len(history) else 1.0
        terms.append((lik, hi - lo))
    return terms


def evidence_oracle(
    history: Sequence[DetectionBatch],
    noise: SensorNoiseModel,
    prior: SurvivalPrior,
    t_query: float,
) -> float:
    """P(T >= t_query | history) for ``t_query`` at or after the last batch."""
    times = [b.time for b in history]
    if any(b <= a for a, b in zip(times, times[1:])):
        raise ValueError("history times must be strictly increasing")
    terms = interval_terms(history, noise, prior)
    evidence = sum(lik * mass for lik, mass in terms)
    lik_alive = terms[-1][0]
    return lik_alive * (1.0 - prior.cdf(t_query)) / evidence
