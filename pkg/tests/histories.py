"""Random detection histories shared by the filter and acceptance tests."""

import numpy as np

from cliquefilter.detection import (
    Constant,
    DetectionBatch,
    DetectionOutcome,
    RangeDegraded,
    SensorNoiseModel,
)
from cliquefilter.filter import initial_state, update
from cliquefilter.priors import Exponential, PiecewiseLinearCDF


def random_prior(rng, kind=None):
    kind = kind or rng.choice(["exponential", "piecewise"])
    if kind == "exponential":
        return Exponential(rng.uniform(0.01, 0.2))
    n = rng.integers(1, 5)
    times = np.cumsum(rng.uniform(2, 15, size=n + 1))
    probs = np.sort(rng.uniform(0, 1, size=n))
    return PiecewiseLinearCDF([(0, 0)] + list(zip(times[:-1], probs)) + [(times[-1] + 40, 1.0)])


def random_noise(rng, range_degraded=None):
    if range_degraded is None:
        range_degraded = rng.random() < 0.3
    p_false = rng.uniform(0, 0.3)
    if range_degraded:
        s_max = rng.uniform(1, 4)
        return SensorNoiseModel(p_false, RangeDegraded(s_max, rng.uniform(0.3, 1) * s_max))
    return SensorNoiseModel(p_false, Constant(rng.uniform(0, 0.5)))


def random_history(rng, clique_size=None, n_steps=None, t_max=12.0):
    k = clique_size or int(rng.integers(1, 5))
    n = n_steps if n_steps is not None else int(rng.integers(0, 21))
    times = np.sort(rng.choice(np.arange(1, 400), size=n, replace=False)) * (t_max / 400)
    ids = [f"l{i}" for i in range(k)]
    history = []
    for t in times:
        outcomes = tuple(
            DetectionOutcome(lid, int(rng.random() < 0.6), float(rng.uniform(0, 3)))
            for lid in ids
        )
        history.append(DetectionBatch(float(t), outcomes))
    return history


def run(history, noise, prior, clique_id="c"):
    state = initial_state(clique_id)
    states = [state]
    for batch in history:
        state = update(state, batch, noise, prior)
        states.append(state)
    return states
