import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cliquefilter.priors import (
    Exponential,
    PiecewiseLinearCDF,
    PriorError,
    default_prior,
    log_interval_mass,
    log_survival,
    survival_cdf,
    survival_density,
)

EXP = Exponential(0.01)
LIN = PiecewiseLinearCDF([(0, 0), (100, 1)])
STEP = PiecewiseLinearCDF([(0, 0), (50, 0.2), (80, 0.9), (200, 1.0)])


def test_cdf_examples():
    assert survival_cdf(EXP, 0) == 0.0
    assert survival_cdf(EXP, 100) == pytest.approx(0.6321205588285577, rel=1e-12)
    assert survival_cdf(LIN, 50) == 0.5


def test_density_examples():
    assert survival_density(EXP, 0) == pytest.approx(0.01)
    assert survival_density(EXP, math.inf) == 0.0
    assert survival_density(EXP, 1e5) < 1e-300
    assert survival_density(LIN, 50) == pytest.approx(0.01)


@pytest.mark.parametrize("prior", [EXP, LIN])
def test_negative_time_rejected(prior):
    with pytest.raises(PriorError):
        survival_cdf(prior, -1.0)
    with pytest.raises(PriorError):
        survival_density(prior, -1.0)


@pytest.mark.parametrize(
    "knots",
    [
        [(0, 0)],
        [(1, 0), (2, 1)],
        [(0, 0), (10, 0.5), (5, 1)],
        [(0, 0), (10, 0.6), (20, 0.5), (30, 1)],
        [(0, 0), (10, 0.9)],
    ],
)
def test_bad_knots(knots):
    with pytest.raises(PriorError):
        PiecewiseLinearCDF(knots)


def test_bad_rate():
    with pytest.raises(PriorError):
        Exponential(0.0)


@pytest.mark.parametrize("prior", [EXP, LIN, STEP])
@given(a=st.floats(0, 1e4), b=st.floats(0, 1e4))
def test_cdf_monotone(prior, a, b):
    a, b = sorted((a, b))
    assert 0 <= survival_cdf(prior, a) <= survival_cdf(prior, b) <= 1


@pytest.mark.parametrize("prior, t_big", [(EXP, 2000.0), (LIN, 200.0), (STEP, 400.0)])
def test_density_integrates_to_cdf(prior, t_big):
    t = np.linspace(0, t_big, 100_001)
    dens = np.array([survival_density(prior, x) for x in t])
    assert np.trapezoid(dens, t) == pytest.approx(survival_cdf(prior, t_big), abs=1e-6)


def test_log_survival_tail_precision():
    # 1 - F(t) is e^-50 here; the naive complement would be exactly 0.
    assert log_survival(Exponential(0.5), 100.0) == pytest.approx(-50.0)


@pytest.mark.parametrize("prior", [EXP, STEP])
@given(a=st.floats(0, 150), width=st.floats(1e-3, 50))
def test_interval_mass_matches_cdf_difference(prior, a, width):
    b = a + width
    expected = survival_cdf(prior, b) - survival_cdf(prior, a)
    got = log_interval_mass(prior, a, b)
    if expected == 0:
        assert got == -math.inf
    else:
        assert math.exp(got) == pytest.approx(expected, rel=1e-9, abs=1e-15)


def test_default_prior_median():
    p = default_prior(400.0)
    assert survival_cdf(p, 200.0) == pytest.approx(0.5)
