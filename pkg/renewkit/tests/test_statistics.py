"""
Test empirical distribution functions and KS distances.
"""

from renewkit.tests import SEED
from renewkit.core.distributions import Pareto
from renewkit.core.exceptions import EmptySampleError, NonFiniteSampleError
from renewkit.core.statistics import (
    ecdf, ks_distance, dkw_epsilon, ks_summary, mean_stderr
)
import numpy as np
import pytest


def uniform_cdf(x):
    return np.clip(x, 0, 1)


def test_ecdf_evaluation():
    e = ecdf([0.3, 0.1, 0.2, 0.2])
    assert e.n == 4
    assert e(0.0) == 0.0
    assert e(0.1) == 0.25
    assert e(0.2) == 0.75
    assert e(0.25) == 0.75
    assert e(1.0) == 1.0
    assert np.array_equal(e(np.array([0.1, 0.3])), [0.25, 1.0])


def test_ecdf_errors():
    with pytest.raises(EmptySampleError):
        ecdf([])
    with pytest.raises(NonFiniteSampleError):
        ecdf([0.1, np.nan, np.inf])


def test_ks_examples():
    assert ks_distance(ecdf([0.25]), uniform_cdf) == 0.75
    for n in (1, 5, 99):
        sample = np.arange(1, n + 1) / (n + 1.0)
        assert np.isclose(ks_distance(ecdf(sample), uniform_cdf),
                          1.0 / (n + 1), rtol=1e-12)


def test_ks_permutation_invariant():
    rng = np.random.default_rng(SEED)
    x = rng.random(1000)
    assert ks_distance(ecdf(x), uniform_cdf) == ks_distance(
        ecdf(rng.permutation(x)), uniform_cdf)


def test_ks_own_step_cdf_is_zero():
    rng = np.random.default_rng(SEED)
    for x in (rng.random(100), rng.integers(0, 5, 100).astype(float),
              [1.0, 1.0, 1.0]):
        e = ecdf(x)
        assert ks_distance(e, e) == 0.0


def test_ks_ties():
    # jump of 1 at 0.5 against the uniform CDF
    assert ks_distance(ecdf([0.5, 0.5]), uniform_cdf) == 0.5


def test_ks_probability_integral_transform():
    rng = np.random.default_rng(SEED)
    law = Pareto(0.5, 1)
    x = law.sample(rng, 2000)
    direct = ks_distance(ecdf(x), law.cdf)
    transformed = ks_distance(ecdf(law.cdf(x)), uniform_cdf)
    assert abs(direct - transformed) <= 1e-12


def test_dkw_epsilon():
    assert np.isclose(dkw_epsilon(100000, 0.001), np.sqrt(np.log(2000) / 2e5),
                      rtol=1e-14)
    assert np.isclose(dkw_epsilon(100000, 0.001), 0.00617, atol=1e-5)
    assert np.isclose(dkw_epsilon(100000, 0.05), np.sqrt(np.log(40) / 2e5),
                      rtol=1e-14)
    with pytest.raises(ValueError):
        dkw_epsilon(0, 0.05)
    with pytest.raises(ValueError):
        dkw_epsilon(10, 1.0)


def test_ks_summary():
    rng = np.random.default_rng(SEED)
    summary = ks_summary(ecdf(rng.random(100000)), uniform_cdf, 0.001)
    assert set(summary) == {'n', 'ks', 'delta', 'dkw_epsilon', 'threshold',
                            'pass'}
    assert summary['n'] == 100000
    assert summary['threshold'] == summary['dkw_epsilon']
    assert summary['pass']
    summary = ks_summary(ecdf([0.25]), uniform_cdf, 0.05, threshold=0.5)
    assert not summary['pass']


def test_mean_stderr():
    m, se = mean_stderr([1.0, 2.0, 3.0])
    assert m == 2.0
    assert np.isclose(se, 1.0 / np.sqrt(3))
    assert mean_stderr([5.0]) == (5.0, 0.0)
