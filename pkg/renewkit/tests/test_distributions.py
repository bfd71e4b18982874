"""
Test inter-arrival laws.
"""

from renewkit.tests import logging, SEED
from renewkit.core import distributions
from renewkit.core.distributions import (
    Pareto, ParetoLog, Exponential, LAWS, parse_law, survival,
    quantile_survival, sample, mean, open_uniform
)
from renewkit.core.exceptions import (
    DuplicateRegItemError, LawParameterError, LawSyntaxError,
    QuantileDomainError
)
import numpy as np
import pickle
import pytest

LOGGER = logging.getLogger(__name__)
LAWS_UNDER_TEST = [Pareto(0.5, 1), Pareto(1.5, 2), ParetoLog(0.5, 3, 0.5),
                   ParetoLog(0.5, 3, -1), ParetoLog(0.3, 10, 0.1),
                   Exponential(1), Exponential(0.25)]


def test_survival_examples():
    assert survival(Pareto(0.5, 1), 4) == 0.5
    assert survival(Pareto(0.5, 1), 0.5) == 1.0
    assert np.isclose(survival(Exponential(1), np.log(2)), 0.5, rtol=1e-15)
    for law in LAWS_UNDER_TEST:
        assert survival(law, 0) == 1.0
        assert survival(law, np.inf) == 0.0
        assert isinstance(survival(law, 1.0), float)


def test_survival_vectorized():
    law = Pareto(0.5, 1)
    t = np.array([0.0, 0.5, 1.0, 4.0, 100.0])
    s = survival(law, t)
    assert s.shape == t.shape
    assert np.allclose(s, [1.0, 1.0, 1.0, 0.5, 0.1], rtol=1e-15)
    assert np.allclose(law.cdf(t), 1.0 - s)


def test_quantile_examples():
    assert quantile_survival(Pareto(0.5, 1), 0.25) == 16.0
    assert quantile_survival(Exponential(1), 1) == 0.0
    assert quantile_survival(Pareto(2, 3), 1) == 3.0
    law = ParetoLog(0.5, 3, 0.5)
    t = quantile_survival(law, survival(law, 9.0))
    LOGGER.debug('ParetoLog round trip at 9: %.17g', t)
    assert abs(t - 9.0) / 9.0 <= 1e-10
    assert quantile_survival(law, 1.0) == 3.0


@pytest.mark.parametrize('law', LAWS_UNDER_TEST, ids=str)
def test_quantile_round_trip(law):
    u = np.geomspace(1e-6, 1, 61)
    t = quantile_survival(law, u)
    assert np.all(np.diff(t) < 0)
    assert np.allclose(survival(law, t), u, rtol=1e-9, atol=0)


@pytest.mark.parametrize('u', [0.0, -0.1, 1.5, np.nan])
def test_quantile_domain(u):
    with pytest.raises(QuantileDomainError):
        quantile_survival(Pareto(0.5, 1), u)
    with pytest.raises(QuantileDomainError):
        quantile_survival(ParetoLog(0.5, 3, 0.5), np.array([0.5, u]))


@pytest.mark.parametrize('law', LAWS_UNDER_TEST[:5], ids=str)
def test_survival_strictly_decreasing(law):
    t = np.geomspace(law.xm, 1e9, 200)
    assert np.all(np.diff(survival(law, t)) < 0)


def test_log_log_slope():
    t0, t1 = 1e6, 1e9

    def slope(law):
        s0, s1 = survival(law, t0), survival(law, t1)
        return (np.log(s1) - np.log(s0)) / (np.log(t1) - np.log(t0))

    assert np.isclose(slope(Pareto(0.5, 1)), -0.5, rtol=1e-12)
    assert np.isclose(slope(Pareto(0.3, 7)), -0.3, rtol=1e-12)
    assert abs(slope(ParetoLog(0.5, 3, 0.1)) / -0.5 - 1) <= 0.02


def test_paretolog_validation():
    # density would be negative near xm, survival above 1
    with pytest.raises(LawParameterError):
        ParetoLog(0.5, 3, 1)
    with pytest.raises(LawParameterError):
        ParetoLog(0.5, 2, 0.1)
    with pytest.raises(LawParameterError):
        ParetoLog(0, 3, 0.1)
    ParetoLog(1.5, 3, 1)


def test_law_validation():
    with pytest.raises(LawParameterError):
        Pareto(-0.5, 1)
    with pytest.raises(LawParameterError):
        Pareto(0.5, 0)
    with pytest.raises(LawParameterError):
        Pareto(np.nan, 1)
    with pytest.raises(LawParameterError):
        Exponential(0)
    with pytest.raises(LawParameterError):
        Exponential(1, 2)


def test_sample_forced_uniform(monkeypatch):
    monkeypatch.setattr(distributions, 'open_uniform',
                        lambda rng, size=None: 0.25)
    rng = np.random.default_rng(SEED)
    assert sample(Pareto(0.5, 1), rng) == 16.0
    assert np.isclose(sample(Exponential(1), rng), np.log(4), rtol=1e-15)


def test_sample_statistics():
    rng = np.random.default_rng(SEED)
    x = sample(Pareto(0.5, 1), rng, 100000)
    assert x.shape == (100000, )
    assert np.all(x >= 1)
    assert abs(np.mean(x > 4) - 0.5) <= 0.005
    x = sample(Exponential(1), rng, 100000)
    assert abs(x.mean() - 1) <= 0.01


def test_open_uniform():
    rng = np.random.default_rng(SEED)
    u = open_uniform(rng, 100000)
    assert np.all(u > 0) and np.all(u < 1)
    assert 0 < open_uniform(rng) < 1


def test_mean():
    assert mean(Pareto(0.5, 1)) == np.inf
    assert mean(Pareto(1, 1)) == np.inf
    assert mean(Pareto(2, 1)) == 2.0
    assert mean(Exponential(2)) == 0.5
    assert mean(ParetoLog(0.5, 3, 0.5)) == np.inf
    assert mean(ParetoLog(1, 3, -1)) == np.inf
    # no logarithmic factor, same as Pareto
    assert np.isclose(mean(ParetoLog(2, 3, 0)), 6.0, rtol=1e-9)
    law = ParetoLog(1, 3, -2)
    assert law.is_finite_mean
    assert np.isfinite(mean(law)) and mean(law) > 3
    law = ParetoLog(2, 3, 0.5)
    tail = np.trapz(survival(law, np.geomspace(3, 1e8, 200001)),
                    np.geomspace(3, 1e8, 200001))
    assert np.isclose(mean(law), 3 + tail, rtol=1e-4)


def test_parse_law():
    assert parse_law('pareto(0.5,1)') == Pareto(0.5, 1)
    assert parse_law(' ParetoLog( 0.5 , 3 , -1 ) ') == ParetoLog(0.5, 3, -1)
    assert parse_law('exp(1e0)') == Exponential(1)
    assert parse_law('pareto(0.1,1)').alpha == 0.1
    for law in LAWS_UNDER_TEST:
        assert parse_law(str(law)) == law
    assert parse_law(Pareto(0.5, 1)) == Pareto(0.5, 1)


@pytest.mark.parametrize('text', ['gamma(1)', 'pareto(0.5)', 'pareto(0.5,x)',
                                  'pareto 0.5,1', 'exp()', 'exp(1,,)'])
def test_parse_law_syntax_error(text):
    with pytest.raises(LawSyntaxError):
        parse_law(text)


def test_parse_law_parameter_error():
    with pytest.raises(LawParameterError):
        parse_law('pareto(-1,1)')
    with pytest.raises(LawParameterError):
        parse_law('paretolog(0.5,3,1)')


def test_law_immutable_and_picklable():
    law = ParetoLog(0.5, 3, 0.5)
    with pytest.raises(AttributeError):
        law.alpha = 0.7
    with pytest.raises(AttributeError):
        law.foo = 1
    copy = pickle.loads(pickle.dumps(law))
    assert copy == law and hash(copy) == hash(law)
    assert copy is not law
    assert law != ParetoLog(0.5, 3, 0.4)
    assert {Pareto(0.5, 1), Pareto(0.5, 1.0)} == {Pareto(0.5, 1)}


def test_law_properties():
    assert Pareto(0.5, 1).tail_index == 0.5
    assert Exponential(1).tail_index is None
    assert not Pareto(0.5, 1).is_finite_mean
    assert Pareto(1.5, 1).is_finite_mean
    assert Exponential(3).params == (3.0, )


def test_law_registry():
    assert set(LAWS) == {'pareto', 'paretolog', 'exp'}
    assert LAWS.arity == {'pareto': 2, 'paretolog': 3, 'exp': 1}
    with pytest.raises(DuplicateRegItemError):
        LAWS.register({'pareto': Pareto})
