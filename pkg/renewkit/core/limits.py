# -*- coding: utf-8 -*-
"""
Limit laws of the age, residual life and cycle straddling a large time, and
the constants of the renewal asymptotics.

In the infinite-mean regime with tail index alpha in (0, 1), the age over the
straddling cycle converges to ``U**(1/alpha)``, whose CDF is ``x**alpha``, and
``(A(t)/t, B(t)/t)`` converge to the Dynkin-Lamperti pair with density
:func:`dl_joint_density`. With a finite mean the ratio is uniform, the cycle
is size-biased and the age follows the equilibrium law.
"""

from renewkit.core import logging
from renewkit.core.distributions import Pareto, ParetoLog, Exponential
from renewkit.core.exceptions import (
    AlphaRangeError, LimitDomainError, QuadratureError, RegimeError
)
from scipy.integrate import quad
from scipy.special import betainc
import numpy as np
import functools

LOGGER = logging.getLogger(__name__)
BETA_EPSREL = 1e-12
#: largest accepted relative disagreement between quadrature and closed form
BETA_REFLECTION_TOL = 1e-10
QUAD_EPSREL = 1e-10
QUAD_EPSABS = 1e-12
INFINITE_MEAN = 'infinite-mean regime'


def _check_alpha(alpha):
    if not 0 < alpha < 1:
        raise AlphaRangeError(alpha)


def _check_unit(name, x, closed=True):
    x = np.asarray(x, dtype=float)
    if closed:
        bad = ~((x >= 0) & (x <= 1))
        domain = '[0,1]'
    else:
        bad = ~((x > 0) & (x < 1))
        domain = '(0,1)'
    if np.any(bad):
        raise LimitDomainError(name, x[bad].flat[0], domain)
    return x


def _output(out, scalar):
    return float(out) if scalar else out


def ratio_limit_cdf(alpha, x):
    """
    CDF of ``U**(1/alpha)``, ``clip(x, 0, 1)**alpha``. Total in ``x``.
    """
    scalar = np.ndim(x) == 0
    return _output(np.clip(np.asarray(x, dtype=float), 0, 1) ** alpha, scalar)


def beta_integral(alpha):
    """
    Integral of ``(1-r)**(-alpha) * r**(alpha-1)`` over (0, 1).

    Uses the QUADPACK algebraic endpoint weight so both endpoint
    singularities are integrated exactly, then checks the result against the
    reflection formula ``pi/sin(pi*alpha)``.

    :param alpha: tail index in (0, 1)
    :raises:
        :exc:`~renewkit.core.exceptions.AlphaRangeError`,
        :exc:`~renewkit.core.exceptions.QuadratureError`
    """
    _check_alpha(alpha)
    val, err = quad(lambda r: 1.0, 0.0, 1.0, weight='alg',
                    wvar=(alpha - 1.0, -alpha), epsabs=0.0,
                    epsrel=BETA_EPSREL)
    closed = np.pi / np.sin(np.pi * alpha)
    rel_err = abs(val - closed) / closed
    LOGGER.debug('beta integral alpha=%g: %.17g (error estimate %g)',
                 alpha, val, err)
    if rel_err > BETA_REFLECTION_TOL:
        raise QuadratureError('beta integral', val, closed, rel_err)
    return val


def erickson_constant(alpha):
    """
    Constant ``c*`` of the renewal function asymptotics
    ``u(t) ~ c*/survival(t)``, equal to ``sin(pi*alpha)/(pi*alpha)``.
    """
    return 1.0 / (alpha * beta_integral(alpha))


def dl_age_cdf(alpha, x):
    """
    CDF of the limit of ``A(t)/t``, the Beta(1-alpha, alpha) law.

    :param alpha: tail index in (0, 1)
    :param x: values in [0, 1]
    """
    _check_alpha(alpha)
    scalar = np.ndim(x) == 0
    x = _check_unit('x', x)
    return _output(betainc(1.0 - alpha, alpha, x), scalar)


def dl_age_density(alpha, x):
    _check_alpha(alpha)
    scalar = np.ndim(x) == 0
    x = _check_unit('x', x, closed=False)
    out = (np.sin(np.pi * alpha) / np.pi *
           x ** -alpha * (1.0 - x) ** (alpha - 1.0))
    return _output(out, scalar)


def dl_joint_density(alpha, u, v):
    """
    Joint density of the limit of ``(A(t)/t, B(t)/t)`` on (0,1) x (0,inf),
    zero elsewhere.
    """
    _check_alpha(alpha)
    scalar = np.ndim(u) == 0 and np.ndim(v) == 0
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float),
                               np.asarray(v, dtype=float))
    out = np.zeros(u.shape)
    inside = (u > 0) & (u < 1) & (v > 0)
    ui, vi = u[inside], v[inside]
    out[inside] = (alpha * np.sin(np.pi * alpha) / np.pi *
                   (1.0 - ui) ** (alpha - 1.0) * (ui + vi) ** (-alpha - 1.0))
    return _output(out, scalar)


def dl_age_marginal(alpha, u):
    """
    Integrates :func:`dl_joint_density` over ``v`` at one ``u`` in (0, 1).
    """
    _check_alpha(alpha)
    _check_unit('u', u, closed=False)
    const = (alpha * np.sin(np.pi * alpha) / np.pi *
             (1.0 - u) ** (alpha - 1.0))
    # u + v = u*exp(s), so (u+v)**(-alpha-1) dv = u**(-alpha)*exp(-alpha*s) ds
    val, err = quad(lambda s: np.exp(-alpha * (s + np.log(u))),
                    0.0, np.inf, epsabs=0.0, epsrel=QUAD_EPSREL, limit=200)
    return const * val


def _ratio_inner(alpha, v, x):
    # joint density integrated over u in (0, min(1, v*x/(1-x))), without
    # the constant factor
    top = v * x / (1.0 - x)
    if top >= 1.0:
        # the weight takes (1-u)**(alpha-1)
        val, err = quad(lambda u: (u + v) ** (-alpha - 1.0), 0.0, 1.0,
                        weight='alg', wvar=(0.0, alpha - 1.0), epsabs=0.0,
                        epsrel=QUAD_EPSREL)
    else:
        val, err = quad(
            lambda u: (1.0 - u) ** (alpha - 1.0) * (u + v) ** (-alpha - 1.0),
            0.0, top, epsabs=0.0, epsrel=QUAD_EPSREL
        )
    return val


def ratio_cdf_from_dl(alpha, x):
    """
    ``P(A/(A+B) <= x)`` for the limit pair, by nested quadrature of the joint
    density over ``{u/(u+v) <= x}``, which is ``{u <= v*x/(1-x)}``. Equals
    ``x**alpha``.

    The outer integral over ``v`` is split where the inner range reaches 1.
    The finite part has an integrable ``v**(-alpha)`` singularity at 0.

    :param alpha: tail index in (0, 1)
    :param x: level in (0, 1)
    """
    _check_alpha(alpha)
    _check_unit('x', x, closed=False)
    const = alpha * np.sin(np.pi * alpha) / np.pi
    v0 = (1.0 - x) / x
    inner = functools.partial(_ratio_inner, alpha, x=x)
    head, head_err = quad(inner, 0.0, v0, epsabs=QUAD_EPSABS,
                          epsrel=QUAD_EPSREL, limit=200)
    tail, tail_err = quad(inner, v0, np.inf, epsabs=QUAD_EPSABS,
                          epsrel=QUAD_EPSREL, limit=200)
    val = const * (head + tail)
    LOGGER.debug('DL ratio CDF alpha=%g x=%g: %.12g (error estimate %g)',
                 alpha, x, val, const * (head_err + tail_err))
    return val


def _dl_residual_cdf(alpha, y):
    if np.isinf(y):
        return 1.0
    if y == 0:
        return 0.0
    val, err = quad(lambda u: (u + y) ** -alpha, 0.0, 1.0, weight='alg',
                    wvar=(0.0, alpha - 1.0), epsabs=QUAD_EPSABS,
                    epsrel=QUAD_EPSREL)
    return 1.0 - np.sin(np.pi * alpha) / np.pi * val


def dl_residual_cdf(alpha, y):
    """
    CDF of the limit of ``B(t)/t``, with density
    ``sin(pi*alpha)/pi * y**(-alpha)/(1+y)``.

    :param alpha: tail index in (0, 1)
    :param y: non-negative values
    """
    _check_alpha(alpha)
    scalar = np.ndim(y) == 0
    y = np.asarray(y, dtype=float)
    bad = ~(y >= 0)
    if np.any(bad):
        raise LimitDomainError('y', y[bad].flat[0], '[0,inf)')
    out = np.vectorize(_dl_residual_cdf, otypes=[float])(alpha, y)
    return _output(out, scalar)


def dl_residual_density(alpha, y):
    _check_alpha(alpha)
    return np.sin(np.pi * alpha) / np.pi * y ** -alpha / (1.0 + y)


def _integrated_survival(law, x):
    """
    Integral of the survival function of ``law`` over [0, x] for scalar x.
    """
    x = max(float(x), 0.0)
    if isinstance(law, Exponential):
        return -np.expm1(-law.rate * x) / law.rate
    if isinstance(law, (Pareto, ParetoLog)) and x <= law.xm:
        return x
    if isinstance(law, Pareto):
        alpha, xm = law.alpha, law.xm
        if alpha == 1:
            return xm + xm * np.log(x / xm)
        return xm + xm * (1.0 - (xm / x) ** (alpha - 1.0)) / (alpha - 1.0)
    if isinstance(law, ParetoLog):
        alpha, beta, xm = law.alpha, law.beta, law.xm
        y0 = np.log(xm)
        # t = xm*exp(s)
        val, err = quad(
            lambda s: xm * np.exp((1.0 - alpha) * s + beta * np.log1p(s / y0)),
            0.0, np.log(x / xm), epsabs=0.0, epsrel=QUAD_EPSREL, limit=200
        )
        return xm + val
    # any other law, plain adaptive quadrature
    val, err = quad(law.survival, 0.0, x, epsrel=QUAD_EPSREL, limit=200)
    return val


def _check_finite_mean(law):
    mu = law.mean()
    if not np.isfinite(mu):
        raise RegimeError(law, INFINITE_MEAN)
    return mu


def _sizebiased_cycle_cdf(law, mu, x):
    if x <= 0:
        return 0.0
    if np.isinf(x):
        return 1.0
    if isinstance(law, Exponential):
        lx = law.rate * x
        return -np.expm1(-lx) - lx * np.exp(-lx)
    if isinstance(law, Pareto):
        if x < law.xm:
            return 0.0
        return 1.0 - (law.xm / x) ** (law.alpha - 1.0)
    # integration by parts, int_0^x s dF(s) = int_0^x S - x*S(x)
    return (_integrated_survival(law, x) - x * law.survival(x)) / mu


def sizebiased_cycle_cdf(law, x):
    """
    CDF of the size-biased law ``x dF(x) / E[X]``, the limit law of the
    straddling cycle with a finite mean.

    :param law: inter-arrival law with finite mean
    :param x: values
    :raises: :exc:`~renewkit.core.exceptions.RegimeError`
    """
    mu = _check_finite_mean(law)
    scalar = np.ndim(x) == 0
    out = np.vectorize(
        functools.partial(_sizebiased_cycle_cdf, law, mu), otypes=[float]
    )(np.asarray(x, dtype=float))
    return _output(out, scalar)


def _equilibrium_age_cdf(law, mu, x):
    if x <= 0:
        return 0.0
    if np.isinf(x):
        return 1.0
    return min(_integrated_survival(law, x) / mu, 1.0)


def equilibrium_age_cdf(law, x):
    """
    CDF of the equilibrium law ``survival(x) dx / E[X]``, the limit law of the
    age with a finite mean.

    :raises: :exc:`~renewkit.core.exceptions.RegimeError`
    """
    mu = _check_finite_mean(law)
    scalar = np.ndim(x) == 0
    out = np.vectorize(
        functools.partial(_equilibrium_age_cdf, law, mu), otypes=[float]
    )(np.asarray(x, dtype=float))
    return _output(out, scalar)


class LimitLaw(object):
    """
    A limit law with a vectorized CDF on ``support``.
    """
    support = (0.0, np.inf)

    def cdf(self, x):
        raise NotImplementedError

    def __call__(self, x):
        return self.cdf(x)

    def __repr__(self):
        return '<%s>' % self.__class__.__name__


class RatioPower(LimitLaw):
    """
    Law of ``U**(1/alpha)``, the limit of the age over the straddling cycle.
    """
    support = (0.0, 1.0)

    def __init__(self, alpha):
        self.alpha = alpha

    def cdf(self, x):
        return ratio_limit_cdf(self.alpha, x)

    def __repr__(self):
        return '<%s(alpha=%r)>' % (self.__class__.__name__, self.alpha)


class Uniform01(RatioPower):
    """
    Uniform law on [0, 1], the ratio limit with a finite mean.
    """
    def __init__(self):
        super(Uniform01, self).__init__(1.0)


class DLAge(LimitLaw):
    support = (0.0, 1.0)

    def __init__(self, alpha):
        _check_alpha(alpha)
        self.alpha = alpha

    def cdf(self, x):
        scalar = np.ndim(x) == 0
        return _output(
            betainc(1.0 - self.alpha, self.alpha,
                    np.clip(np.asarray(x, dtype=float), 0, 1)), scalar
        )


class DLResidual(LimitLaw):
    def __init__(self, alpha):
        _check_alpha(alpha)
        self.alpha = alpha

    def cdf(self, x):
        scalar = np.ndim(x) == 0
        return _output(dl_residual_cdf(
            self.alpha, np.maximum(np.asarray(x, dtype=float), 0)), scalar)


class SizeBiasedCycle(LimitLaw):
    def __init__(self, law):
        _check_finite_mean(law)
        self.law = law

    def cdf(self, x):
        return sizebiased_cycle_cdf(self.law, x)


class EquilibriumAge(LimitLaw):
    def __init__(self, law):
        _check_finite_mean(law)
        self.law = law

    def cdf(self, x):
        return equilibrium_age_cdf(self.law, x)


def limit_law_for(law):
    """
    Limit law of the age over the straddling cycle for ``law``.

    :raises: :exc:`~renewkit.core.exceptions.AlphaRangeError` for an
        infinite mean with tail index not in (0, 1)
    """
    if law.is_finite_mean:
        return Uniform01()
    _check_alpha(law.tail_index)
    return RatioPower(law.tail_index)
