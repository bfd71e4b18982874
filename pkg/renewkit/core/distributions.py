# -*- coding: utf-8 -*-
"""
This is the distributions module. It has the inter-arrival laws of a renewal
process: closed-form survival functions, their inverses, inverse-transform
sampling and means. Laws are immutable and picklable so they can be sent to
worker processes, and they can be written as strings such as
``"pareto(0.5,1)"`` and read back with :func:`parse_law`.
"""

from renewkit.core import logging, Registry
from renewkit.core.exceptions import (
    LawParameterError, LawSyntaxError, QuantileDomainError
)
from scipy.integrate import quad
from decimal import Decimal, InvalidOperation
import numpy as np
import re

LOGGER = logging.getLogger(__name__)
#: decimal float pattern for law parameters
EFG_PATTERN = '([-+]?(?:\\d+(?:\\.\\d*)?|\\.\\d+)(?:[eE][-+]?\\d+)?)'
LAW_PATTERN = re.compile(r'^\s*([A-Za-z_]+)\s*\((.*)\)\s*$')
#: bisection stops when the bracket in log time is narrower than this
BISECT_TOL = 1e-6
#: Newton stops when the log time step is at most this
NEWTON_TOL = 1e-12
MAX_NEWTON = 100
#: relative tolerance of the log-space mean quadrature
MEAN_EPSREL = 1e-10


def open_uniform(rng, size=None):
    """
    Uniform draws on the open interval (0, 1), never 0 nor 1.

    Uses 53 random bits shifted by half a unit in the last place.

    :param rng: random generator
    :type rng: :class:`numpy.random.Generator`
    :param size: output shape, ``None`` for a scalar
    :return: uniforms in (0, 1)
    """
    bits = rng.integers(0, 2 ** 53, size=size, dtype=np.uint64)
    return (bits + 0.5) * 2.0 ** -53


def _output(out, scalar):
    return float(out) if scalar else out


def _check_params(name, params):
    if not all(np.isfinite(p) for p in params):
        raise LawParameterError(name, 'parameters must be finite')


class InterArrivalLaw(object):
    """
    Base class for inter-arrival laws on [0, inf).

    Subclasses set ``name`` and ``param_names``, validate their parameters in
    :meth:`_validate` and implement :meth:`_survival`,
    :meth:`_quantile_survival` and :meth:`mean`.
    """
    name = NotImplemented
    param_names = ()

    def __init__(self, *params):
        if len(params) != len(self.param_names):
            raise LawParameterError(
                self.name, 'expected %d parameters, got %d' % (
                    len(self.param_names), len(params))
            )
        try:
            params = tuple(float(p) for p in params)
        except (TypeError, ValueError):
            raise LawParameterError(self.name, 'parameters must be numbers')
        _check_params(self.name, params)
        self._validate(*params)
        object.__setattr__(self, '_params', params)

    def _validate(self, *params):
        raise NotImplementedError

    def __setattr__(self, key, value):
        raise AttributeError('%s is immutable' % self.__class__.__name__)

    def __delattr__(self, key):
        raise AttributeError('%s is immutable' % self.__class__.__name__)

    def __reduce__(self):
        return self.__class__, self._params

    def __eq__(self, other):
        if not isinstance(other, InterArrivalLaw):
            return NotImplemented
        return (self.name, self._params) == (other.name, other._params)

    def __hash__(self):
        return hash((self.name, self._params))

    def __str__(self):
        return '%s(%s)' % (self.name, ','.join(repr(p) for p in self._params))

    def __repr__(self):
        return '<%s(%s)>' % (self.__class__.__name__, ', '.join(
            '%s=%r' % kv for kv in zip(self.param_names, self._params)))

    @property
    def params(self):
        """
        Parameters in the order of ``param_names``.
        """
        return self._params

    @property
    def tail_index(self):
        """
        Index of regular variation of the tail, ``None`` if light tailed.
        """
        return None

    @property
    def is_finite_mean(self):
        return True

    def survival(self, t):
        """
        Survival function, P(X > t).

        :param t: times, scalar or array
        :return: survival, float for scalar input
        """
        scalar = np.ndim(t) == 0
        t = np.asarray(t, dtype=float)
        return _output(self._survival(t), scalar)

    def cdf(self, t):
        scalar = np.ndim(t) == 0
        t = np.asarray(t, dtype=float)
        return _output(1.0 - self._survival(t), scalar)

    def quantile_survival(self, u):
        """
        Inverse of the survival function, the time t with survival(t) = u.

        :param u: survival levels in (0, 1]
        :return: times, float for scalar input
        :raises: :exc:`~renewkit.core.exceptions.QuantileDomainError`
        """
        scalar = np.ndim(u) == 0
        u = np.asarray(u, dtype=float)
        bad = ~((u > 0) & (u <= 1))
        if np.any(bad):
            raise QuantileDomainError(u[bad].flat[0])
        return _output(self._quantile_survival(u), scalar)

    def sample(self, rng, size=None):
        """
        Inverse-transform samples.

        :param rng: random generator
        :type rng: :class:`numpy.random.Generator`
        :param size: number or shape of samples, ``None`` for one float
        """
        return self.quantile_survival(open_uniform(rng, size))

    def mean(self):
        raise NotImplementedError

    def _survival(self, t):
        raise NotImplementedError

    def _quantile_survival(self, u):
        raise NotImplementedError


class Pareto(InterArrivalLaw):
    """
    Pareto law, survival ``(xm/t)**alpha`` for ``t >= xm``.

    :param alpha: tail index, positive
    :param xm: scale, positive
    """
    name = 'pareto'
    param_names = ('alpha', 'xm')

    def _validate(self, alpha, xm):
        if alpha <= 0:
            raise LawParameterError(self.name, 'alpha must be positive')
        if xm <= 0:
            raise LawParameterError(self.name, 'xm must be positive')

    @property
    def alpha(self):
        return self._params[0]

    @property
    def xm(self):
        return self._params[1]

    @property
    def tail_index(self):
        return self.alpha

    @property
    def is_finite_mean(self):
        return self.alpha > 1

    def _survival(self, t):
        out = np.ones_like(t)
        above = t >= self.xm
        out[above] = (self.xm / t[above]) ** self.alpha
        return out

    def _quantile_survival(self, u):
        return self.xm * u ** (-1.0 / self.alpha)

    def mean(self):
        if self.alpha <= 1:
            return np.inf
        return self.alpha * self.xm / (self.alpha - 1.0)


class ParetoLog(InterArrivalLaw):
    """
    Pareto law with a logarithmic slowly varying factor, survival
    ``(xm/t)**alpha * (ln(t)/ln(xm))**beta`` for ``t >= xm``.

    The density is ``survival(t) * (alpha - beta/ln(t)) / t``, so it is
    positive on ``[xm, inf)`` only if ``beta < alpha*ln(xm)``.

    :param alpha: tail index, positive
    :param xm: scale, larger than e
    :param beta: exponent of the logarithmic factor
    """
    name = 'paretolog'
    param_names = ('alpha', 'xm', 'beta')

    def _validate(self, alpha, xm, beta):
        if alpha <= 0:
            raise LawParameterError(self.name, 'alpha must be positive')
        if xm <= np.e:
            raise LawParameterError(self.name, 'xm must be larger than e')
        if beta >= alpha * np.log(xm):
            raise LawParameterError(
                self.name, 'beta must be less than alpha*ln(xm) = %g' % (
                    alpha * np.log(xm))
            )

    @property
    def alpha(self):
        return self._params[0]

    @property
    def xm(self):
        return self._params[1]

    @property
    def beta(self):
        return self._params[2]

    @property
    def tail_index(self):
        return self.alpha

    @property
    def is_finite_mean(self):
        return self.alpha > 1 or (self.alpha == 1 and self.beta < -1)

    def _log_survival(self, y):
        # log survival as a function of y = ln(t) >= ln(xm)
        y0 = np.log(self.xm)
        return -self.alpha * (y - y0) + self.beta * np.log(y / y0)

    def _survival(self, t):
        out = np.ones_like(t)
        above = t >= self.xm
        ta = t[above]
        vals = np.zeros_like(ta)
        fin = np.isfinite(ta)
        vals[fin] = np.exp(self._log_survival(np.log(ta[fin])))
        out[above] = vals
        return out

    def _quantile_survival(self, u):
        alpha, beta = self.alpha, self.beta
        y0 = np.log(self.xm)
        target = np.log(u)

        def g(y):
            return self._log_survival(y) - target

        # g is decreasing, g(y0) = -ln(u) >= 0, expand bracket until g < 0
        lo = np.full_like(target, y0)
        hi = y0 + 1.0 - target / alpha
        expand = g(hi) > 0
        while np.any(expand):
            hi = np.where(expand, y0 + 2.0 * (hi - y0), hi)
            expand = g(hi) > 0
        # bisection
        while np.max(hi - lo, initial=0.0) > BISECT_TOL:
            mid = 0.5 * (lo + hi)
            pos = g(mid) > 0
            lo = np.where(pos, mid, lo)
            hi = np.where(pos, hi, mid)
        # safeguarded Newton in log time
        y = 0.5 * (lo + hi)
        for it in range(MAX_NEWTON):
            gy = g(y)
            pos = gy > 0
            lo = np.where(pos, y, lo)
            hi = np.where(pos, hi, y)
            step = gy / (-alpha + beta / y)
            y_new = y - step
            outside = (y_new < lo) | (y_new > hi)
            y_new = np.where(outside, 0.5 * (lo + hi), y_new)
            dy = np.abs(y_new - y)
            y = y_new
            tol = np.maximum(NEWTON_TOL, 4 * np.finfo(float).eps * y)
            if np.all(dy <= tol):
                break
        else:
            LOGGER.warning('Newton did not converge, max step %g', dy.max())
        LOGGER.debug('quantile converged in %d Newton steps', it + 1)
        # u == 1 is the atom-free left end
        return np.where(u == 1, self.xm, np.exp(y))

    def mean(self):
        if not self.is_finite_mean:
            return np.inf
        alpha, beta = self.alpha, self.beta
        xm, y0 = self.xm, np.log(self.xm)

        # t = xm*exp(s), integrand of int S(t) dt over s in [0, inf)
        def integrand(s):
            return xm * np.exp((1.0 - alpha) * s + beta * np.log1p(s / y0))

        tail, err = quad(integrand, 0.0, np.inf, epsrel=MEAN_EPSREL,
                         limit=200)
        LOGGER.debug('mean tail integral %g, error estimate %g', tail, err)
        return xm + tail


class Exponential(InterArrivalLaw):
    """
    Exponential law with survival ``exp(-rate*t)``.

    :param rate: rate, positive
    """
    name = 'exp'
    param_names = ('rate', )

    def _validate(self, rate):
        if rate <= 0:
            raise LawParameterError(self.name, 'rate must be positive')

    @property
    def rate(self):
        return self._params[0]

    def _survival(self, t):
        return np.exp(-self.rate * np.maximum(t, 0.0))

    def _quantile_survival(self, u):
        # -log(1) is -0.0
        return np.abs(-np.log(u) / self.rate)

    def mean(self):
        return 1.0 / self.rate


class LawRegistry(Registry):
    """
    Registry of inter-arrival laws by name.

    * ``arity`` - number of parameters of each law
    """
    meta_names = ['arity']

    def register(self, laws, *args, **kwargs):
        """
        Register laws and metadata.

        :param laws: map of names to law classes
        """
        kwargs.update(zip(self.meta_names, args))
        if 'arity' not in kwargs:
            kwargs['arity'] = {k: len(v.param_names) for k, v in laws.items()}
        super(LawRegistry, self).register(laws, **kwargs)


#: built-in laws
LAWS = LawRegistry()
LAWS.register({law.name: law for law in (Pareto, ParetoLog, Exponential)})


def parse_law(text):
    """
    Parse a law string like ``"pareto(0.5,1)"``, ``"paretolog(0.5,3,0.5)"``
    or ``"exp(1)"``. Names are case-insensitive and whitespace is allowed.
    Numbers are read as exact decimals and rounded once to double.

    :param text: law string
    :type text: str
    :return: law
    :rtype: :class:`InterArrivalLaw`
    :raises:
        :exc:`~renewkit.core.exceptions.LawSyntaxError`,
        :exc:`~renewkit.core.exceptions.LawParameterError`
    """
    if isinstance(text, InterArrivalLaw):
        return text
    match = LAW_PATTERN.match(str(text))
    if not match:
        raise LawSyntaxError(text, 'expected name(parameters)')
    name, args = match.group(1).lower(), match.group(2)
    if name not in LAWS:
        raise LawSyntaxError(text, 'unknown law "%s"' % name)
    args = [a.strip() for a in args.split(',')] if args.strip() else []
    if len(args) != LAWS.arity[name]:
        raise LawSyntaxError(text, '"%s" takes %d parameters, got %d' % (
            name, LAWS.arity[name], len(args)))
    params = []
    for a in args:
        if not re.fullmatch(EFG_PATTERN, a):
            raise LawSyntaxError(text, 'bad number "%s"' % a)
        try:
            params.append(float(Decimal(a)))
        except InvalidOperation:
            raise LawSyntaxError(text, 'bad number "%s"' % a)
    return LAWS[name](*params)


def survival(law, t):
    """
    Survival function of ``law`` at ``t``.
    """
    return law.survival(t)


def cdf(law, t):
    return law.cdf(t)


def quantile_survival(law, u):
    """
    Time ``t`` with ``survival(law, t) == u`` for ``u`` in (0, 1].
    """
    return law.quantile_survival(u)


def sample(law, rng, size=None):
    return law.sample(rng, size)


def mean(law):
    """
    Mean of ``law``, ``inf`` in the infinite-mean regime.
    """
    return law.mean()
