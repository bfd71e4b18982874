# -*- coding: utf-8 -*-
"""
Empirical distribution functions, Kolmogorov-Smirnov distances and the
Dvoretzky-Kiefer-Wolfowitz confidence band.
"""

from renewkit.core import logging
from renewkit.core.exceptions import EmptySampleError, NonFiniteSampleError
import numpy as np

LOGGER = logging.getLogger(__name__)


class Ecdf(object):
    """
    Right-continuous empirical distribution function of a sample.

    :param sample: finite values
    :type sample: sequence
    """
    def __init__(self, sample):
        sample = np.asarray(sample, dtype=float).ravel()
        if sample.size == 0:
            raise EmptySampleError()
        nonfinite = np.count_nonzero(~np.isfinite(sample))
        if nonfinite:
            raise NonFiniteSampleError(nonfinite)
        self._sorted = np.sort(sample)
        self._sorted.flags.writeable = False

    @property
    def n(self):
        return self._sorted.size

    @property
    def sorted(self):
        """
        Read-only sorted copy of the sample.
        """
        return self._sorted

    def __call__(self, x):
        """
        Fraction of the sample less than or equal to ``x``.
        """
        scalar = np.ndim(x) == 0
        out = np.searchsorted(self._sorted, x, side='right') / self.n
        return float(out) if scalar else out

    def __len__(self):
        return self.n

    def __repr__(self):
        return '<Ecdf(n=%d)>' % self.n


def ecdf(sample):
    """
    Empirical distribution function of ``sample``.

    :raises:
        :exc:`~renewkit.core.exceptions.EmptySampleError`,
        :exc:`~renewkit.core.exceptions.NonFiniteSampleError`
    """
    return Ecdf(sample)


def ks_distance(e, cdf):
    """
    Exact sup-norm distance between an empirical distribution function and a
    continuous or step CDF.

    At each distinct sample value ``x`` the ECDF jumps from ``lower``, its
    value just before the block of ties at ``x``, to ``upper``, so the
    distance is the largest of ``upper - F(x)`` and ``F(x-) - lower`` over
    blocks. The left limit ``F(x-)`` is taken at the next float below ``x``.

    :param e: empirical distribution function
    :type e: :class:`Ecdf`
    :param cdf: vectorized CDF
    :type cdf: callable
    :return: distance in [0, 1]
    """
    x = e.sorted
    n = e.n
    # last index of each block of ties
    last = np.flatnonzero(np.append(x[1:] != x[:-1], True))
    first = np.append(0, last[:-1] + 1)
    values = x[last]
    fx = np.asarray(cdf(values), dtype=float)
    fx_left = np.asarray(cdf(np.nextafter(values, -np.inf)), dtype=float)
    upper = (last + 1) / n
    lower = first / n
    return float(max(np.max(upper - fx), np.max(fx_left - lower), 0.0))


def dkw_epsilon(n, delta):
    """
    Half width of the DKW band: the ECDF of ``n`` draws is within epsilon of
    the true CDF with probability at least ``1 - delta``.

    :param n: sample size, at least 1
    :param delta: miss probability in (0, 1)
    """
    if n < 1:
        raise ValueError('n must be at least 1, got %r' % (n, ))
    if not 0 < delta < 1:
        raise ValueError('delta must be in (0,1), got %r' % (delta, ))
    return float(np.sqrt(np.log(2.0 / delta) / (2.0 * n)))


def ks_summary(e, cdf, delta, threshold=None):
    """
    KS distance with its DKW band.

    :param e: empirical distribution function
    :param cdf: reference CDF
    :param delta: DKW miss probability
    :param threshold: pass threshold, defaults to the DKW epsilon
    :return: dictionary with ``n``, ``ks``, ``delta``, ``dkw_epsilon``,
        ``threshold`` and ``pass``
    """
    ks = ks_distance(e, cdf)
    eps = dkw_epsilon(e.n, delta)
    if threshold is None:
        threshold = eps
    LOGGER.debug('ks=%g, dkw_epsilon=%g, n=%d', ks, eps, e.n)
    return {'n': e.n, 'ks': ks, 'delta': delta, 'dkw_epsilon': eps,
            'threshold': threshold, 'pass': ks <= threshold}


def mean_stderr(sample):
    """
    Sample mean and its standard error.
    """
    sample = np.asarray(sample, dtype=float)
    if sample.size == 0:
        raise EmptySampleError()
    if sample.size == 1:
        return float(sample[0]), 0.0
    return (float(sample.mean()),
            float(sample.std(ddof=1) / np.sqrt(sample.size)))
