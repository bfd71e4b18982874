# -*- coding: utf-8 -*-
"""
This is the solvers module. It solves the renewal equation
``z = f + F*z`` on a uniform grid ``t_i = i*h``, composes the renewal
function with a forcing term and measures how well a grid function satisfies
the discrete equation.

The discrete convolution uses the exact increments of the inter-arrival law,
``dF_j = F(j*h) - F((j-1)*h)``, each paired with the average of the two grid
values at the ends of the cell::

    (F*z)_i = sum(dF_j * (z_{i-j} + z_{i-j+1})/2, j=1..i)

The ``j = 1`` term contains ``z_i`` itself and is solved for at every step.
"""

from renewkit.core import logging
from renewkit.core.exceptions import (
    CoarseGridError, GridMismatchError, HorizonTooLargeError, LimitDomainError,
    NonFiniteForcingError
)
from scipy.signal import fftconvolve
import numpy as np
import functools

LOGGER = logging.getLogger(__name__)
#: largest number of grid steps, T/h
MAX_STEPS = 10 ** 7
#: blocks this small are solved by direct dot products
LEAF_SIZE = 64
#: grids up to this many points use direct convolution in the residual
DIRECT_CONVOLVE_MAX = 2 ** 14


class GridFunction(object):
    """
    Values of a function on the uniform grid ``t_i = i*h``.

    :param h: grid step, positive
    :param values: finite values at ``i = 0..n-1``
    """
    def __init__(self, h, values):
        if not h > 0:
            raise ValueError('grid step must be positive, got %r' % (h, ))
        values = np.array(values, dtype=float).ravel()
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            raise NonFiniteForcingError(bad[0])
        self.h = float(h)
        self.values = values

    @property
    def n(self):
        return self.values.size

    @property
    def horizon(self):
        return self.h * (self.n - 1)

    @property
    def t(self):
        return self.h * np.arange(self.n)

    def __call__(self, t):
        """
        Linear interpolation between grid points.
        """
        out = np.interp(t, self.t, self.values)
        return float(out) if np.ndim(t) == 0 else out

    def __len__(self):
        return self.n

    def __repr__(self):
        return '<GridFunction(h=%g, n=%d)>' % (self.h, self.n)

    def same_grid(self, other):
        return np.isclose(self.h, other.h, rtol=1e-12, atol=0)

    def to_csv(self, path, name='value'):
        """
        Write ``t`` and values to a CSV file with 17 significant digits.
        """
        np.savetxt(path, np.column_stack((self.t, self.values)),
                   fmt='%.17g', delimiter=',', header='t,%s' % name,
                   comments='')

    @classmethod
    def from_csv(cls, path):
        data = np.loadtxt(path, delimiter=',', skiprows=1, ndmin=2)
        t, values = data[:, 0], data[:, 1]
        h = (t[-1] - t[0]) / (t.size - 1) if t.size > 1 else 1.0
        return cls(h, values)


def b_function(law, x, t):
    """
    Forcing term ``survival(t) - survival(t/x)``, the probability that the
    first inter-arrival exceeds ``t`` with age over cycle above ``x``.

    :param law: inter-arrival law
    :param x: level in (0, 1)
    :param t: times
    """
    if not 0 < x < 1:
        raise LimitDomainError('x', x, '(0,1)')
    scalar = np.ndim(t) == 0
    t = np.asarray(t, dtype=float)
    out = law.survival(t) - law.survival(t / x)
    return float(out) if scalar else out


def b_forcing(law, x):
    """
    :func:`b_function` as a forcing callable of ``t`` only.
    """
    if not 0 < x < 1:
        raise LimitDomainError('x', x, '(0,1)')
    return functools.partial(b_function, law, x)


def increments(law, h, n):
    """
    Exact increments ``F(j*h) - F((j-1)*h)`` for ``j = 1..n``.
    """
    s = law.survival(h * np.arange(n + 1))
    return s[:-1] - s[1:]


def _kernel(dF):
    # c_0 = dF_1/2, c_m = (dF_m + dF_{m+1})/2
    c = np.empty(dF.size)
    c[0] = 0.5 * dF[0]
    c[1:] = 0.5 * (dF[:-1] + dF[1:])
    return c


def _grid_steps(T, h):
    if not h > 0:
        raise ValueError('grid step must be positive, got %r' % (h, ))
    if not T > 0:
        raise ValueError('horizon must be positive, got %r' % (T, ))
    m = T / h
    if m > MAX_STEPS:
        raise HorizonTooLargeError(int(m) + 1, MAX_STEPS + 1)
    steps = int(round(m))
    if abs(m - steps) > 1e-9 * max(1.0, m):
        steps = int(np.floor(m))
    return steps


def _forcing_values(forcing, h, n):
    if isinstance(forcing, GridFunction):
        if not np.isclose(forcing.h, h, rtol=1e-12, atol=0) or forcing.n < n:
            raise GridMismatchError(forcing, '<grid(h=%g, n=%d)>' % (h, n))
        f = forcing.values[:n].copy()
    elif callable(forcing):
        f = np.broadcast_to(
            np.asarray(forcing(h * np.arange(n)), dtype=float), (n, )
        ).copy()
    else:
        f = np.full(n, float(forcing))
    bad = np.flatnonzero(~np.isfinite(f))
    if bad.size:
        raise NonFiniteForcingError(bad[0])
    return f


def solve_renewal(law, forcing, T, h):
    """
    Solve the discrete renewal equation on ``[0, T]`` with step ``h``.

    The solution is built block by block: inside small blocks by direct dot
    products, and the effect of a solved left half on the right half by one
    FFT convolution, which takes ``O(n log(n)**2)`` operations.

    :param law: inter-arrival law
    :param forcing: callable of an array of times, constant or
        :class:`GridFunction` with the same step
    :param T: horizon
    :param h: grid step
    :return: solution
    :rtype: :class:`GridFunction`
    :raises:
        :exc:`~renewkit.core.exceptions.HorizonTooLargeError`,
        :exc:`~renewkit.core.exceptions.CoarseGridError`,
        :exc:`~renewkit.core.exceptions.NonFiniteForcingError`
    """
    n = _grid_steps(T, h) + 1
    if law.survival(h) <= 0:
        raise CoarseGridError(h)
    f = _forcing_values(forcing, h, n)
    dF = increments(law, h, n)
    c = _kernel(dF)
    denom = 1.0 - c[0]
    # the last cell of every sum pairs z_0 with dF_i only
    rhs = f.copy()
    rhs[1:] -= 0.5 * dF[1:] * f[0]
    z = np.zeros(n)
    acc = np.zeros(n)
    z[0] = f[0]
    LOGGER.debug('solving renewal equation, n=%d, h=%g, law=%s', n, h, law)

    def solve_block(lo, hi):
        if hi - lo <= LEAF_SIZE:
            for i in range(max(lo, 1), hi):
                acc[i] += np.dot(c[i - lo:0:-1], z[lo:i])
                z[i] = (rhs[i] + acc[i]) / denom
            return
        mid = (lo + hi) // 2
        solve_block(lo, mid)
        acc[mid:hi] += fftconvolve(z[lo:mid], c[:hi - lo])[mid - lo:hi - lo]
        solve_block(mid, hi)

    solve_block(0, n)
    return GridFunction(h, z)


def key_renewal_compose(u_grid, forcing):
    """
    Compose the renewal function with a forcing term::

        a_i = u_0*b_i + sum(du_j * (b_{i-j} + b_{i-j+1})/2, j=1..i)

    where ``u_0`` is the atom of the renewal measure at 0.

    :param u_grid: renewal function on a grid
    :type u_grid: :class:`GridFunction`
    :param forcing: :class:`GridFunction` on the same grid or callable
    :raises: :exc:`~renewkit.core.exceptions.GridMismatchError`
    """
    n = u_grid.n
    if isinstance(forcing, GridFunction) and forcing.n != n:
        raise GridMismatchError(u_grid, forcing)
    b = _forcing_values(forcing, u_grid.h, n)
    u = u_grid.values
    a = u[0] * b
    if n > 1:
        du = np.concatenate(([0.0], np.diff(u)))
        g = b[:-1] + b[1:]
        a += 0.5 * fftconvolve(du, g)[:n]
    return GridFunction(u_grid.h, a)


def apply_operator(law, z):
    """
    The discrete convolution ``F*z`` of a grid function, computed directly
    for small grids and by FFT for large grids.
    """
    n = z.n
    dF = increments(law, z.h, n)
    c = _kernel(dF)
    conv = np.convolve if n <= DIRECT_CONVOLVE_MAX else fftconvolve
    out = conv(c, z.values)[:n]
    out[1:] -= 0.5 * dF[1:] * z.values[0]
    out[0] = 0.0
    return out


def residual(law, forcing, z):
    """
    Sup-norm residual ``max|z - f - F*z|`` of a grid function.

    :param law: inter-arrival law
    :param forcing: forcing term as accepted by :func:`solve_renewal`
    :param z: grid function
    :type z: :class:`GridFunction`
    """
    f = _forcing_values(forcing, z.h, z.n)
    return float(np.max(np.abs(z.values - f - apply_operator(law, z))))


def refinement_constant(law, forcing, T, h, probes):
    """
    Compare solutions with steps ``h`` and ``h/2`` at ``probes``. The
    returned ``max|z_h - z_{h/2}|/h`` stays bounded for a first order scheme.
    """
    coarse = solve_renewal(law, forcing, T, h)
    fine = solve_renewal(law, forcing, T, h / 2.0)
    const = float(np.max(np.abs(coarse(probes) - fine(probes)))) / h
    LOGGER.debug('refinement constant at h=%g: %g', h, const)
    return const
