# -*- coding: utf-8 -*-
"""
This is the simulations module. It draws renewal paths up to a time ``t``
and records the snapshot of the cycle straddling ``t``: the age ``A(t)``,
the residual life ``B(t)``, the cycle ``C(t) = A(t) + B(t)`` and the number
of renewals ``N(t)``.

Every replication has its own random substream keyed by the master seed and
the replication index, and replications are assembled by index, so results
don't depend on the number of worker processes.
"""

from renewkit.core import logging
from renewkit.core.exceptions import ReplicationError
from renewkit.core.statistics import mean_stderr
from concurrent.futures import ProcessPoolExecutor
from collections import namedtuple
import numpy as np

LOGGER = logging.getLogger(__name__)
#: size of the first chunk of inter-arrivals, doubled up to ``CHUNK_MAX``
CHUNK_START = 16
CHUNK_MAX = 65536
MAX_SEED = 2 ** 64
#: replications per task sent to a worker process
TASK_SIZE = 1024

Snapshot = namedtuple('Snapshot', ['t', 'age', 'residual', 'cycle', 'count'])
RenewalEstimate = namedtuple('RenewalEstimate', ['t', 'u_hat', 'stderr', 'n'])


class ReplicationPlan(namedtuple('ReplicationPlan',
                                 ['law', 't', 'n', 'master_seed'])):
    """
    Law, time, number of replications and master seed of a simulation.
    """
    __slots__ = ()

    def __new__(cls, law, t, n, master_seed):
        if not t > 0:
            raise ValueError('t must be positive, got %r' % (t, ))
        if int(n) != n or n < 1:
            raise ValueError('n must be a positive integer, got %r' % (n, ))
        if int(master_seed) != master_seed or not (
                0 <= master_seed < MAX_SEED):
            raise ValueError('master_seed must be in [0, 2**64), got %r' %
                             (master_seed, ))
        return super(ReplicationPlan, cls).__new__(
            cls, law, float(t), int(n), int(master_seed))


def substream(master_seed, index):
    """
    Random generator of replication ``index``.

    The Philox counter-based generator is keyed by the seed sequence of
    ``(master_seed, index)``, so a replication only depends on those two.
    """
    seq = np.random.SeedSequence(master_seed, spawn_key=(index, ))
    return np.random.Generator(np.random.Philox(seq))


def _partial_sums(law, rng):
    """
    Renewal epochs in chunks. The chunk sizes never depend on a target time,
    so the same substream always gives the same epochs.
    """
    size = CHUNK_START
    s = 0.0
    while True:
        x = law.sample(rng, size)
        # sequential sums carried over from the last chunk
        sums = np.cumsum(np.concatenate(([s], x)))[1:]
        yield sums
        s = sums[-1]
        size = min(2 * size, CHUNK_MAX)


def snapshot(law, t, rng):
    """
    Snapshot of the cycle straddling ``t``. An epoch equal to ``t`` is a
    renewal at or before ``t``.

    :param law: inter-arrival law
    :param t: time, positive
    :param rng: random generator
    :return: snapshot with ``age = t - S_N``, ``residual = S_{N+1} - t``
    :rtype: :class:`Snapshot`
    """
    count = 0
    prev = 0.0
    for sums in _partial_sums(law, rng):
        k = int(np.searchsorted(sums, t, side='right'))
        if k < sums.size:
            if k > 0:
                prev = sums[k - 1]
            count += k
            nxt = sums[k]
            assert prev <= t < nxt
            age = t - prev
            residual = nxt - t
            return Snapshot(t, age, residual, age + residual, count)
        count += k
        prev = sums[-1]


def ratio(s):
    """
    Age over cycle of a snapshot, in [0, 1).
    """
    return s.age / s.cycle


def renewal_counts(law, t_grid, rng):
    """
    ``N(t)`` at every time of ``t_grid`` along one path.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    counts = np.zeros(t_grid.shape, dtype=np.int64)
    tmax = t_grid.max()
    for sums in _partial_sums(law, rng):
        counts += np.searchsorted(sums, t_grid, side='right')
        if sums[-1] > tmax:
            return counts


def _snapshot_task(law, t, master_seed, start, stop):
    out = np.empty((stop - start, 4))
    for row, i in enumerate(range(start, stop)):
        try:
            s = snapshot(law, t, substream(master_seed, i))
        except (MemoryError, OverflowError) as err:
            raise ReplicationError(i, err)
        out[row] = s.age, s.residual, s.cycle, s.count
    return out


def _counts_task(law, t_grid, master_seed, start, stop):
    out = np.empty((stop - start, len(t_grid)), dtype=np.int64)
    for row, i in enumerate(range(start, stop)):
        try:
            out[row] = renewal_counts(law, t_grid, substream(master_seed, i))
        except (MemoryError, OverflowError) as err:
            raise ReplicationError(i, err)
    return out


def _run_tasks(task, args, n, workers, task_size=None, progress_hook=None):
    """
    Run ``task(*args, start, stop)`` over contiguous index ranges covering
    ``0..n-1`` and stack results in index order.
    """
    task_size = task_size or TASK_SIZE
    bounds = [(lo, min(lo + task_size, n)) for lo in range(0, n, task_size)]
    results = []
    if workers is None or workers <= 1:
        for lo, hi in bounds:
            results.append(task(*(args + (lo, hi))))
            if progress_hook:
                progress_hook(hi, n)
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(task, *(args + (lo, hi)))
                       for lo, hi in bounds]
            # collect in submission order, which is index order
            for fut, (lo, hi) in zip(futures, bounds):
                results.append(fut.result())
                if progress_hook:
                    progress_hook(hi, n)
    return np.concatenate(results)


def simulate_snapshots(plan, workers=1, task_size=None, progress_hook=None):
    """
    Simulate the snapshots of all replications of a plan.

    :param plan: replication plan
    :type plan: :class:`ReplicationPlan`
    :param workers: number of worker processes
    :param task_size: replications per task
    :param progress_hook: called with number of replications done and total
    :return: columns ``rep_index``, ``t``, ``age``, ``residual``, ``cycle``,
        ``count`` and ``ratio`` in replication order
    :rtype: dict
    :raises: :exc:`~renewkit.core.exceptions.ReplicationError`
    """
    LOGGER.debug('simulating %d snapshots of %s at t=%g with %s workers',
                 plan.n, plan.law, plan.t, workers)
    data = _run_tasks(_snapshot_task, (plan.law, plan.t, plan.master_seed),
                      plan.n, workers, task_size, progress_hook)
    age, residual, cycle, count = data.T
    return {
        'rep_index': np.arange(plan.n),
        't': np.full(plan.n, plan.t),
        'age': age,
        'residual': residual,
        'cycle': cycle,
        'count': count.astype(np.int64),
        'ratio': age / cycle
    }


def run_ratio_experiment(plan, workers=1):
    """
    Age over cycle ratios of all replications of a plan, in index order.
    """
    return simulate_snapshots(plan, workers)['ratio']


def renewal_function_mc(law, t_grid, n, master_seed, workers=1,
                        progress_hook=None):
    """
    Monte Carlo estimate of the renewal function ``u(t) = E[N(t)] + 1``,
    counting the renewal at time zero.

    :param law: inter-arrival law
    :param t_grid: times
    :param n: number of paths
    :param master_seed: master seed
    :param workers: number of worker processes
    :return: times, estimates and their standard errors
    :rtype: :class:`RenewalEstimate`
    """
    t_grid = np.atleast_1d(np.asarray(t_grid, dtype=float))
    ReplicationPlan(law, t_grid.max(), n, master_seed)  # validate
    counts = _run_tasks(_counts_task, (law, t_grid, int(master_seed)), int(n),
                        workers, progress_hook=progress_hook)
    u_hat = np.empty(t_grid.size)
    stderr = np.empty(t_grid.size)
    for k in range(t_grid.size):
        u_hat[k], stderr[k] = mean_stderr(counts[:, k] + 1.0)
    return RenewalEstimate(t_grid, u_hat, stderr, int(n))
