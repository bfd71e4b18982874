# -*- coding: utf-8 -*-
"""
This is the experiments module. An experiment is a configured job: it runs
simulations, solvers or quadratures, compares the results with their limits
through acceptance gates and writes a CSV data file and a JSON summary.

Experiment configurations are JSON documents validated against
:data:`CONFIG_SCHEMA`. Job classes declare their defaults in an ``attrs``
dictionary, the way simulations declare settings, and the default gate
thresholds in ``default_gates``. The acceptance suite run by
:class:`VerifyAll` is a JSON parameter file read by the metaclass.
"""

from renewkit.core import logging, CommonBase, Registry, Parameter
from renewkit.core.distributions import parse_law
from renewkit.core.exceptions import (
    ConfigError, LawParameterError, LawSyntaxError
)
from renewkit.core.limits import (
    erickson_constant, limit_law_for, ratio_cdf_from_dl, beta_integral,
    SizeBiasedCycle, EquilibriumAge, DLAge, DLResidual
)
from renewkit.core.outputs import (
    Gate, artifact_dir, config_hash, write_csv, write_summary, VERSION,
    UNHASHED_KEYS
)
from renewkit.core.simulations import (
    ReplicationPlan, simulate_snapshots, renewal_function_mc
)
from renewkit.core.solvers import (
    solve_renewal, key_renewal_compose, residual, b_forcing
)
from renewkit.core.statistics import ecdf, ks_summary
from jsonschema import Draft202012Validator
from jsonschema.exceptions import best_match
import filecmp
import json
import os
import sys
import numpy as np

LOGGER = logging.getLogger(__name__)
EXP_PATH = os.path.dirname(os.path.abspath(__file__))
#: quick mode divides sizes by this factor
QUICK_SCALE = 10
#: quick mode multiplies gate thresholds by this factor
QUICK_GATE_FACTOR = 3.0
JOB_NAMES = ['ratio-sim', 'renewal-fn', 'solve', 'dl-check', 'identities']

_NUMBER = {'type': 'number'}
_NUMBERS = {'type': 'array', 'items': _NUMBER, 'minItems': 1}
_NUMBER_OR_LIST = {'anyOf': [_NUMBER, _NUMBERS]}
_POSITIVE = {'type': 'number', 'exclusiveMinimum': 0}
_COUNT = {'type': 'integer', 'minimum': 1}

#: experiment configuration schema
CONFIG_SCHEMA = {
    '$schema': 'https://json-schema.org/draft/2020-12/schema',
    'type': 'object',
    'additionalProperties': False,
    'required': ['job'],
    'properties': {
        'job': {'enum': JOB_NAMES},
        'name': {'type': 'string'},
        'law': {'type': 'string'},
        'alpha': _NUMBER_OR_LIST,
        't': {'anyOf': [_POSITIVE, {'type': 'array', 'items': _POSITIVE,
                                    'minItems': 1}]},
        'T': _POSITIVE,
        'h': _POSITIVE,
        'x': _NUMBER,
        'x_grid': _NUMBERS,
        'n': _COUNT,
        'mc_t': {'type': 'array', 'items': _POSITIVE},
        'mc_n': _COUNT,
        'master_seed': {'type': 'integer', 'minimum': 0,
                        'maximum': 2 ** 64 - 1},
        'delta': _NUMBER,
        'outdir': {'type': 'string'},
        'workers': _COUNT,
        'quick': {'type': 'boolean'},
        'gates': {'type': 'object', 'additionalProperties': _NUMBER}
    }
}
CONFIG_KEYS = sorted(CONFIG_SCHEMA['properties'])
FLOAT_KEYS = ('alpha', 't', 'T', 'h', 'x', 'x_grid', 'mc_t', 'delta')
INT_KEYS = ('n', 'mc_n', 'master_seed', 'workers')
#: jobs whose law may be given as a Pareto tail index instead
LAW_JOBS = ('ratio-sim', 'renewal-fn', 'solve')
#: defaults shared by all jobs
COMMON_ATTRS = {
    'master_seed': 0,
    'delta': 0.001,
    'outdir': 'renewkit-out',
    'workers': 1,
    'quick': False,
    'gates': {}
}
_VALIDATOR = Draft202012Validator(CONFIG_SCHEMA)


def _to_float(value):
    if isinstance(value, list):
        return [float(v) for v in value]
    return float(value)


def _in_unit(values):
    return all(0 < v < 1 for v in np.atleast_1d(values))


def progress_hook(done, total):
    """
    Default progress hook, writes replications done to stdout.
    """
    sys.stdout.write('\r%10d / %d' % (done, total))
    if done >= total:
        sys.stdout.write('\n')
    sys.stdout.flush()


class ExperimentConfig(dict):
    """
    Validated experiment configuration with the job defaults filled in.

    :param config: configuration mapping, must contain ``job``
    :type config: dict
    :raises: :exc:`~renewkit.core.exceptions.ConfigError`
    """
    def __init__(self, config):
        config = dict(config)
        config.pop('extras', None)
        err = best_match(_VALIDATOR.iter_errors(config))
        if err is not None:
            where = '.'.join(str(p) for p in err.path) or 'config'
            raise ConfigError('%s: %s' % (where, err.message))
        job = JOBS[config['job']]
        for key in FLOAT_KEYS:
            if key in config:
                config[key] = _to_float(config[key])
                if not np.all(np.isfinite(config[key])):
                    raise ConfigError('%s must be finite' % key)
        if not np.all(np.isfinite(list(config.get('gates', {}).values()))):
            raise ConfigError('gates must be finite')
        for key in INT_KEYS:
            if key in config:
                config[key] = int(config[key])
        if 'alpha' in config and config['job'] in LAW_JOBS:
            if not isinstance(config['alpha'], float):
                raise ConfigError('alpha must be a number for %s'
                                  % config['job'])
            if not _in_unit(config['alpha']):
                raise ConfigError('alpha outside (0,1)')
            if 'law' not in config:
                config['law'] = 'pareto(%r,1)' % config['alpha']
        merged = dict(COMMON_ATTRS)
        merged.update(job.attrs)
        merged.update(config)
        if 'law' in merged:
            try:
                law = parse_law(merged['law'])
            except (LawSyntaxError, LawParameterError) as err:
                raise ConfigError(str(err))
            merged['law'] = str(law)
            if 'alpha' in config and config['job'] in LAW_JOBS and (
                    law.tail_index != config['alpha']):
                raise ConfigError('alpha %r does not match law %s' % (
                    config['alpha'], law))
        if not 0 < merged['delta'] < 1:
            raise ConfigError('delta outside (0,1)')
        unknown = set(merged['gates']) - set(job.default_gates)
        if unknown:
            raise ConfigError('unknown gates for %s: %s' % (
                config['job'], ', '.join(sorted(unknown))))
        job.check_config(merged)
        super(ExperimentConfig, self).__init__(merged)

    @property
    def job(self):
        return self['job']

    @property
    def hash(self):
        return config_hash(self)

    def hashed(self):
        """
        Configuration without keys that don't change results.
        """
        return {k: v for k, v in self.items() if k not in UNHASHED_KEYS}


class ExperimentParameter(Parameter):
    _attrs = CONFIG_KEYS


class ExperimentRegistry(Registry):
    """
    Registry of experiment classes by job name.

    * ``gates`` - default gate thresholds of each job
    """
    meta_names = ['gates']

    def register(self, jobs, *args, **kwargs):
        kwargs.update(zip(self.meta_names, args))
        if 'gates' not in kwargs:
            kwargs['gates'] = {k: v.default_gates for k, v in jobs.items()}
        super(ExperimentRegistry, self).register(jobs, **kwargs)


class ExperimentBase(CommonBase):
    """
    Meta class for experiments.
    """
    _path_attr = 'exp_path'
    _file_attr = 'exp_file'
    _attributes = 'attrs'
    _param_cls = ExperimentParameter

    def __new__(mcs, name, bases, attr):
        # use only with Experiment subclasses
        if not CommonBase.get_parents(bases, ExperimentBase):
            LOGGER.debug('bases:\n%r', bases)
            return super(ExperimentBase, mcs).__new__(mcs, name, bases, attr)
        # set _meta combined from bases
        attr = mcs.set_meta(bases, attr)
        # let attributes in subclasses override super
        attributes = attr.pop(mcs._attributes, None)
        attr = mcs.set_param_file_or_parameters(attr)
        if attributes is not None:
            attr[mcs._attributes] = attributes
        return super(ExperimentBase, mcs).__new__(mcs, name, bases, attr)


class Experiment(metaclass=ExperimentBase):
    """
    A configured job.

    :param config: configuration mapping
    :type config: dict
    :param kwargs: settings that override ``config``

    Settings missing from the configuration are taken from
    :data:`COMMON_ATTRS` and the ``attrs`` of the job class. With ``quick``
    set, sizes are divided by :data:`QUICK_SCALE` and gate thresholds
    multiplied by :data:`QUICK_GATE_FACTOR`.
    """
    job = None
    attrs = {}
    default_gates = {}

    def __init__(self, config=None, **kwargs):
        config = dict(config or {})
        config.update(kwargs)
        config.setdefault('job', self.job)
        if config['job'] != self.job:
            raise ConfigError('job %s can\'t be run by %s' % (
                config['job'], self.__class__.__name__))
        #: validated configuration
        self.config = ExperimentConfig(config)
        #: settings used for the run, scaled in quick mode
        self.settings = dict(self.config)
        if self.config['quick']:
            self.settings.update(self.quick_settings(self.settings))
        self.law = None
        if 'law' in self.settings:
            self.law = parse_law(self.settings['law'])
        #: directory with the artifacts, set by :meth:`run`
        self.path = None

    @classmethod
    def check_config(cls, config):
        """
        Check numeric ranges of a merged configuration.

        :raises: :exc:`~renewkit.core.exceptions.ConfigError`
        """
        pass

    @staticmethod
    def quick_settings(settings):
        """
        Sizes scaled down for a quick run.
        """
        quick = {}
        for key in ('n', 'mc_n'):
            if key in settings:
                quick[key] = max(1, settings[key] // QUICK_SCALE)
        for key in ('t', 'mc_t'):
            if key in settings:
                val = np.asarray(settings[key]) / QUICK_SCALE
                quick[key] = val.tolist()
        if 'T' in settings:
            T = settings['T'] / QUICK_SCALE
            h = settings.get('h')
            if h is not None:
                T = max(T, 10 * h)
            quick['T'] = T
        return quick

    def threshold(self, name, key=None):
        """
        Threshold of gate ``name``, configured or default, loosened in quick
        mode. Gates like ``mc_agreement_t=100`` fall back to ``key``.
        """
        gates = self.config['gates']
        key = key or name
        thr = gates.get(name, gates.get(key, self.default_gates[key]))
        if self.config['quick']:
            thr *= QUICK_GATE_FACTOR
        return thr

    def gate(self, name, observed, provenance, key=None):
        return Gate(name, observed, self.threshold(name, key), provenance)

    def compute(self, progress_hook=None):
        """
        Run the job.

        :return: CSV columns, results and gates
        """
        raise NotImplementedError

    def run(self, progress_hook=None):
        """
        Run the job and write ``data.csv`` and ``summary.json`` to
        ``<outdir>/<job>-<hash>``.

        :param progress_hook: called with replications done and total
        :return: summary
        :rtype: dict
        """
        LOGGER.info('running %s with config hash %s', self.job,
                    self.config.hash)
        columns, results, gates = self.compute(progress_hook)
        self.path = artifact_dir(self.config['outdir'], self.job, self.config)
        write_csv(os.path.join(self.path, 'data.csv'), columns)
        summary = {
            'version': VERSION,
            'job': self.job,
            'config': self.config.hashed(),
            'gates': [g.to_dict() for g in gates],
            'passed': all(g.passed for g in gates),
            'results': results
        }
        write_summary(os.path.join(self.path, 'summary.json'), summary)
        for g in gates:
            LOGGER.info('gate %r', g)
        LOGGER.info('wrote artifacts to %s', self.path)
        self.gates = gates
        return summary

    @property
    def failed_gates(self):
        return [g for g in getattr(self, 'gates', []) if not g.passed]


def _require_infinite_mean_alpha(law):
    if not law.is_finite_mean and not _in_unit(law.tail_index):
        raise ConfigError('alpha outside (0,1)')


class RatioSim(Experiment):
    """
    Simulate the age over cycle ratio and compare its ECDF with the limit
    law. With a finite mean also compare the cycle with the size-biased law
    and the age with the equilibrium law.
    """
    job = 'ratio-sim'
    attrs = {'law': 'pareto(0.5,1.0)', 't': 1e6, 'n': 100000}
    default_gates = {'ks_ratio': 0.02, 'ks_cycle': 0.015, 'ks_age': 0.015}

    @classmethod
    def check_config(cls, config):
        if not isinstance(config['t'], float):
            raise ConfigError('t must be a number for ratio-sim')
        _require_infinite_mean_alpha(parse_law(config['law']))

    def compute(self, progress_hook=None):
        s = self.settings
        law = self.law
        plan = ReplicationPlan(law, s['t'], s['n'], s['master_seed'])
        data = simulate_snapshots(plan, s['workers'],
                                  progress_hook=progress_hook)
        limit = limit_law_for(law)
        ks = ks_summary(ecdf(data['ratio']), limit.cdf, s['delta'],
                        self.threshold('ks_ratio'))
        gates = [Gate('ks_ratio', ks['ks'], ks['threshold'],
                      'ratio ECDF vs %r' % limit)]
        results = {'law': str(law), 't': plan.t, 'n': plan.n,
                   'seed': plan.master_seed, 'ks': ks['ks'],
                   'dkw_epsilon': ks['dkw_epsilon'], 'ks_ratio': ks}
        if law.is_finite_mean:
            cycle = ks_summary(ecdf(data['cycle']), SizeBiasedCycle(law).cdf,
                               s['delta'], self.threshold('ks_cycle'))
            age = ks_summary(ecdf(data['age']), EquilibriumAge(law).cdf,
                             s['delta'], self.threshold('ks_age'))
            gates.append(Gate('ks_cycle', cycle['ks'], cycle['threshold'],
                              'cycle ECDF vs size-biased law'))
            gates.append(Gate('ks_age', age['ks'], age['threshold'],
                              'age ECDF vs equilibrium law'))
            results.update(ks_cycle=cycle, ks_age=age)
        columns = [(k, data[k]) for k in (
            'rep_index', 't', 'age', 'residual', 'cycle', 'count', 'ratio')]
        return columns, results, gates


class RenewalFn(Experiment):
    """
    Estimate the renewal function by Monte Carlo, and by the solver if ``T``
    and ``h`` are given, and check its asymptotics.
    """
    job = 'renewal-fn'
    attrs = {'law': 'pareto(0.5,1.0)', 't': [1e2, 1e3, 1e4, 1e5, 1e6],
             'n': 10000}
    default_gates = {'erickson_mc': 0.10, 'erickson_solver': 0.10,
                     'elementary_renewal': 0.05, 'elementary_solver': 0.05,
                     'residual_u': 1e-12}

    @classmethod
    def check_config(cls, config):
        if ('T' in config) != ('h' in config):
            raise ConfigError('T and h must be given together')
        law = parse_law(config['law'])
        _require_infinite_mean_alpha(law)

    def compute(self, progress_hook=None):
        s = self.settings
        law = self.law
        t_grid = np.sort(np.atleast_1d(np.asarray(s['t'], dtype=float)))
        est = renewal_function_mc(law, t_grid, s['n'], s['master_seed'],
                                  s['workers'], progress_hook=progress_hook)
        surv = law.survival(t_grid)
        tmax = t_grid[-1]
        results = {'law': str(law), 'n': est.n, 'seed': s['master_seed'],
                   't': t_grid, 'u_hat': est.u_hat, 'stderr': est.stderr}
        gates = []
        if law.is_finite_mean:
            mu = law.mean()
            gates.append(self.gate(
                'elementary_renewal', abs(est.u_hat[-1] * mu / tmax - 1.0),
                'elementary renewal theorem u(t)*mean/t -> 1, Monte Carlo'))
        else:
            c_star = erickson_constant(law.tail_index)
            results['c_star'] = c_star
            gates.append(self.gate(
                'erickson_mc', abs(est.u_hat[-1] * surv[-1] / c_star - 1.0),
                'u(t)*survival(t)/c* -> 1, Monte Carlo'))
        if 'T' in s:
            u = solve_renewal(law, 1.0, s['T'], s['h'])
            u_end = u.values[-1]
            gates.append(self.gate(
                'residual_u', residual(law, 1.0, u),
                'residual of the renewal function'))
            results.update(T=u.horizon, h=u.h, u_solver_T=u_end)
            if law.is_finite_mean:
                gates.append(self.gate(
                    'elementary_solver',
                    abs(u_end * law.mean() / u.horizon - 1.0),
                    'elementary renewal theorem, solver'))
            else:
                gates.append(self.gate(
                    'erickson_solver',
                    abs(u_end * law.survival(u.horizon) / c_star - 1.0),
                    'u(T)*survival(T)/c* -> 1, solver'))
        columns = [('t', t_grid), ('u_hat', est.u_hat),
                   ('stderr', est.stderr), ('u_hat_x_survival',
                                            est.u_hat * surv)]
        return columns, results, gates


class Solve(Experiment):
    """
    Solve the renewal equation of ``P(A(t)/C(t) > x)`` and of the renewal
    function, compose them and compare with the limit and Monte Carlo.
    """
    job = 'solve'
    attrs = {'law': 'pareto(0.5,1.0)', 'x': 0.5, 'T': 1e4, 'h': 0.05,
             'mc_t': [1e2, 1e3], 'mc_n': 100000}
    default_gates = {'residual_a': 1e-12, 'residual_u': 1e-12,
                     'key_renewal': 0.01, 'limit': 0.01,
                     'mc_agreement': 0.01}

    @classmethod
    def check_config(cls, config):
        if not _in_unit(config['x']):
            raise ConfigError('x outside (0,1)')
        if any(t > config['T'] for t in config['mc_t']):
            raise ConfigError('mc_t beyond T')
        _require_infinite_mean_alpha(parse_law(config['law']))

    def compute(self, progress_hook=None):
        s = self.settings
        law, x = self.law, s['x']
        forcing = b_forcing(law, x)
        a = solve_renewal(law, forcing, s['T'], s['h'])
        u = solve_renewal(law, 1.0, s['T'], s['h'])
        composed = key_renewal_compose(u, forcing)
        limit = 1.0 - limit_law_for(law).cdf(x)
        gates = [
            self.gate('residual_a', residual(law, forcing, a),
                      'residual of a'),
            self.gate('residual_u', residual(law, 1.0, u),
                      'residual of u'),
            self.gate('key_renewal',
                      np.abs(a.values - composed.values).max(),
                      'sup|a - u*b|'),
            self.gate('limit', abs(a.values[-1] - limit),
                      '|a(T) - P(V > x) limit|')
        ]
        results = {'law': str(law), 'x': x, 'T': a.horizon, 'h': a.h,
                   'a_T': a.values[-1], 'limit': limit, 'mc': []}
        for t in s['mc_t']:
            plan = ReplicationPlan(law, t, s['mc_n'], s['master_seed'])
            ratios = simulate_snapshots(plan, s['workers'],
                                        progress_hook=progress_hook)['ratio']
            p_hat = float(np.mean(ratios > x))
            stderr = float(np.sqrt(p_hat * (1.0 - p_hat) / plan.n))
            a_t = a(t)
            gates.append(self.gate(
                'mc_agreement_t=%g' % t, abs(a_t - p_hat) - 3.0 * stderr,
                '|a(t) - P_hat(V(t) > x)| - 3*stderr',
                key='mc_agreement'))
            results['mc'].append({'t': t, 'a': a_t, 'p_hat': p_hat,
                                  'stderr': stderr, 'n': plan.n})
        columns = [('t', a.t), ('a', a.values), ('u', u.values),
                   ('a_composed', composed.values)]
        return columns, results, gates


class DLCheck(Experiment):
    """
    Check the ratio limit against the joint limit of age and residual life,
    and optionally simulated ``A(t)/t`` and ``B(t)/t`` against their limits.
    """
    job = 'dl-check'
    attrs = {'alpha': [0.3, 0.5, 0.7],
             'x_grid': [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]}
    default_gates = {'dl_cross': 1e-4, 'ks_age_dl': 0.02,
                     'ks_residual_dl': 0.02}

    @classmethod
    def check_config(cls, config):
        if not _in_unit(config['alpha']):
            raise ConfigError('alpha outside (0,1)')
        if not _in_unit(config['x_grid']):
            raise ConfigError('x_grid outside (0,1)')
        sim_keys = [k for k in ('law', 't', 'n') if k in config]
        if sim_keys and len(sim_keys) != 3:
            raise ConfigError('law, t and n must be given together')
        if 'law' in config:
            law = parse_law(config['law'])
            if law.is_finite_mean or not _in_unit(law.tail_index):
                raise ConfigError('alpha outside (0,1)')
            if not isinstance(config['t'], float):
                raise ConfigError('t must be a number for dl-check')

    def compute(self, progress_hook=None):
        s = self.settings
        alphas = np.atleast_1d(s['alpha'])
        xs = np.asarray(s['x_grid'])
        grid_a, grid_x = (g.ravel() for g in np.meshgrid(alphas, xs,
                                                          indexing='ij'))
        dl = np.array([ratio_cdf_from_dl(a, x)
                       for a, x in zip(grid_a, grid_x)])
        exact = grid_x ** grid_a
        err = np.abs(dl - exact)
        gates = [self.gate('dl_cross', err.max(),
                           'nested quadrature vs x**alpha')]
        results = {'dl_cross_max_abs_err': err.max()}
        if self.law is not None:
            law = self.law
            alpha = law.tail_index
            plan = ReplicationPlan(law, s['t'], s['n'], s['master_seed'])
            data = simulate_snapshots(plan, s['workers'],
                                      progress_hook=progress_hook)
            age = ks_summary(ecdf(data['age'] / plan.t), DLAge(alpha).cdf,
                             s['delta'], self.threshold('ks_age_dl'))
            res = ks_summary(ecdf(data['residual'] / plan.t),
                             DLResidual(alpha).cdf, s['delta'],
                             self.threshold('ks_residual_dl'))
            gates.append(Gate('ks_age_dl', age['ks'], age['threshold'],
                              'A(t)/t ECDF vs Beta(1-a, a)'))
            gates.append(Gate('ks_residual_dl', res['ks'], res['threshold'],
                              'B(t)/t ECDF vs residual limit law'))
            results.update(law=str(law), t=plan.t, n=plan.n,
                           seed=plan.master_seed, ks_age_dl=age,
                           ks_residual_dl=res)
        columns = [('alpha', grid_a), ('x', grid_x), ('dl_ratio_cdf', dl),
                   ('x_pow_alpha', exact), ('abs_err', err)]
        return columns, results, gates


class Identities(Experiment):
    """
    Check ``c* * alpha * B(alpha) = 1`` and the reflection formula over a
    grid of tail indices.
    """
    job = 'identities'
    attrs = {'alpha': [round(0.05 * k, 2) for k in range(1, 20)]}
    default_gates = {'normalization': 1e-12, 'reflection': 1e-10}

    @classmethod
    def check_config(cls, config):
        if not _in_unit(config['alpha']):
            raise ConfigError('alpha outside (0,1)')

    def compute(self, progress_hook=None):
        alphas = np.atleast_1d(self.settings['alpha'])
        beta = np.array([beta_integral(a) for a in alphas])
        c_star = np.array([erickson_constant(a) for a in alphas])
        product = c_star * alphas * beta
        reflection = np.abs(beta * np.sin(np.pi * alphas) / np.pi - 1.0)
        gates = [
            self.gate('normalization', np.abs(product - 1.0).max(),
                      'c* * alpha * beta_integral = 1'),
            self.gate('reflection', reflection.max(),
                      'beta_integral vs pi/sin(pi*alpha)')
        ]
        results = {'alpha': alphas, 'c_star': c_star, 'beta_integral': beta,
                   'product': product}
        columns = [('alpha', alphas), ('c_star', c_star),
                   ('beta_integral', beta), ('product', product)]
        return columns, results, gates


#: experiments by job name
JOBS = ExperimentRegistry()
JOBS.register({exp.job: exp for exp in (
    RatioSim, RenewalFn, Solve, DLCheck, Identities)})


def load_config(path):
    """
    Read a JSON configuration file.

    :raises: :exc:`~renewkit.core.exceptions.ConfigError`
    """
    try:
        with open(path, 'r') as f:
            return json.load(f)
    except (IOError, ValueError) as err:
        raise ConfigError('can\'t read %s: %s' % (path, err))


def make_experiment(config):
    """
    Experiment for a configuration mapping.

    :raises: :exc:`~renewkit.core.exceptions.ConfigError`
    """
    job = config.get('job')
    if job not in JOBS:
        raise ConfigError('unknown job %r' % (job, ))
    return JOBS[job](config)


class VerifyAll(Experiment):
    """
    Run every entry of the acceptance suite, then rerun one simulation entry
    with another worker count and compare the artifacts byte by byte.

    :param overrides: settings applied to every entry, any of
        ``OVERRIDE_KEYS``
    :type overrides: dict
    """
    job = 'verify-all'
    #: settings that may override the acceptance suite
    OVERRIDE_KEYS = ('master_seed', 'outdir', 'workers', 'quick', 'delta')

    class Meta:
        exp_path = EXP_PATH
        exp_file = 'acceptance.json'

    def __init__(self, overrides=None, **kwargs):
        overrides = dict(overrides or {})
        overrides.update(kwargs)
        unknown = set(overrides) - set(self.OVERRIDE_KEYS)
        if unknown:
            raise ConfigError('can\'t override %s for verify-all'
                              % ', '.join(sorted(unknown)))
        self.overrides = overrides
        self.outdir = overrides.get('outdir', COMMON_ATTRS['outdir'])
        self.workers = overrides.get('workers', COMMON_ATTRS['workers'])
        self.entries = []
        for name, param in self.parameters.items():
            config = {k: v for k, v in param.items() if k != 'extras'}
            config.update(overrides)
            self.entries.append((name, make_experiment(config)))
        self.path = None
        self.gates = []

    def _determinism_gate(self, experiments):
        name = self._meta.determinism_entry
        first = experiments[name]
        config = dict(first.config)
        config['outdir'] = os.path.join(self.outdir, 'determinism')
        config['workers'] = 1 if self.workers > 1 else 2
        rerun = make_experiment(config)
        rerun.run()
        same = all(filecmp.cmp(os.path.join(first.path, f),
                               os.path.join(rerun.path, f), shallow=False)
                   for f in ('data.csv', 'summary.json'))
        return Gate('determinism', 0.0 if same else 1.0, 0.0,
                    '%s rerun with another worker count is byte-identical'
                    % name)

    def run(self, progress_hook=None):
        """
        Run the suite and write ``<outdir>/verify-all-<hash>/summary.json``.
        """
        summaries = []
        experiments = {}
        for name, exp in self.entries:
            LOGGER.info('acceptance entry %s', name)
            summary = exp.run(progress_hook)
            experiments[name] = exp
            summaries.append({'entry': name, 'job': exp.job,
                              'artifacts': os.path.basename(exp.path),
                              'passed': summary['passed'],
                              'gates': summary['gates']})
            self.gates.extend(exp.gates)
        determinism = self._determinism_gate(experiments)
        self.gates.append(determinism)
        hashed = {k: v for k, v in self.overrides.items()
                  if k not in UNHASHED_KEYS}
        suite = {'suite': {k: dict(v) for k, v in self.parameters.items()},
                 'overrides': hashed}
        self.path = artifact_dir(self.outdir, self.job, suite)
        summary = {
            'version': VERSION,
            'job': self.job,
            'config': hashed,
            'entries': summaries,
            'gates': [determinism.to_dict()],
            'passed': all(g.passed for g in self.gates)
        }
        write_summary(os.path.join(self.path, 'summary.json'), summary)
        LOGGER.info('wrote acceptance summary to %s', self.path)
        return summary
