"""
Test experiment configuration, jobs and acceptance gates.
"""

from renewkit.tests import logging, SEED
from renewkit.core.exceptions import ConfigError
from renewkit.core.experiments import (
    ExperimentConfig, Experiment, RatioSim, RenewalFn, Solve, DLCheck,
    Identities, VerifyAll, JOBS, JOB_NAMES, make_experiment, load_config
)
from renewkit.core.outputs import VERSION, read_csv
import filecmp
import json
import os
import numpy as np
import pytest

LOGGER = logging.getLogger(__name__)


def test_jobs_registry():
    assert sorted(JOBS) == sorted(JOB_NAMES)
    assert JOBS.gates['identities'] == {'normalization': 1e-12,
                                        'reflection': 1e-10}
    assert make_experiment({'job': 'identities'}).__class__ is Identities
    with pytest.raises(ConfigError):
        make_experiment({'job': 'nope'})


def test_config_defaults():
    config = ExperimentConfig({'job': 'ratio-sim'})
    assert config.job == 'ratio-sim'
    assert config['law'] == 'pareto(0.5,1.0)'
    assert config['t'] == 1e6 and config['n'] == 100000
    assert config['master_seed'] == 0 and config['delta'] == 0.001
    assert config['workers'] == 1 and config['quick'] is False


def test_config_alpha_shorthand():
    config = ExperimentConfig({'job': 'ratio-sim', 'alpha': 0.3})
    assert config['law'] == 'pareto(0.3,1.0)'
    config = ExperimentConfig({'job': 'solve', 'alpha': 0.5,
                               'law': 'paretolog(0.5,3,0.1)'})
    assert config['law'] == 'paretolog(0.5,3.0,0.1)'


@pytest.mark.parametrize('config', [
    {'job': 'ratio-sim', 'alpha': 1.5},
    {'job': 'ratio-sim', 'alpha': 0},
    {'job': 'ratio-sim', 'law': 'pareto(1,1)'},
    {'job': 'renewal-fn', 'law': 'pareto(1,1)'},
    {'job': 'dl-check', 'alpha': [0.5, 1.2]},
    {'job': 'identities', 'alpha': [0.0, 0.5]},
    {'job': 'dl-check', 'law': 'exp(1)', 't': 10, 'n': 10}
])
def test_config_alpha_range(config):
    with pytest.raises(ConfigError) as exc_info:
        ExperimentConfig(config)
    LOGGER.debug('message: %s', exc_info.value)
    assert 'alpha outside (0,1)' in str(exc_info.value)


@pytest.mark.parametrize('config', [
    {'job': 'ratio-sim', 'bogus': 1},
    {'job': 'ratio-sim', 'n': 0},
    {'job': 'ratio-sim', 'n': 2.5},
    {'job': 'ratio-sim', 't': -1},
    {'job': 'ratio-sim', 't': [1, 2]},
    {'job': 'ratio-sim', 'master_seed': -1},
    {'job': 'ratio-sim', 'law': 'gamma(2)'},
    {'job': 'ratio-sim', 'law': 'pareto(-1,1)'},
    {'job': 'ratio-sim', 'alpha': 0.3, 'law': 'pareto(0.5,1)'},
    {'job': 'ratio-sim', 'delta': 1.5},
    {'job': 'ratio-sim', 'gates': {'erickson_mc': 0.1}},
    {'job': 'renewal-fn', 'T': 100},
    {'job': 'solve', 'x': 1.0},
    {'job': 'solve', 'T': 50, 'mc_t': [100]},
    {'job': 'dl-check', 'x_grid': [0.5, 1.0]},
    {'job': 'dl-check', 'law': 'pareto(0.5,1)', 't': 100},
    {'job': 'ratio-sim', 't': float('inf')},
    {'job': 'solve', 'mc_t': [100, float('nan')]},
    {'job': 'identities', 'gates': {'reflection': float('inf')}},
    {'job': 'nope'},
    {}
])
def test_config_errors(config):
    with pytest.raises(ConfigError):
        ExperimentConfig(config)


def test_config_hash():
    base = {'job': 'identities', 'alpha': [0.5]}
    h0 = ExperimentConfig(base).hash
    assert len(h0) == 12
    assert ExperimentConfig(dict(base, workers=4)).hash == h0
    assert ExperimentConfig(dict(base, outdir='elsewhere')).hash == h0
    assert ExperimentConfig(dict(base, master_seed=1)).hash != h0
    assert ExperimentConfig(dict(base, alpha=[0.3])).hash != h0
    hashed = ExperimentConfig(dict(base, workers=4)).hashed()
    assert 'workers' not in hashed and 'outdir' not in hashed


def test_job_mismatch():
    with pytest.raises(ConfigError):
        RatioSim({'job': 'solve'})


def test_quick_settings():
    quick = Experiment.quick_settings({'n': 100000, 'mc_n': 5, 't': 1e6,
                                       'mc_t': [100.0, 1000.0], 'T': 1e4,
                                       'h': 0.05})
    assert quick == {'n': 10000, 'mc_n': 1, 't': 1e5, 'mc_t': [10.0, 100.0],
                     'T': 1e3}
    assert Experiment.quick_settings({'T': 1.0, 'h': 0.05})['T'] == 0.5
    exp = RatioSim({'quick': True})
    assert exp.settings['n'] == 10000
    assert exp.config['n'] == 100000
    assert np.isclose(exp.threshold('ks_ratio'), 0.06)
    assert RatioSim({'gates': {'ks_ratio': 0.05}}).threshold('ks_ratio') == 0.05


def test_identities_run(tmp_path):
    exp = Identities({'outdir': str(tmp_path)})
    summary = exp.run()
    assert summary['passed']
    assert set(summary) == {'version', 'job', 'config', 'gates', 'passed',
                            'results'}
    assert summary['version'] == VERSION
    assert [g['name'] for g in summary['gates']] == ['normalization',
                                                     'reflection']
    assert os.path.basename(exp.path) == 'identities-%s' % exp.config.hash
    with open(os.path.join(exp.path, 'data.csv')) as f:
        assert f.readline().strip() == '# renewkit %s' % VERSION
        assert f.readline().strip() == 'alpha,c_star,beta_integral,product'
    data = read_csv(os.path.join(exp.path, 'data.csv'))
    assert data['alpha'].size == 19
    assert np.allclose(data['product'], 1.0, rtol=0, atol=1e-12)
    with open(os.path.join(exp.path, 'summary.json')) as f:
        on_disk = json.load(f)
    assert on_disk['passed'] and 'workers' not in on_disk['config']
    assert exp.failed_gates == []


def test_gate_failure(tmp_path):
    exp = Identities({'outdir': str(tmp_path),
                      'gates': {'normalization': -1.0}})
    summary = exp.run()
    assert not summary['passed']
    assert [g.name for g in exp.failed_gates] == ['normalization']


def test_ratio_sim_run(tmp_path):
    exp = RatioSim({'law': 'pareto(0.5,1)', 't': 1e4, 'n': 2000,
                    'master_seed': SEED, 'outdir': str(tmp_path),
                    'gates': {'ks_ratio': 0.1}})
    summary = exp.run()
    LOGGER.debug('ks = %g', summary['results']['ks'])
    assert summary['passed']
    assert [g['name'] for g in summary['gates']] == ['ks_ratio']
    data = read_csv(os.path.join(exp.path, 'data.csv'))
    assert list(data) == ['rep_index', 't', 'age', 'residual', 'cycle',
                          'count', 'ratio']
    assert np.array_equal(data['rep_index'], np.arange(2000))
    assert np.all((data['ratio'] >= 0) & (data['ratio'] < 1))


def test_ratio_sim_finite_mean(tmp_path):
    exp = RatioSim({'law': 'exp(1)', 't': 100, 'n': 2000, 'master_seed': SEED,
                    'outdir': str(tmp_path),
                    'gates': {'ks_ratio': 0.1, 'ks_cycle': 0.1,
                              'ks_age': 0.1}})
    summary = exp.run()
    assert [g['name'] for g in summary['gates']] == ['ks_ratio', 'ks_cycle',
                                                     'ks_age']
    assert summary['passed']


def test_artifacts_independent_of_workers(tmp_path):
    config = {'law': 'pareto(0.5,1)', 't': 1e3, 'n': 3000,
              'master_seed': SEED, 'gates': {'ks_ratio': 0.2}}
    serial = RatioSim(dict(config, outdir=str(tmp_path / 'serial')))
    parallel = RatioSim(dict(config, outdir=str(tmp_path / 'parallel'),
                             workers=2))
    serial.run()
    parallel.run()
    assert os.path.basename(serial.path) == os.path.basename(parallel.path)
    for name in ('data.csv', 'summary.json'):
        assert filecmp.cmp(os.path.join(serial.path, name),
                           os.path.join(parallel.path, name), shallow=False)


def test_renewal_fn_run(tmp_path):
    exp = RenewalFn({'law': 'exp(1)', 't': [10.0, 100.0], 'n': 2000,
                     'T': 100, 'h': 0.05, 'master_seed': SEED,
                     'outdir': str(tmp_path)})
    summary = exp.run()
    names = [g['name'] for g in summary['gates']]
    assert names == ['elementary_renewal', 'residual_u', 'elementary_solver']
    assert summary['passed']


def test_solve_run(tmp_path):
    exp = Solve({'law': 'exp(1)', 'x': 0.5, 'T': 50, 'h': 0.01,
                 'mc_t': [10], 'mc_n': 2000, 'master_seed': SEED,
                 'outdir': str(tmp_path)})
    summary = exp.run()
    names = [g['name'] for g in summary['gates']]
    assert names == ['residual_a', 'residual_u', 'key_renewal', 'limit',
                     'mc_agreement_t=10']
    assert summary['results']['limit'] == 0.5
    assert summary['passed']
    data = read_csv(os.path.join(exp.path, 'data.csv'))
    assert list(data) == ['t', 'a', 'u', 'a_composed']
    assert data['t'].size == 5001


def test_dl_check_run(tmp_path):
    exp = DLCheck({'alpha': [0.5], 'x_grid': [0.25, 0.5],
                   'outdir': str(tmp_path)})
    summary = exp.run()
    assert [g['name'] for g in summary['gates']] == ['dl_cross']
    assert summary['passed']
    data = read_csv(os.path.join(exp.path, 'data.csv'))
    assert np.allclose(data['x_pow_alpha'], [0.5, 0.5 ** 0.5])


def test_load_config(tmp_path):
    path = tmp_path / 'config.json'
    path.write_text(json.dumps({'job': 'identities', 'alpha': [0.5]}))
    assert load_config(str(path)) == {'job': 'identities', 'alpha': [0.5]}
    path.write_text('{not json')
    with pytest.raises(ConfigError):
        load_config(str(path))
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / 'missing.json'))


def test_verify_all_parameters(tmp_path):
    assert VerifyAll._meta.determinism_entry == 'classical_baseline'
    assert set(VerifyAll.parameters) == {
        'ratio_alpha_0.5', 'ratio_alpha_0.3', 'ratio_alpha_0.7',
        'classical_baseline', 'erickson', 'identities', 'solver_pareto',
        'solver_exponential', 'dynkin_lamperti'
    }
    suite = VerifyAll(quick=True, outdir=str(tmp_path))
    jobs = {name: exp.job for name, exp in suite.entries}
    assert jobs['erickson'] == 'renewal-fn'
    assert jobs['dynkin_lamperti'] == 'dl-check'
    assert all(exp.config['quick'] for _, exp in suite.entries)
    with pytest.raises(ConfigError):
        VerifyAll({'bogus': 1})
    for key, value in (('job', 'identities'), ('law', 'exp(1)'), ('x', 0.3)):
        with pytest.raises(ConfigError):
            VerifyAll({key: value})
    suite = VerifyAll(master_seed=7, delta=0.01, outdir=str(tmp_path))
    assert all(exp.config['master_seed'] == 7 for _, exp in suite.entries)


@pytest.mark.slow
def test_verify_all_quick(tmp_path):
    suite = VerifyAll(quick=True, outdir=str(tmp_path), workers=2)
    summary = suite.run()
    for entry in summary['entries']:
        LOGGER.debug('%s passed: %s', entry['entry'], entry['passed'])
    assert summary['gates'][0]['name'] == 'determinism'
    assert summary['gates'][0]['passed']
    assert summary['passed']


def _tree_files(root):
    return sorted(os.path.relpath(os.path.join(d, f), root)
                  for d, _, files in os.walk(root) for f in files)


@pytest.mark.slow
def test_verify_all_worker_independent(tmp_path):
    one, three = str(tmp_path / 'one'), str(tmp_path / 'three')
    VerifyAll(quick=True, outdir=one, workers=1).run()
    VerifyAll(quick=True, outdir=three, workers=3).run()
    files = _tree_files(one)
    assert files == _tree_files(three)
    assert any(f.startswith('verify-all-') for f in files)
    for f in files:
        LOGGER.debug('comparing %s', f)
        assert filecmp.cmp(os.path.join(one, f), os.path.join(three, f),
                           shallow=False), f


def _acceptance_config(entry, **kwargs):
    config = {k: v for k, v in VerifyAll.parameters[entry].items()
              if k != 'extras'}
    config.update(kwargs)
    return config


@pytest.mark.parametrize('entry, gates', [
    ('ratio_alpha_0.5', {'ks_ratio': 0.02}),
    ('ratio_alpha_0.3', {'ks_ratio': 0.03}),
    ('ratio_alpha_0.7', {'ks_ratio': 0.03}),
    ('classical_baseline', {'ks_ratio': 0.01, 'ks_cycle': 0.015,
                            'ks_age': 0.015}),
    ('erickson', {'erickson_mc': 0.1, 'erickson_solver': 0.1}),
    ('solver_pareto', {'limit': 0.01, 'mc_agreement': 0.01,
                       'residual_a': 1e-12}),
    ('dynkin_lamperti', {'dl_cross': 1e-4, 'ks_age_dl': 0.02,
                         'ks_residual_dl': 0.02})
])
def test_acceptance_thresholds(entry, gates):
    exp = make_experiment(_acceptance_config(entry))
    assert not exp.config['quick']
    for name, threshold in gates.items():
        assert exp.threshold(name) == threshold


def test_acceptance_sizes():
    for entry in ('ratio_alpha_0.5', 'ratio_alpha_0.3', 'ratio_alpha_0.7'):
        config = make_experiment(_acceptance_config(entry)).config
        assert config['t'] == 1e6 and config['n'] == 100000
    config = make_experiment(_acceptance_config('solver_pareto')).config
    assert config['law'] == 'pareto(0.5,1.0)'
    assert config['mc_t'] == [100.0, 1000.0] and config['mc_n'] == 100000
    assert config['T'] == 1e4 and config['h'] == 0.05
    config = make_experiment(_acceptance_config('dynkin_lamperti')).config
    assert config['t'] == 1e6 and config['n'] == 100000


@pytest.mark.slow
@pytest.mark.parametrize('entry', sorted(VerifyAll.parameters))
def test_acceptance_entry(tmp_path, entry):
    exp = make_experiment(_acceptance_config(entry, outdir=str(tmp_path),
                                             workers=4))
    summary = exp.run()
    for g in summary['gates']:
        LOGGER.debug('%s: %s = %g (threshold %g)', entry, g['name'],
                     g['observed'], g['threshold'])
    assert summary['passed'], exp.failed_gates
