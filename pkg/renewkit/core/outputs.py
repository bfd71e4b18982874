# -*- coding: utf-8 -*-
"""
This is the outputs module. It writes experiment artifacts, a CSV data file
and a JSON summary, and holds the acceptance gates that decide the exit
status of an experiment.

Artifacts never contain timestamps, host names or worker counts, so reruns
of the same configuration write the same bytes.
"""

from renewkit import __version__
from renewkit.core import logging, RenewKitJSONEncoder, mkdir_p
import hashlib
import json
import os
import numpy as np

LOGGER = logging.getLogger(__name__)
VERSION = __version__ or '0+unknown'
#: first line of every CSV artifact
CSV_VERSION_LINE = '# renewkit %s' % VERSION
#: config keys that don't change results
UNHASHED_KEYS = ('outdir', 'workers')
HASH_LENGTH = 12


def canonical_json(obj):
    """
    Compact JSON with sorted keys.
    """
    return json.dumps(obj, sort_keys=True, separators=(',', ':'),
                      ensure_ascii=True, cls=RenewKitJSONEncoder)


def config_hash(config):
    """
    Short SHA-256 hex digest of a config without the keys in
    ``UNHASHED_KEYS``.
    """
    payload = {k: v for k, v in config.items() if k not in UNHASHED_KEYS}
    digest = hashlib.sha256(canonical_json(payload).encode('utf-8'))
    return digest.hexdigest()[:HASH_LENGTH]


def artifact_dir(outdir, job, config):
    """
    Make and return ``<outdir>/<job>-<hash>``.
    """
    path = os.path.join(outdir, '%s-%s' % (job, config_hash(config)))
    mkdir_p(path)
    return path


def write_csv(path, columns):
    """
    Write columns to a comma separated file. The first line is the versioned
    header, the second line the column names. Numbers are written with 17
    significant digits.

    :param path: file name
    :param columns: pairs of column name and values
    :type columns: list
    """
    names = [name for name, _ in columns]
    data = np.column_stack([np.asarray(vals, dtype=float)
                            for _, vals in columns])
    header = '%s\n%s' % (CSV_VERSION_LINE, ','.join(names))
    np.savetxt(path, data, fmt='%.17g', delimiter=',', header=header,
               comments='')
    LOGGER.debug('wrote %d rows to %s', data.shape[0], path)


def read_csv(path):
    """
    Read a CSV artifact back as a dictionary of columns.
    """
    with open(path, 'r') as f:
        f.readline()  # version line
        names = f.readline().strip().split(',')
        data = np.loadtxt(f, delimiter=',', ndmin=2)
    return {name: data[:, k] for k, name in enumerate(names)}


def write_summary(path, summary):
    """
    Write the JSON summary with sorted keys.
    """
    with open(path, 'w') as f:
        json.dump(summary, f, indent=2, sort_keys=True,
                  cls=RenewKitJSONEncoder)
        f.write('\n')


class Gate(object):
    """
    Acceptance gate, passes if ``observed <= threshold``.

    :param name: gate name
    :param observed: observed statistic
    :param threshold: largest accepted value
    :param provenance: how the statistic was obtained
    """
    def __init__(self, name, observed, threshold, provenance=''):
        self.name = name
        self.observed = float(observed)
        self.threshold = float(threshold)
        self.provenance = provenance

    @property
    def passed(self):
        return bool(self.observed <= self.threshold)

    def to_dict(self):
        return {'name': self.name, 'observed': self.observed,
                'threshold': self.threshold, 'passed': self.passed,
                'provenance': self.provenance}

    def __repr__(self):
        return '<Gate(%s: %g <= %g %s)>' % (
            self.name, self.observed, self.threshold,
            'pass' if self.passed else 'FAIL')
