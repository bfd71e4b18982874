"""
Test RenewKit exceptions.
"""

from renewkit.tests import logging
from renewkit.core.exceptions import (
    DuplicateRegItemError, AlphaRangeError, ConfigError, GateFailure,
    QuadratureError, ReplicationError, RenewKitException
)
from renewkit.core.outputs import Gate
import pickle
import pytest

LOGGER = logging.getLogger(__name__)


def test_duplicate_registry_item_error():
    duplicate_keys = {'foo', 'bar'}
    with pytest.raises(DuplicateRegItemError) as exc_info:
        raise DuplicateRegItemError(duplicate_keys)
    err = exc_info.value
    LOGGER.debug('error: %s', err.__class__)
    assert err.duplicate_keys == duplicate_keys
    assert err.message == "Duplicate items can't be registered:\n\tbar\n\tfoo"
    assert str(err) == err.message


def test_value_errors():
    # range errors are also value errors
    for err in (AlphaRangeError(1.5), ConfigError('alpha outside (0,1)')):
        assert isinstance(err, ValueError)
        assert isinstance(err, RenewKitException)
    assert str(AlphaRangeError(1.5)) == 'alpha outside (0,1): 1.5'
    assert str(ConfigError('x')) == 'Invalid configuration: x'


def test_quadrature_error():
    err = QuadratureError('beta integral', 3.0, 3.5, 0.14)
    assert err.observed == 3.0 and err.expected == 3.5
    LOGGER.debug('message: %s', err.message)
    assert 'beta integral' in err.message


def test_replication_error_pickles():
    err = ReplicationError(12, MemoryError('out of memory'))
    copy = pickle.loads(pickle.dumps(err))
    assert copy.index == 12
    assert copy.message == err.message


def test_gate_failure():
    gates = [Gate('ks_ratio', 0.05, 0.02), Gate('limit', 0.2, 0.01)]
    err = GateFailure(gates)
    assert err.gates == gates
    assert err.message.splitlines()[1].strip().startswith('ks_ratio')
    assert 'limit' in str(err)
