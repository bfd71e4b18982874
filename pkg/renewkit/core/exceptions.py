# -*- coding: utf-8 -*-
"""
Exceptions for RenewKit.
"""


class RenewKitException(Exception):
    """
    Base exception class for RenewKit.
    """
    def __str__(self):
        return self.message


class DuplicateRegItemError(RenewKitException):
    """
    An exception raised when duplicate items are registered.

    :param keys: Keys of the duplicate items.
    :type keys: set
    """
    def __init__(self, keys):
        self.duplicate_keys = keys
        self.message = ('Duplicate items can\'t be registered:\n\t%s' %
                        '\n\t'.join(sorted(self.duplicate_keys)))


class MismatchRegMetaKeysError(RenewKitException):
    """
    An exception raised when meta with mismatched keys is registered.

    :param keys: Keys of the mismatched meta.
    :type keys: set
    """
    def __init__(self, keys):
        self.mismatch_keys = keys
        self.message = ('Meta must be a subset of registry:\n\t%s' %
                        '\n\t'.join(sorted(self.mismatch_keys)))


class LawParameterError(RenewKitException, ValueError):
    """
    An exception raised when an inter-arrival law gets invalid parameters.

    :param law: Name of the law.
    :type law: str
    :param reason: What is wrong with the parameters.
    :type reason: str
    """
    def __init__(self, law, reason):
        self.law = law
        self.reason = reason
        self.message = 'Invalid parameters for "%s": %s.' % (law, reason)


class LawSyntaxError(RenewKitException, ValueError):
    """
    An exception raised when a law string can't be parsed.

    :param text: The offending law string.
    :type text: str
    :param reason: Why it can't be parsed.
    :type reason: str
    """
    def __init__(self, text, reason):
        self.text = text
        self.reason = reason
        self.message = 'Can\'t parse law "%s": %s.' % (text, reason)


class QuantileDomainError(RenewKitException, ValueError):
    """
    Survival quantile requested outside of (0, 1].
    """
    def __init__(self, u):
        self.u = u
        self.message = 'Survival level must be in (0, 1], got %r.' % (u, )


class RegimeError(RenewKitException, ValueError):
    """
    An operation was requested in the wrong mean regime.

    :param law: The law, or its string.
    :param regime: The regime the law is in, *e.g.* "infinite-mean regime".
    """
    def __init__(self, law, regime):
        self.law = law
        self.regime = regime
        self.message = '%s is in the %s.' % (law, regime)


class AlphaRangeError(RenewKitException, ValueError):
    """
    Tail index outside of (0, 1).
    """
    def __init__(self, alpha):
        self.alpha = alpha
        self.message = 'alpha outside (0,1): %r' % (alpha, )


class LimitDomainError(RenewKitException, ValueError):
    """
    Argument outside of the domain of a limit law or forcing term.

    :param name: Name of the argument.
    :param value: Offending value.
    :param domain: Description of the domain, *e.g.* "(0,1)".
    """
    def __init__(self, name, value, domain):
        self.name = name
        self.value = value
        self.domain = domain
        self.message = '%s outside %s: %r' % (name, domain, value)


class QuadratureError(RenewKitException):
    """
    Quadrature disagrees with the closed form.

    :param what: Name of the integral.
    :param observed: Quadrature value.
    :param expected: Closed form value.
    :param rel_err: Relative disagreement.
    """
    def __init__(self, what, observed, expected, rel_err):
        self.what = what
        self.observed = observed
        self.expected = expected
        self.rel_err = rel_err
        self.message = (
            'Quadrature of %s gave %.17g but closed form is %.17g ' +
            '(relative error %g).'
        ) % (what, observed, expected, rel_err)


class GridMismatchError(RenewKitException, ValueError):
    """
    Grid functions with different steps or lengths were combined.
    """
    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.message = 'Grids do not match: %s vs %s.' % (left, right)


class NonFiniteForcingError(RenewKitException, ValueError):
    """
    Forcing term is NaN or infinite at some grid point.
    """
    def __init__(self, index):
        self.index = index
        self.message = 'Forcing is not finite at grid index %d.' % index


class CoarseGridError(RenewKitException, ValueError):
    """
    The whole inter-arrival mass falls in the first grid cell, F(h) = 1.
    """
    def __init__(self, h):
        self.h = h
        self.message = 'Grid step h=%g is too coarse: F(h) = 1.' % h


class HorizonTooLargeError(RenewKitException, ValueError):
    """
    Too many grid points requested.
    """
    def __init__(self, npts, max_npts):
        self.npts = npts
        self.max_npts = max_npts
        self.message = ('Grid would have %d points, more than the %d allowed.'
                        % (npts, max_npts))


class EmptySampleError(RenewKitException, ValueError):
    """
    Empty sample.
    """
    def __init__(self):
        self.message = 'Sample is empty.'


class NonFiniteSampleError(RenewKitException, ValueError):
    """
    Sample contains NaN or infinite values.
    """
    def __init__(self, count):
        self.count = count
        self.message = 'Sample has %d non-finite values.' % count


class ReplicationError(RenewKitException):
    """
    A replication failed, *e.g.* it ran out of memory.

    :param index: Index of the failing replication.
    :type index: int
    :param err: The original exception.
    """
    def __init__(self, index, err):
        self.index = index
        self.err = err
        self.message = 'Replication %d failed: %r' % (index, err)

    def __reduce__(self):
        return self.__class__, (self.index, self.err)


class ConfigError(RenewKitException, ValueError):
    """
    Experiment configuration is invalid.

    :param reason: What is wrong.
    :type reason: str
    """
    def __init__(self, reason):
        self.reason = reason
        self.message = 'Invalid configuration: %s' % reason


class GateFailure(RenewKitException):
    """
    One or more acceptance gates failed.

    :param gates: The failed gates.
    :type gates: list
    """
    def __init__(self, gates):
        self.gates = gates
        self.message = 'Failed gates:\n\t%s' % '\n\t'.join(
            '%s: observed %.6g > threshold %.6g' % (
                g.name, g.observed, g.threshold) for g in gates
        )
