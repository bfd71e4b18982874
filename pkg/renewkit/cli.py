# -*- coding: utf-8 -*-
"""
Command line interface of RenewKit. Each subcommand runs one job from a JSON
configuration, with flags overriding top-level keys. Exit status is 0 if
every gate passes, 2 if a gate fails and 1 on usage or configuration errors.
"""

from renewkit import __version__
from renewkit.core import logging
from renewkit.core.exceptions import (
    ConfigError, GateFailure, RenewKitException
)
from renewkit.core.experiments import (
    JOB_NAMES, VerifyAll, load_config, make_experiment, progress_hook
)
import argparse
import json
import sys

LOGGER = logging.getLogger(__name__)
DESCRIPTION = """
Verify the limit law of the age over the straddling cycle of renewal
processes by simulation, numerical solution of the renewal equation and
quadrature.
"""
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_GATE_FAILURE = 2
VERIFY_ALL = 'verify-all'


class UsageError(RenewKitException):
    def __init__(self, message):
        self.message = message


class ArgumentParser(argparse.ArgumentParser):
    """
    Argument parser that raises instead of exiting on usage errors.
    """
    def error(self, message):
        raise UsageError('%s: %s' % (self.prog, message))


def parse_set(item):
    """
    Parse ``KEY=VALUE`` where value is JSON, or a plain string if it isn't.
    """
    key, sep, value = item.partition('=')
    if not sep or not key:
        raise UsageError('--set expects KEY=VALUE, got %r' % item)
    try:
        return key, json.loads(value)
    except ValueError:
        return key, value


def build_parser():
    parser = ArgumentParser(prog='renewkit', description=DESCRIPTION)
    parser.add_argument('--version', action='version',
                        version=('%(prog)s' + ' %s' % __version__))
    subparsers = parser.add_subparsers(dest='job', metavar='JOB')
    subparsers.required = True
    for job in JOB_NAMES + [VERIFY_ALL]:
        sub = subparsers.add_parser(job, help='run the %s job' % job)
        sub.add_argument('--config', help='JSON configuration file')
        sub.add_argument('--seed', type=int, help='master seed, overrides '
                         'master_seed')
        sub.add_argument('--out', help='output directory, overrides outdir')
        sub.add_argument('--quick', action='store_true', default=None,
                         help='smaller sizes and looser gates')
        sub.add_argument('--workers', type=int,
                         help='worker processes, overrides workers')
        sub.add_argument('--set', action='append', default=[],
                         metavar='KEY=JSON', help='override any key, can be '
                         'used more than once')
        sub.add_argument('--progress', action='store_true',
                         help='show replication progress')
        sub.add_argument('-v', '--verbose', action='store_true',
                         help='debug logging')
    return parser


def overrides_from_args(args):
    overrides = dict(parse_set(item) for item in args.set)
    flags = {'master_seed': args.seed, 'outdir': args.out,
             'quick': args.quick, 'workers': args.workers}
    overrides.update((k, v) for k, v in flags.items() if v is not None)
    return overrides


def run(args):
    """
    Run the job of parsed arguments.

    :return: experiment and its summary
    """
    config = load_config(args.config) if args.config else {}
    config.update(overrides_from_args(args))
    if args.job == VERIFY_ALL:
        exp = VerifyAll(config)
    else:
        if config.setdefault('job', args.job) != args.job:
            raise ConfigError('config job %r doesn\'t match subcommand %r' % (
                config['job'], args.job))
        exp = make_experiment(config)
    summary = exp.run(progress_hook if args.progress else None)
    return exp, summary


def main(argv=None):
    """
    Entry point, returns the exit status.
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as err:
        sys.stderr.write('%s\n' % err)
        return EXIT_ERROR
    except SystemExit as exc:
        # --help and --version
        return exc.code or EXIT_OK
    if args.verbose:
        logging.getLogger('renewkit').setLevel(logging.DEBUG)
    try:
        exp, summary = run(args)
    except RenewKitException as err:
        sys.stderr.write('%s\n' % err)
        return EXIT_ERROR
    for g in exp.gates:
        sys.stdout.write('%-24s observed %-12.6g threshold %-12.6g %s\n' % (
            g.name, g.observed, g.threshold, 'pass' if g.passed else 'FAIL'))
    sys.stdout.write('artifacts: %s\n' % exp.path)
    if not summary['passed']:
        sys.stderr.write('%s\n' % GateFailure(exp.failed_gates))
        return EXIT_GATE_FAILURE
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
