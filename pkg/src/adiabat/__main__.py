from .experiments import ConfigError, ExperimentFailed, apply_overrides, experiments, load_config, run
from functools import partial
import argparse
import logging
import sys


LOG_FORMAT = '%(name)s:%(levelname)s:%(message)s'

EXIT_FAILED = 1
EXIT_CONFIG = 2


def _configure_logging(args: argparse.Namespace):
    """
    Configure the `adiabat` loggers once, from `--quiet` and `--verbose`.

    :param args: The user supplied arguments
    """
    level = logging.WARNING if args.quiet else logging.DEBUG if args.verbose else logging.INFO
    logging.basicConfig(format=LOG_FORMAT)
    logging.getLogger('adiabat').setLevel(level)


def _summary(experiment) -> str:
    lines = (experiment.__doc__ or '').strip().splitlines()
    return lines[0] if lines else ''


def _run(experiment: str, args: argparse.Namespace) -> int:
    """
    The implementation of every experiment command.

    :param experiment: The experiment name, or `None` to run the one named by the config
    :param args: The user supplied arguments
    :return: The exit code
    """
    try:
        config = apply_overrides(load_config(args.config), experiment, args.grid, args.seed, args.out)
        report = run(config)
    except ConfigError as err:
        print(f'adiabat: {err}', file=sys.stderr)
        return EXIT_CONFIG
    except ExperimentFailed as err:
        print(f'adiabat: {err}', file=sys.stderr)
        return EXIT_FAILED

    if not args.quiet:
        print(f'{report.experiment}: passed {len(report.verdicts)} checks')

    return 0


def main():
    """
    Main entry point of adiabat, runs the named experiments and writes their reports
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='A key = value config file. Defaults apply to every missing key')
    common.add_argument('--out', help='The report directory, overrides the output key')
    common.add_argument('--grid', type=int, help='Collocation nodes per axis, overrides grid.n')
    common.add_argument('--seed', type=int, help='Seed of the random perturbations, overrides seed')
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument('-q', '--quiet', action='store_true', help='Only log warnings and errors')
    verbosity.add_argument('-v', '--verbose', action='store_true', help='Log debug messages')

    parser = argparse.ArgumentParser(description='Coupled curvature experiments on torus-symmetric fibrations')
    subparsers = parser.add_subparsers(title='Experiments')

    for name in experiments:
        experiment_subparser = subparsers.add_parser(name, parents=[common], help=_summary(experiments[name]))
        experiment_subparser.set_defaults(operation=partial(_run, name))

    # 'run' command, the experiment comes from the config
    run_subparser = subparsers.add_parser('run', parents=[common], help='Run the experiment named in the config')
    run_subparser.set_defaults(operation=partial(_run, None))

    # Parse arguments
    args = parser.parse_args()
    try:
        operation = args.operation
    except AttributeError:
        parser.print_usage()
        sys.exit(-1)

    _configure_logging(args)
    result = operation(args)
    if result is None:
        sys.exit(0)
    else:
        sys.exit(result)


if '__main__' == __name__:
    main()
