import logging
import time

from ..types import HierarchyMapping
from .config import apply_overrides
from .context import new_report
from .errors import ConfigError, ExperimentFailed
from .report import ExperimentReport, write_report
from .store import experiments, get, implementation


logger = logging.getLogger(__name__)

VERIFY_ALL = ('round-baseline', 'compute', 'invariance-sweep', 'adiabatic-sweep', 'fine-expansion',
              'identity-suite', 'solve')


def execute(config: HierarchyMapping) -> ExperimentReport:
    """
    Run the configured experiment without writing anything.

    :param config: The config
    :return: The report, timed
    """
    name = config['experiment']
    try:
        experiment = get(name)
    except KeyError as err:
        raise ConfigError(f'Unknown experiment {name!r}, known are {", ".join(experiments)}') from err

    logger.info('Running %s', name)
    start = time.perf_counter()
    report = experiment(config)
    report.timing = time.perf_counter() - start
    logger.info('%s %s in %.3g seconds', name, 'passed' if report.passed else 'failed', report.timing)
    return report


def run(config: HierarchyMapping) -> ExperimentReport:
    """
    Run the configured experiment and write its report under `output`. Raises `ExperimentFailed` after writing
    when a verdict failed.

    :param config: The config
    :return: The report
    """
    report = execute(config)
    write_report(report, config['output'])
    if not report.passed:
        raise ExperimentFailed(report.experiment, report.failed)

    return report


@implementation('verify-all')
def verify_all(config: HierarchyMapping) -> ExperimentReport:
    """
    Every experiment with the same config, each writing its own report, summarized in one table.
    """
    report = new_report('verify-all', config)
    summary = report.table('summary', 'experiment', 'verdict', 'passed')
    for name in VERIFY_ALL:
        single = execute(apply_overrides(config, experiment=name))
        write_report(single, config['output'])
        for verdict, passed in single.verdicts.items():
            report.verdicts[f'{name}.{verdict}'] = passed
            summary.add(name, verdict, passed)

    return report
