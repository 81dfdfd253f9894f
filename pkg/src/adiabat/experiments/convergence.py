import logging

from ..curvature import leafwise_scalar
from ..flow import NonConvergenceError, solve as solve_flow
from ..flow.solver import ENERGY_FLOOR, ENERGY_SLACK
from ..geometry import potentials
from ..invariants import transverse_futaki
from ..oracle import closed_form_reference
from ..types import HierarchyMapping
from .context import GENERATORS, configured_geometry, generator_name, new_report
from .report import ExperimentReport
from .store import implementation


logger = logging.getLogger(__name__)


@implementation('solve')
def solve(config: HierarchyMapping) -> ExperimentReport:
    """
    Run the coupled flow from the configured geometry on a `flow.n` grid. On the product the flow must reach the
    round metric; on twisted providers a stalled base residual is reported, not failed.
    """
    report = new_report('solve', config)
    tol = config['flow.tol']
    product = config['provider.name'] == 'product'
    geometry = configured_geometry(config, config['flow.n'])

    try:
        final, trace = solve_flow(geometry, config['flow.dt'], config['flow.max_steps'], tol, config['flow.retries'])
        converged = True
    except NonConvergenceError as err:
        final, trace = err.geometry, err.trace
        converged = False
        level = logging.ERROR if product else logging.WARNING
        logger.log(level, '%s', err)

    table = report.table('trace', 'step', 't', 'dt', 'r_fibre', 'r_base', 'energy')
    for index, point in enumerate(trace):
        table.add(index, point.t, point.dt, point.r_fibre, point.r_base, point.energy)

    last = trace[-1]
    report.metrics.update({'steps': len(trace) - 1, 't': last.t, 'r_fibre': last.r_fibre, 'r_base': last.r_base})
    report.verdicts['r_fibre'] = last.r_fibre < tol

    # The energy may rise only during the first tenth of the run
    energies = [point.energy for point in trace[len(trace) // 10:]]
    report.verdicts['energy_monotone'] = all(later <= earlier * (1 + ENERGY_SLACK) + ENERGY_FLOOR
                                              for earlier, later in zip(energies, energies[1:]))

    if product:
        report.verdicts['converged'] = converged
        # S_F is unchanged by fibre automorphisms over the base, W11 is not
        round_value = closed_form_reference('round_product').value('S_F')
        report.check('round_fibre', (leafwise_scalar(final) - round_value).sup(), 10 * tol)
        for gen in GENERATORS:
            report.check(f'transverse[{generator_name(gen)}]', transverse_futaki(final, potentials(gen, final)),
                         tol)
    else:
        report.metrics['converged'] = converged

    return report
