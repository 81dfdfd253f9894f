import numpy as np

from ..curvature import CurvatureBundle, lambda_gap, total_scalar
from ..flow import residuals
from ..geometry import GridSpec, ScalarField, make_product_geometry
from ..invariants import futaki_record
from ..oracle import closed_form_reference
from ..types import HierarchyMapping
from .context import GENERATORS, configured_geometry, generator_name, new_report
from .report import ExperimentReport, Table
from .store import implementation


def _compare_field(report: ExperimentReport, table: Table, name: str, field: ScalarField, expected: float,
                   bound: float):
    deviation = np.abs(field.values - expected)
    node = np.unravel_index(np.argmax(deviation), deviation.shape)
    table.add(name, float(field.values[node]), expected, float(deviation[node]))
    report.check(name, deviation[node], bound)


def _compare_value(report: ExperimentReport, table: Table, name: str, value: float, expected: float,
                   bound: float):
    table.add(name, float(value), expected, abs(value - expected))
    report.check(name, value - expected, bound)


@implementation('round-baseline')
def round_baseline(config: HierarchyMapping) -> ExperimentReport:
    """
    Every curvature quantity and invariant of the round product against its closed form.
    """
    report = new_report('round-baseline', config)
    kappa = config['provider.kappa']
    bound = config['tolerance.round']
    geometry = make_product_geometry(GridSpec(config['grid.n']), kappa=kappa)
    curvature = CurvatureBundle(geometry)
    fibre = closed_form_reference('round_product')
    with_k = closed_form_reference('round_product_k')
    base_scalar = with_k.value('S_beta', kappa=kappa)

    table = report.table('quantities', 'quantity', 'computed', 'reference', 'error')
    _compare_field(report, table, 'S_F', curvature.S_F, fibre.value('S_F'), bound)
    _compare_field(report, table, 'S_beta', curvature.S_beta, base_scalar, bound)
    _compare_field(report, table, 'twisted', curvature.twisted, base_scalar, bound)
    alpha = max(np.max(np.abs(component)) for component in curvature.alpha_pi.components)
    _compare_value(report, table, 'alpha_pi', alpha, fibre.value('alpha_pi'), bound)
    _compare_value(report, table, 'S_F_hat', curvature.S_F_hat, fibre.value('S_F'), bound)
    _compare_value(report, table, 'lambda', curvature.lam, base_scalar, bound)
    _compare_value(report, table, 'S_pi_hat', curvature.S_pi_hat, base_scalar, bound)

    for k in config['ks']:
        expected = with_k.value('S_k', k=k, kappa=kappa)
        _compare_field(report, table, f'S_k[{k:g}]', total_scalar(geometry, k), expected, bound)
        _compare_value(report, table, f'S_k_hat[{k:g}]', curvature.S_k_hat(k), expected, bound)

    for gen in GENERATORS:
        record = futaki_record(geometry, gen, config['ks'])
        name = generator_name(gen)
        for route in ('transverse', 'submersion', 'moment_pairing', 'leading_term'):
            _compare_value(report, table, f'{route}[{name}]', getattr(record, route), 0., bound)

        for k, value in record.classical_k.items():
            _compare_value(report, table, f'classical[{name}, {k:g}]', value / (2 * k), 0., bound)

    return report


@implementation('compute')
def compute(config: HierarchyMapping) -> ExperimentReport:
    """
    One-shot evaluation of the averages, residuals and Futaki records of the configured geometry.
    """
    report = new_report('compute', config)
    bound = config['tolerance.identity']
    geometry = configured_geometry(config)
    curvature = CurvatureBundle(geometry)

    gap, self_intersection = lambda_gap(geometry)
    r_fibre, r_base = residuals(geometry)
    report.metrics.update({
        'fingerprint': geometry.fingerprint,
        'S_F_hat': curvature.S_F_hat,
        'lambda': curvature.lam,
        'S_pi_hat': curvature.S_pi_hat,
        'lambda_gap': gap,
        'omega_squared': self_intersection,
        'r_fibre': r_fibre,
        'r_base': r_base,
    })

    averages = report.table('averages', 'k', 'S_k_hat', 'k_expansion_defect')
    for k in config['ks']:
        S_k_hat = curvature.S_k_hat(k)
        averages.add(k, S_k_hat, abs(k * (S_k_hat - curvature.S_F_hat) - curvature.lam))

    futaki = report.table('futaki', 'generator', 'transverse', 'submersion', 'moment_pairing', 'leading_term',
                          'fibre_term', 'twisted_term', 'omega_squared_term')
    classical = report.table('classical', 'generator', 'k', 'classical', 'normalized')
    for gen in GENERATORS:
        record = futaki_record(geometry, gen, config['ks'])
        name = generator_name(gen)
        futaki.add(name, record.transverse, record.submersion, record.moment_pairing, record.leading_term,
                   record.terms['fibre'], record.terms['twisted'], record.terms['omega_squared'])
        for k, value in record.classical_k.items():
            classical.add(name, k, value, value / (2 * k))

        report.check(f'route_spread[{name}]', record.route_spread(), bound)
        report.check(f'leading_term[{name}]', record.leading_term, bound)

    return report
