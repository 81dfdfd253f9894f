"""
Pointwise and integral identities of the transverse operators, each measured as a defect that vanishes up to
discretization error.
"""
from typing import Dict, Tuple

import numpy as np

from ..curvature import leafwise_ricci, lambda_gap, lichnerowicz_matrix, lichnerowicz_transverse, \
    linearized_twisted, mixed_ricci_pairing, operator_P, scalar_variation, transverse_ricci_scalar, \
    twisted_scalar_pointwise, volume_variation
from ..geometry import BASE_GENERATOR, GLOBAL, OMEGA_BETA, TRANSVERSE, FibrationGeometry, ScalarField, average, \
    contract, gradient_pairing, hessian_form, integrate, laplacian, potentials, shift
from ..oracle import refinement_decays
from ..types import HierarchyMapping
from .context import new_report, perturbed_geometry
from .perturbations import random_perturbation, random_potential, random_potential_profile, sample
from .report import ExperimentReport
from .store import implementation


FD_STEP = 1e-4
SHIFT_AMPLITUDE = .1


def _central_difference(geometry: FibrationGeometry, phi: ScalarField, quantity) -> np.ndarray:
    plus = quantity(shift(geometry, delta_psi=phi * FD_STEP))
    minus = quantity(shift(geometry, delta_psi=phi * -FD_STEP))
    return (plus - minus) / (2 * FD_STEP)


def _volume_density(geometry: FibrationGeometry) -> np.ndarray:
    return OMEGA_BETA.density(geometry)


def identity_defects(geometry: FibrationGeometry, f_coefficients: Tuple[float, ...],
                     g_coefficients: Tuple[float, ...]) -> Dict[str, float]:
    """
    Measure every identity on one geometry with two transverse test potentials.

    :param geometry: The geometry
    :param f_coefficients: The coefficients of the first test potential
    :param g_coefficients: The coefficients of the second test potential
    :return: The defects, by identity name
    """
    grid = geometry.grid
    f = sample(grid, random_potential_profile(f_coefficients), base_only=True)
    g = sample(grid, random_potential_profile(g_coefficients), base_only=True)
    v = potentials(BASE_GENERATOR, geometry)
    rho = leafwise_ricci(geometry)

    def total(field: ScalarField) -> float:
        return integrate(field, OMEGA_BETA, GLOBAL, geometry)

    defects = {}
    delta_f = laplacian(f, TRANSVERSE, geometry)
    defects['integration_by_parts'] = abs(total(g * delta_f)
                                          + total(gradient_pairing(f, g, TRANSVERSE, geometry)) / 2)
    defects['laplacian_characterization'] = (delta_f - contract(hessian_form(f), TRANSVERSE, geometry)).sup()

    moved = shift(geometry, delta_psi=f * SHIFT_AMPLITUDE)
    difference = potentials(BASE_GENERATOR, moved).h - (v.h + v.action(f * SHIFT_AMPLITUDE))
    defects['potential_shift'] = (difference - average(difference, moved)).sup()

    twisted = _central_difference(geometry, f, lambda moved_geometry: twisted_scalar_pointwise(moved_geometry).values)
    defects['linearization'] = np.max(np.abs(twisted - linearized_twisted(geometry, f, rho).values))

    scalar = _central_difference(geometry, f, lambda moved_geometry: transverse_ricci_scalar(moved_geometry)[1].values)
    defects['scalar_variation'] = np.max(np.abs(scalar - scalar_variation(geometry, f).values))

    volume = _central_difference(geometry, f, _volume_density) / _volume_density(geometry)
    defects['volume_variation'] = np.max(np.abs(volume - volume_variation(geometry, f).values))

    defects['integral_identity'] = abs(total(v.h * operator_P(geometry, f, rho))
                                       + mixed_ricci_pairing(geometry, v, f, rho))
    defects['kernel'] = lichnerowicz_transverse(geometry, v.h).sup()
    defects['kernel_matrix'] = float(np.max(np.abs(lichnerowicz_matrix(geometry) @ v.h.base_values)))
    defects['self_adjoint'] = abs(total(f * lichnerowicz_transverse(geometry, g))
                                  - total(g * lichnerowicz_transverse(geometry, f)))
    return {name: float(value) for name, value in defects.items()}


@implementation('identity-suite')
def identity_suite(config: HierarchyMapping) -> ExperimentReport:
    """
    The identities of the transverse Laplacian, the holomorphy potentials, the linearized twisted curvature and the
    Lichnerowicz operator on a seeded mixed perturbation, at `grid.n` and along `grid.refinement`.
    """
    report = new_report('identity-suite', config)
    bound = config['tolerance.identity']
    rng = np.random.default_rng(config['seed'])
    perturbation = random_perturbation(rng)
    f_coefficients, g_coefficients = random_potential(rng), random_potential(rng)

    geometry = perturbed_geometry(config, perturbation)
    report.metrics['fingerprint'] = geometry.fingerprint
    for name, defect in identity_defects(geometry, f_coefficients, g_coefficients).items():
        report.check(name, defect, bound)

    gap, self_intersection = lambda_gap(geometry)
    report.metrics['omega_squared'] = self_intersection
    if abs(self_intersection) <= bound:
        report.check('lambda_gap', gap, bound)
    else:
        report.metrics['lambda_gap'] = gap

    refinement = report.table('refinement', 'n', 'identity', 'defect')
    history = {}
    for n in config['grid.refinement']:
        defects = identity_defects(perturbed_geometry(config, perturbation, n), f_coefficients, g_coefficients)
        for name, defect in defects.items():
            refinement.add(n, name, defect)
            history.setdefault(name, []).append((n, defect))

    for name, pairs in history.items():
        report.verdicts[f'refinement[{name}]'] = refinement_decays(pairs, bound)

    return report
