"""
The Weil-Petersson form of the fibration, the average curvature constants and the twisted scalar curvature of
the base.
"""
import logging
from typing import Callable, NamedTuple, Tuple

import numpy as np

from ..geometry import BASE_ONLY, GLOBAL, OMEGA_BETA, FibrationGeometry, ScalarField, TwoForm, Weight, \
    integrate, wedge_density
from .leafwise import leafwise_ricci, leafwise_scalar
from .total import total_scalar
from .transverse import rho_horizontal, transverse_ricci_scalar


logger = logging.getLogger(__name__)


def _volume(geometry: FibrationGeometry) -> float:
    return integrate(1., OMEGA_BETA, GLOBAL, geometry)


def leafwise_average(geometry: FibrationGeometry, rho: TwoForm = None) -> float:
    """
    `S_F hat = int rho ^ beta / int omega ^ beta`.
    """
    rho = leafwise_ricci(geometry) if rho is None else rho
    return integrate(1., Weight.custom(rho, geometry.B), GLOBAL, geometry) / _volume(geometry)


def adiabatic_constant(geometry: FibrationGeometry, rho: TwoForm = None) -> float:
    """
    `lambda = int (Ric beta + rho) ^ omega / int omega ^ beta`.
    """
    rho = leafwise_ricci(geometry) if rho is None else rho
    ricci, _ = transverse_ricci_scalar(geometry)
    return integrate(1., Weight.custom(ricci + rho, geometry.W), GLOBAL, geometry) / _volume(geometry)


def _fibre_sums(geometry: FibrationGeometry, values: np.ndarray) -> np.ndarray:
    grid = geometry.grid
    return grid.integrate_fibres(values / grid.Q1)


def weil_petersson(geometry: FibrationGeometry, rho: TwoForm = None) -> TwoForm:
    """
    The Weil-Petersson form `-int rho ^ omega + S_F hat / 2 int omega ^ omega` of the fibre integrals, taken over
    fibres rescaled to unit volume.

    :param geometry: The geometry
    :param rho: The leafwise Ricci form when already known
    :return: A base-only form with only the base slot set
    """
    grid = geometry.grid
    rho = leafwise_ricci(geometry) if rho is None else rho
    average = leafwise_average(geometry, rho)
    integrand = -wedge_density(rho, geometry.W) + average / 2 * wedge_density(geometry.W, geometry.W)
    coefficient = _fibre_sums(geometry, integrand) / _fibre_sums(geometry, geometry.W.c11)
    return TwoForm(grid, 0., 0., grid.spread(coefficient), closed=True)


def weil_petersson_contraction(geometry: FibrationGeometry, rho: TwoForm = None) -> ScalarField:
    """
    `Lambda_beta alpha_pi`.
    """
    alpha = weil_petersson(geometry, rho)
    return ScalarField(geometry.grid, alpha.c22 / geometry.B.c22, BASE_ONLY)


def twisted_scalar_pointwise(geometry: FibrationGeometry, rho: TwoForm = None) -> ScalarField:
    """
    `Lambda_beta(Ric beta + rho_H)` as a field on the total space.
    """
    _, scalar = transverse_ricci_scalar(geometry)
    return rho_horizontal(geometry, rho) + scalar


def twisted_base_scalar(geometry: FibrationGeometry, rho: TwoForm = None) -> ScalarField:
    """
    The twisted scalar curvature of the base, `S(beta) - Lambda_beta alpha_pi` corrected by the fibre integral of
    `(S_F - S_F hat) omega ^ omega`. It is the `omega` fibre average of `twisted_scalar_pointwise`, computed without
    touching `rho_H`.

    :param geometry: The geometry
    :param rho: The leafwise Ricci form when already known
    :return: A base-only field
    """
    grid = geometry.grid
    rho = leafwise_ricci(geometry) if rho is None else rho
    _, scalar = transverse_ricci_scalar(geometry)
    leafwise = leafwise_scalar(geometry, rho)
    defect = (leafwise.values - leafwise_average(geometry, rho)) * geometry.detW()
    correction = _fibre_sums(geometry, defect) / _fibre_sums(geometry, geometry.W.c11)
    values = scalar.base_values - weil_petersson_contraction(geometry, rho).base_values \
        - correction / geometry.B.c22[0]
    return ScalarField.from_base(grid, values)


def twisted_average(geometry: FibrationGeometry, rho: TwoForm = None) -> float:
    """
    `S_pi hat`, the `omega ^ beta` average of `S(beta) - Lambda_beta alpha_pi`.
    """
    _, scalar = transverse_ricci_scalar(geometry)
    twisted = scalar - weil_petersson_contraction(geometry, rho)
    return integrate(twisted, OMEGA_BETA, GLOBAL, geometry) / _volume(geometry)


def total_average(geometry: FibrationGeometry, k: float) -> float:
    """
    `S_k hat = int S(omega_k) omega_k^2 / int omega_k^2`.
    """
    weight = Weight.omega_k(k)
    return integrate(total_scalar(geometry, k), weight, GLOBAL, geometry) / integrate(1., weight, GLOBAL, geometry)


class Averages(NamedTuple):
    leafwise: float
    adiabatic: float
    twisted: float
    total: Callable[[float], float]


def averages(geometry: FibrationGeometry) -> Averages:
    """
    The average curvature constants `(S_F hat, lambda, S_pi hat, k -> S_k hat)`.
    """
    rho = leafwise_ricci(geometry)
    result = Averages(
        leafwise_average(geometry, rho),
        adiabatic_constant(geometry, rho),
        twisted_average(geometry, rho),
        lambda k: total_average(geometry, k),
    )
    logger.debug('Averages of %r: S_F = %.12g, lambda = %.12g, S_pi = %.12g', geometry, *result[:3])
    return result


def omega_self_intersection(geometry: FibrationGeometry) -> float:
    return integrate(1., Weight.custom(geometry.W, geometry.W), GLOBAL, geometry)


def lambda_gap(geometry: FibrationGeometry) -> Tuple[float, float]:
    """
    `lambda - S_pi hat` together with `int omega^2`. The gap equals `S_F hat int omega^2 / (2 int omega ^ beta)`.

    :param geometry: The geometry
    :return: The gap and the self-intersection of omega
    """
    rho = leafwise_ricci(geometry)
    return adiabatic_constant(geometry, rho) - twisted_average(geometry, rho), omega_self_intersection(geometry)
