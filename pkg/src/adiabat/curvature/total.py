import numpy as np

from ..geometry import LEAFWISE, TRANSVERSE, FibrationGeometry, ScalarField, contract, laplacian, wedge_density
from .errors import MetricNotPositiveError
from .leafwise import leafwise_ricci, leafwise_scalar, log_hessian
from .transverse import rho_horizontal, transverse_ricci_scalar


def _minimal_eigenvalue(c11: np.ndarray, c12: np.ndarray, c22: np.ndarray) -> np.ndarray:
    return (c11 + c22 - np.hypot(c11 - c22, 2 * c12)) / 2


def total_scalar(geometry: FibrationGeometry, k: float) -> ScalarField:
    """
    The exact scalar curvature of the Kaehler metric `omega_k = omega + k beta` on the total space,
    `tr(G^-1 Ric)` with `Ric = -i ddbar log det G`.

    :param geometry: The geometry
    :param k: The adiabatic parameter
    :return: The field
    """
    grid = geometry.grid
    metric = geometry.omega_k(k)
    determinant = metric.c11 * metric.c22 - metric.c12 ** 2
    eigenvalue = _minimal_eigenvalue(*metric.components)
    if not np.all(eigenvalue > 0):
        node = tuple(int(i) for i in np.unravel_index(np.argmin(eigenvalue), grid.shape))
        raise MetricNotPositiveError(k, node, float(eigenvalue[node]))

    ricci = -log_hessian(grid, determinant, (1, 1))
    return ScalarField(grid, wedge_density(metric, ricci) / determinant)


def fine_expansion_coefficient(geometry: FibrationGeometry) -> ScalarField:
    """
    The coefficient of `1/k` in the expansion of `S(omega_k)` around `S_F`:
    `S(beta) + Lambda_beta rho_H - Delta_F(Lambda_beta omega)`, with the non-positive leafwise Laplacian.
    """
    _, scalar = transverse_ricci_scalar(geometry)
    contracted = contract(geometry.W, TRANSVERSE, geometry)
    return scalar + rho_horizontal(geometry, leafwise_ricci(geometry)) \
        - laplacian(contracted, LEAFWISE, geometry)


def fine_expansion_defect(geometry: FibrationGeometry, k: float) -> float:
    """
    The sup of `k (S(omega_k) - S_F)` minus its predicted limit, which decays like `1/k`.
    """
    difference = (total_scalar(geometry, k) - leafwise_scalar(geometry)) * k
    return (difference - fine_expansion_coefficient(geometry)).sup()
