from typing import Tuple

import numpy as np

from ..geometry import FibrationGeometry, GridSpec, ScalarField, TwoForm, contract, LEAFWISE


def log_hessian(grid: GridSpec, values: np.ndarray, exponents: Tuple[int, int]) -> TwoForm:
    """
    The cylinder Hessian of `log X` for a positive `X = q1^e1 q2^e2 Y` with `Y` smooth and positive up to the
    boundary of the square. The singular factors are differentiated in closed form, only `log Y` is collocated.

    :param grid: The grid
    :param values: Nodal values of `X`
    :param exponents: The vanishing orders `(e1, e2)` of `X` at the fibre and base boundaries
    :return: The Hessian form
    """
    e1, e2 = exponents
    t1, t2 = grid.T1, grid.T2
    smooth = np.log(values / (grid.Q1 ** e1 * grid.Q2 ** e2))

    grad1 = grid.d1(smooth) + e1 * (1 - 2 * t1)
    grad2 = grid.d2(smooth) + e1 * grid.twist * t2 * (1 - 2 * t1) + e2 * (1 - 2 * t2)
    return TwoForm(
        grid,
        grid.d1(grad1),
        (grid.d2(grad1) + grid.d1(grad2)) / 2,
        grid.d2(grad2),
        closed=True,
    )


def leafwise_ricci(geometry: FibrationGeometry) -> TwoForm:
    """
    The curvature `rho = -i ddbar log W11` of the metric induced by `omega` on the vertical bundle. All three
    components are kept: the mixed and horizontal parts are generally nonzero.
    """
    return -log_hessian(geometry.grid, geometry.W.c11, (1, 0))


def leafwise_scalar(geometry: FibrationGeometry, rho: TwoForm = None) -> ScalarField:
    """
    The scalar curvature of `omega` restricted to the fibres, `rho11 / W11`.

    :param geometry: The geometry
    :param rho: The leafwise Ricci form when already known
    :return: The field
    """
    rho = leafwise_ricci(geometry) if rho is None else rho
    return contract(rho, LEAFWISE, geometry)
