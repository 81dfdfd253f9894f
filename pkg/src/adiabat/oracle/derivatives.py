from typing import Callable, Iterable, Tuple

import numpy as np
from scipy import linalg

from ..geometry import FibrationGeometry, ScalarField, shift


Direction = Tuple[ScalarField, ScalarField]


def fd_directional_derivative(functional: Callable[[FibrationGeometry], float], geometry: FibrationGeometry,
                              direction: Direction, step: float) -> float:
    """
    The central difference of a functional along the potential direction `(delta_phi, delta_psi)`.

    :param functional: The functional
    :param geometry: The base point
    :param direction: The pair of potential directions, either may be `None`
    :param step: The step
    :return: `(F(+step) - F(-step)) / (2 step)`
    """
    if not step > 0:
        raise ValueError(f'The step must be positive, got {step}')

    delta_phi, delta_psi = direction

    def moved(sign: float) -> FibrationGeometry:
        return shift(
            geometry,
            None if delta_phi is None else delta_phi * (sign * step),
            None if delta_psi is None else delta_psi * (sign * step),
        )

    return (functional(moved(1.)) - functional(moved(-1.))) / (2 * step)


def richardson_order(pairs: Iterable[Tuple[float, float]]) -> float:
    """
    Fit `|value| ~ C parameter^-p` by least squares in log-log scale.

    :param pairs: `(parameter, value)` pairs, for example `(k, defect)`
    :return: The decay order `p`
    """
    parameters, values = zip(*pairs)
    logs = np.log(np.abs(np.asarray(values, dtype=float)))
    design = np.column_stack([np.log(np.asarray(parameters, dtype=float)), np.ones(len(parameters))])
    solution, _, _, _ = linalg.lstsq(design, logs)
    return float(-solution[0])


def refinement_decays(pairs: Iterable[Tuple[int, float]], floor: float, ratio: float = 4.) -> bool:
    """
    Check that defects decay under grid refinement: every refinement step either lands at or below `floor`, or
    shrinks the defect by at least `ratio` per doubling of the grid size.

    :param pairs: `(n, defect)` pairs in increasing `n`
    :param floor: The tolerance floor
    :param ratio: The required reduction per doubling
    :return: Whether every step decays
    """
    pairs = [(n, abs(defect)) for n, defect in pairs]
    for (coarse_n, coarse), (fine_n, fine) in zip(pairs, pairs[1:]):
        if fine <= floor:
            continue

        if fine * ratio ** np.log2(fine_n / coarse_n) > coarse:
            return False

    return True
