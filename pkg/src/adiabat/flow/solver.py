"""
An explicit coupled flow on the potentials `(phi, psi)` whose fixed points are fibrewise cscK forms `omega` with
constant twisted transverse scalar curvature.
"""
import logging
from typing import List, Tuple

import numpy as np
from scipy import linalg

from ..curvature import MetricNotPositiveError
from ..geometry import BASE_ONLY, FibrationGeometry, GridSpec, PositivityError, ScalarField, average, shift
from .errors import NonConvergenceError, StepSizeError
from .state import FlowState, TracePoint


logger = logging.getLogger(__name__)

DEFAULT_RETRIES = 8
DEFAULT_SAFETY = 1.5
# Relative slack before an energy increase rejects a step
ENERGY_SLACK = 1e-8
ENERGY_FLOOR = 1e-20


def residuals(geometry: FibrationGeometry) -> Tuple[float, float]:
    """
    The sup-norm defects `(r_fibre, r_base)` of a geometry.

    :param geometry: The geometry
    :return: The leafwise and the twisted base residuals
    """
    return FlowState(geometry).defects.residuals


def _spectral_radius(grid: GridSpec, axis: int) -> float:
    derivative, q = (grid.D1, grid.q1) if axis == 0 else (grid.D2, grid.q2)
    operator = derivative @ np.diag(q) @ derivative
    return float(np.max(np.abs(linalg.eigvals(operator))))


def stable_dt(grid: GridSpec, scale: float = 1., safety: float = DEFAULT_SAFETY) -> float:
    """
    An explicit step bound from the spectrum of the discrete Laplacian `d/dtau (q d/dtau)` on both axes. The flow
    linearizes to `-(L^2 + 2L)` with `L` that Laplacian divided by the metric scale.

    :param grid: The grid
    :param scale: The smallest ratio of the metric coefficients to the round ones
    :param safety: Multiplier of the step bound
    :return: The step
    """
    radius = max(_spectral_radius(grid, 0), _spectral_radius(grid, 1)) / scale
    return safety / (radius ** 2 + 2 * radius)


def metric_scale(geometry: FibrationGeometry) -> float:
    grid = geometry.grid
    return float(min(np.min(geometry.W.c11 / grid.Q1), np.min(geometry.B.c22 / grid.Q2)))


def _updates(state: FlowState) -> Tuple[ScalarField, ScalarField]:
    geometry = state.geometry
    fibre = state.defects.fibre
    base = state.defects.base
    base = ScalarField(geometry.grid, (base - average(base, geometry)).values, BASE_ONLY)
    return fibre, base


def step(state: FlowState, dt: float, retries: int = DEFAULT_RETRIES) -> FlowState:
    """
    Advance the flow by one explicit step, halving `dt` while the update breaks positivity or produces non-finite
    curvature.

    :param state: The current state
    :param dt: The first step to try
    :param retries: The number of halvings allowed
    :return: The next state
    """
    if dt <= 0:
        raise ValueError(f'The step must be positive, got {dt}')

    fibre, base = _updates(state)
    tried = []
    reason = ''
    for _ in range(retries + 1):
        tried.append(dt)
        try:
            moved = shift(state.geometry, fibre * dt, base * dt)
            candidate = FlowState(moved, state.t + dt, state.history, dt)
        except (PositivityError, MetricNotPositiveError) as e:
            reason = str(e)
        else:
            if candidate.finite:
                return candidate

            reason = 'non-finite curvature'

        logger.debug('Rejected dt = %.3g at t = %.6g: %s', dt, state.t, reason)
        dt /= 2

    raise StepSizeError(tried, (state.r_fibre, state.r_base), reason)


def solve(geometry: FibrationGeometry, dt: float = 0., max_steps: int = 10000, tol: float = 1e-6,
          retries: int = DEFAULT_RETRIES) -> Tuple[FibrationGeometry, List[TracePoint]]:
    """
    Run the flow until both residuals are below `tol`.

    :param geometry: The initial geometry
    :param dt: The step; `0` picks `stable_dt` for the initial metric
    :param max_steps: The number of accepted steps allowed
    :param tol: The residual tolerance
    :param retries: The number of halvings allowed per step, for positivity and for energy increases
    :return: The final geometry and the residual trace
    """
    state = FlowState(geometry)
    if dt <= 0:
        dt = stable_dt(geometry.grid, metric_scale(geometry))

    logger.debug('Flow from r_fibre = %.3g, r_base = %.3g with dt = %.3g', state.r_fibre, state.r_base, dt)
    steps = 0
    while state.residual >= tol:
        if steps >= max_steps:
            raise NonConvergenceError(list(state.history), tol, state.geometry)

        trial = dt
        for _ in range(retries + 1):
            candidate = step(state, trial, retries)
            if candidate.energy <= state.energy * (1 + ENERGY_SLACK) + ENERGY_FLOOR:
                break

            trial /= 2
        else:
            raise StepSizeError([trial], (state.r_fibre, state.r_base), 'energy keeps increasing')

        state = candidate
        steps += 1
        if steps % 100 == 0:
            logger.debug('Step %d: t = %.6g, r_fibre = %.3g, r_base = %.3g', steps, state.t, state.r_fibre,
                         state.r_base)

    logger.info('Flow converged after %d steps (r_fibre = %.3g, r_base = %.3g)', steps, state.r_fibre,
                state.r_base)
    return state.geometry, list(state.history)
