from typing import NamedTuple, Tuple

import numpy as np

from ..curvature import leafwise_ricci, leafwise_scalar, twisted_average, twisted_base_scalar
from ..geometry import GLOBAL, OMEGA_BETA, FibrationGeometry, ScalarField, fibre_average, integrate


class Defects(NamedTuple):
    """
    The two defect fields of the coupled equations: the leafwise scalar curvature minus its fibre averages, and
    the fibre-averaged twisted scalar curvature minus its mean.
    """
    fibre: ScalarField
    base: ScalarField

    @property
    def residuals(self) -> Tuple[float, float]:
        return self.fibre.sup(), self.base.sup()


def defects(geometry: FibrationGeometry) -> Defects:
    rho = leafwise_ricci(geometry)
    leafwise = leafwise_scalar(geometry, rho)
    twisted = twisted_base_scalar(geometry, rho)
    return Defects(leafwise - fibre_average(leafwise, geometry), twisted - twisted_average(geometry, rho))


def energy(geometry: FibrationGeometry, current: Defects = None) -> float:
    """
    `int (S_F - fibre average)^2 omega ^ beta + int (twisted - S_pi hat)^2 omega ^ beta`.
    """
    current = defects(geometry) if current is None else current
    return integrate(current.fibre * current.fibre, OMEGA_BETA, GLOBAL, geometry) \
        + integrate(current.base * current.base, OMEGA_BETA, GLOBAL, geometry)


class TracePoint(NamedTuple):
    t: float
    dt: float
    r_fibre: float
    r_base: float
    energy: float


class FlowState:
    """
    One accepted point of the flow. States are never mutated; `step` returns a new one.
    """
    def __init__(self, geometry: FibrationGeometry, t: float = 0., history: Tuple[TracePoint, ...] = (),
                 dt: float = 0., current: Defects = None):
        current = defects(geometry) if current is None else current
        self.geometry = geometry
        self.t = t
        self.defects = current
        self.r_fibre, self.r_base = current.residuals
        self.energy = energy(geometry, current)
        self.history = history + (TracePoint(t, dt, self.r_fibre, self.r_base, self.energy),)

    def __repr__(self) -> str:
        return f'FlowState(t={self.t:.6g}, r_fibre={self.r_fibre:.3g}, r_base={self.r_base:.3g})'

    @property
    def residual(self) -> float:
        return max(self.r_fibre, self.r_base)

    @property
    def finite(self) -> bool:
        return bool(np.isfinite(self.r_fibre) and np.isfinite(self.r_base) and np.isfinite(self.energy))
