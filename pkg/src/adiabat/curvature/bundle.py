from typing import Callable

from ..geometry import FibrationGeometry, ScalarField, TwoForm
from .leafwise import leafwise_ricci, leafwise_scalar
from .transverse import transverse_ricci_scalar
from .twisted import Averages, averages, twisted_base_scalar, twisted_scalar_pointwise, weil_petersson


class CurvatureBundle:
    """
    Every curvature quantity of a geometry, computed once.
    """
    def __init__(self, geometry: FibrationGeometry):
        self.geometry = geometry
        self.rho: TwoForm = leafwise_ricci(geometry)
        self.S_F: ScalarField = leafwise_scalar(geometry, self.rho)
        self.ric_beta, self.S_beta = transverse_ricci_scalar(geometry)
        self.alpha_pi: TwoForm = weil_petersson(geometry, self.rho)
        self.twisted: ScalarField = twisted_base_scalar(geometry, self.rho)
        self.twisted_pointwise: ScalarField = twisted_scalar_pointwise(geometry, self.rho)
        self.constants: Averages = averages(geometry)

    def __repr__(self) -> str:
        return f'CurvatureBundle({self.geometry!r})'

    @property
    def S_F_hat(self) -> float:
        return self.constants.leafwise

    @property
    def lam(self) -> float:
        return self.constants.adiabatic

    @property
    def S_pi_hat(self) -> float:
        return self.constants.twisted

    @property
    def S_k_hat(self) -> Callable[[float], float]:
        return self.constants.total
