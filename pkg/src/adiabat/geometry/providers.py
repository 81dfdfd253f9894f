"""
Reference fibrations. Each provider knows the reference forms of its testbed in closed form, in the momentum
coordinates of its chart, together with the moment maps and the moment polytope of the reference class.
"""
import numbers
from fractions import Fraction

import numpy as np
import sympy

from ..types import ObjectFactory
from .errors import ProviderError
from .fields import ScalarField, TwoForm, s1, s2
from .fibration import FibrationGeometry
from .grid import GridSpec


providers = ObjectFactory()


def _fubini_study(s: sympy.Symbol) -> sympy.Expr:
    return sympy.log(1 + sympy.exp(s))


class Provider:
    """
    Base class of the reference providers.
    """
    name = None
    twist = 0

    def __init__(self, kappa: float):
        if not kappa > 0:
            raise ProviderError(f'The base scale must be positive, got {kappa}')

        self.kappa = float(kappa)

    def __repr__(self) -> str:
        arguments = ', '.join(f'{key}={value!r}' for key, value in self.params.items())
        return f'{type(self).__name__}({arguments})'

    @property
    def params(self) -> dict:
        raise NotImplementedError()

    def chart(self, grid: GridSpec) -> GridSpec:
        if grid.twist == self.twist:
            return grid

        return GridSpec(grid.n1, grid.n2, twist=self.twist)

    def beta_reference(self, grid: GridSpec) -> TwoForm:
        return TwoForm(grid, 0., 0., self.kappa * grid.Q2, closed=True)

    def beta_moment(self, grid: GridSpec) -> np.ndarray:
        return self.kappa * grid.T2

    def beta_potential(self) -> sympy.Expr:
        return self.kappa * _fubini_study(s2)

    def omega_reference(self, grid: GridSpec) -> TwoForm:
        raise NotImplementedError()

    def omega_moments(self, grid: GridSpec):
        raise NotImplementedError()

    def omega_potential(self) -> sympy.Expr:
        raise NotImplementedError()

    def polytope(self, k):
        raise NotImplementedError()

    def geometry(self, grid: GridSpec, phi: ScalarField = None, psi: ScalarField = None) -> FibrationGeometry:
        return FibrationGeometry(self, grid, phi, psi)


@providers.builder('product')
class ProductProvider(Provider):
    """
    The round `P1 x P1` with both factors of area `2 pi`, `beta` scaled by `kappa`.
    """
    name = 'product'

    @property
    def params(self) -> dict:
        return {'kappa': self.kappa}

    def omega_reference(self, grid: GridSpec) -> TwoForm:
        return TwoForm(grid, grid.Q1, 0., 0., closed=True)

    def omega_moments(self, grid: GridSpec):
        return np.array(grid.T1), np.zeros(grid.shape)

    def omega_potential(self) -> sympy.Expr:
        return _fubini_study(s1)

    def polytope(self, k):
        from ..oracle.polytope import rectangle

        return rectangle(Fraction(1), Fraction(k) * Fraction(self.kappa))


@providers.builder('hirzebruch')
class HirzebruchProvider(Provider):
    """
    The Hirzebruch surface `P(O + O(a))` over `P1`. The fibre coordinate of the chart is sheared along the base by
    the twist, so that the reference forms are polynomial in the momentum coordinates. `omega` is normalized in
    the class with vanishing self-intersection and `beta` is `b` times the pulled back Fubini-Study form.
    """
    name = 'hirzebruch'

    def __init__(self, a: int = 1, b: float = 2.0):
        if not isinstance(a, numbers.Integral) or a < 0:
            raise ProviderError(f'The twist must be a non-negative integer, got {a!r}')

        if not b > a / 2:
            raise ProviderError(f'b = {b} is too small for a = {a}: omega + beta is only positive for b > a / 2')

        super().__init__(b)
        self.a = int(a)
        self.twist = self.a

    @property
    def b(self) -> float:
        return self.kappa

    @property
    def params(self) -> dict:
        return {'a': self.a, 'b': self.b}

    def omega_reference(self, grid: GridSpec) -> TwoForm:
        a, t1, t2, q1, q2 = self.a, grid.T1, grid.T2, grid.Q1, grid.Q2
        return TwoForm(
            grid,
            q1,
            a * t2 * q1,
            a * q2 * (t1 - 0.5) + a ** 2 * t2 ** 2 * q1,
            closed=True,
        )

    def omega_moments(self, grid: GridSpec):
        return np.array(grid.T1), self.a * grid.T2 * (grid.T1 - 0.5)

    def omega_potential(self) -> sympy.Expr:
        a = sympy.Integer(self.a)
        base = _fubini_study(s2)
        return sympy.log(1 + sympy.exp(s1 + a * base)) - a / 2 * base

    def polytope(self, k):
        from ..oracle.polytope import trapezoid

        return trapezoid(Fraction(k) * Fraction(self.b), self.a)


def make_product_geometry(grid: GridSpec, phi: ScalarField = None, psi: ScalarField = None,
                          kappa: float = 1.0) -> FibrationGeometry:
    """
    The product testbed with `omega` the fibre Fubini-Study form plus `i ddbar phi` and `beta` the base one,
    scaled by `kappa`, plus `i ddbar psi`.

    :param grid: The collocation grid
    :param phi: The omega potential perturbation
    :param psi: The beta potential perturbation, base only
    :param kappa: The scale of beta
    :return: The geometry
    """
    return providers.create('product', kappa=kappa).geometry(grid, phi, psi)


def make_hirzebruch_geometry(grid: GridSpec, a: int = 1, b: float = 2.0, phi: ScalarField = None,
                             psi: ScalarField = None) -> FibrationGeometry:
    """
    The Hirzebruch testbed. `grid` is re-charted with twist `a`.
    """
    return providers.create('hirzebruch', a=a, b=b).geometry(grid, phi, psi)


def make_geometry(name: str, grid: GridSpec, phi: ScalarField = None, psi: ScalarField = None,
                  **params) -> FibrationGeometry:
    """
    Build a geometry from a registered provider name.

    :param name: The provider name
    :param grid: The collocation grid
    :param phi: The omega potential perturbation
    :param psi: The beta potential perturbation
    :param params: The provider parameters
    :return: The geometry
    """
    try:
        provider = providers.create(name, **params)
    except ValueError as err:
        raise ProviderError(f'Unknown provider {repr(name)}') from err

    return provider.geometry(grid, phi, psi)
