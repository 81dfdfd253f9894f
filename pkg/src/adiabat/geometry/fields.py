from functools import lru_cache
from typing import Tuple, Union

import numpy as np
import sympy

from .errors import FieldAxisError
from .grid import GridSpec


TOTAL_SPACE = 'total_space'
BASE_ONLY = 'base_only'
FIBRE_PROFILE = 'fibre_profile'
AXES = (TOTAL_SPACE, BASE_ONLY, FIBRE_PROFILE)

# Symbols of the cylinder coordinates, used by symbolic potentials
s1, s2 = sympy.symbols('s1 s2', real=True)


def _combined_axis(first: str, second: str) -> str:
    return first if first == second else TOTAL_SPACE


class ScalarField:
    """
    A torus-invariant function sampled on a grid. Base-only and fibre-profile fields are stored redundantly on the
    full grid and keep their axis tag through arithmetic with fields of the same tag.
    """
    __array_priority__ = 1000

    def __init__(self, grid: GridSpec, values, axis: str = TOTAL_SPACE):
        """
        Initialize the `ScalarField` instance.

        :param grid: The grid the values live on
        :param values: Nodal values, broadcastable to the grid shape
        :param axis: One of `total_space`, `base_only` or `fibre_profile`
        """
        if axis not in AXES:
            raise FieldAxisError(f'Unknown axis tag {repr(axis)}')

        self.grid = grid
        self.values = np.array(np.broadcast_to(np.asarray(values, dtype=float), grid.shape))
        self.axis = axis

    def __repr__(self) -> str:
        return f'ScalarField({self.grid!r}, axis={self.axis!r})'

    @classmethod
    def constant(cls, grid: GridSpec, value: float = 0., axis: str = BASE_ONLY) -> 'ScalarField':
        return cls(grid, np.full(grid.shape, float(value)), axis)

    @classmethod
    def from_function(cls, grid: GridSpec, function, axis: str = TOTAL_SPACE) -> 'ScalarField':
        """
        Sample a function of `(tau1, tau2)`.

        :param grid: The grid
        :param function: A vectorized function of the momentum coordinates
        :param axis: The axis tag of the result
        :return: The sampled field
        """
        return cls(grid, grid.sample(function), axis)

    @classmethod
    def from_base(cls, grid: GridSpec, base_values) -> 'ScalarField':
        return cls(grid, grid.spread(base_values), BASE_ONLY)

    @property
    def base_values(self) -> np.ndarray:
        """
        The values along the base axis. Only meaningful for base-only fields.
        """
        return self.values[0].copy()

    def require(self, axis: str, operation: str):
        if self.axis != axis:
            raise FieldAxisError(f'{operation} needs a {axis} field, got a {self.axis} one')

    def _wrap(self, values: np.ndarray, axis: str) -> 'ScalarField':
        return ScalarField(self.grid, values, axis)

    def _operand(self, other) -> Tuple[np.ndarray, str]:
        if isinstance(other, ScalarField):
            return other.values, _combined_axis(self.axis, other.axis)

        return np.asarray(other, dtype=float), self.axis if np.ndim(other) == 0 else TOTAL_SPACE

    def __add__(self, other):
        values, axis = self._operand(other)
        return self._wrap(self.values + values, axis)

    __radd__ = __add__

    def __sub__(self, other):
        values, axis = self._operand(other)
        return self._wrap(self.values - values, axis)

    def __rsub__(self, other):
        values, axis = self._operand(other)
        return self._wrap(values - self.values, axis)

    def __mul__(self, other):
        values, axis = self._operand(other)
        return self._wrap(self.values * values, axis)

    __rmul__ = __mul__

    def __truediv__(self, other):
        values, axis = self._operand(other)
        return self._wrap(self.values / values, axis)

    def __neg__(self):
        return self._wrap(-self.values, self.axis)

    def sup(self) -> float:
        return float(np.max(np.abs(self.values)))

    def allclose(self, other, atol: float) -> bool:
        values, _ = self._operand(other)
        return bool(np.all(np.abs(self.values - values) <= atol))


class TwoForm:
    """
    A torus-invariant real (1,1)-form, `eta = sum eta_ij ds_i ^ dtheta_j`, stored by its three independent
    components in the cylinder coframe.
    """
    def __init__(self, grid: GridSpec, c11, c12, c22, closed: bool = False):
        self.grid = grid
        self.c11 = np.array(np.broadcast_to(np.asarray(c11, dtype=float), grid.shape))
        self.c12 = np.array(np.broadcast_to(np.asarray(c12, dtype=float), grid.shape))
        self.c22 = np.array(np.broadcast_to(np.asarray(c22, dtype=float), grid.shape))
        self.closed = closed

    def __repr__(self) -> str:
        return f'TwoForm({self.grid!r}, closed={self.closed})'

    @classmethod
    def zero(cls, grid: GridSpec) -> 'TwoForm':
        return cls(grid, 0., 0., 0., closed=True)

    @property
    def components(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.c11, self.c12, self.c22

    def __add__(self, other: 'TwoForm') -> 'TwoForm':
        return TwoForm(self.grid, self.c11 + other.c11, self.c12 + other.c12, self.c22 + other.c22,
                       closed=self.closed and other.closed)

    def __sub__(self, other: 'TwoForm') -> 'TwoForm':
        return TwoForm(self.grid, self.c11 - other.c11, self.c12 - other.c12, self.c22 - other.c22,
                       closed=self.closed and other.closed)

    def __neg__(self) -> 'TwoForm':
        return TwoForm(self.grid, -self.c11, -self.c12, -self.c22, closed=self.closed)

    def scale(self, factor: float) -> 'TwoForm':
        """
        Multiply by a constant; the result stays closed if this form was.
        """
        return TwoForm(self.grid, factor * self.c11, factor * self.c12, factor * self.c22, closed=self.closed)

    def allclose(self, other: 'TwoForm', atol: float) -> bool:
        return all(np.max(np.abs(mine - theirs)) <= atol for mine, theirs in zip(self.components, other.components))

    def closedness_defect(self) -> float:
        """
        The sup of `d2(eta11) - d1(eta12)`, which vanishes for closed invariant forms.
        """
        return float(np.max(np.abs(self.grid.d2(self.c11) - self.grid.d1(self.c12))))


def wedge_density(eta: TwoForm, xi: TwoForm) -> np.ndarray:
    """
    The coefficient of `eta ^ xi` against `ds1 ds2 dtheta1 dtheta2`.

    :param eta: The first form
    :param xi: The second form
    :return: Nodal values
    """
    return eta.c11 * xi.c22 + eta.c22 * xi.c11 - 2 * eta.c12 * xi.c12


@lru_cache(maxsize=64)
def _symbolic_hessian(expression: sympy.Expr):
    derivatives = (
        sympy.diff(expression, s1, 2),
        sympy.diff(expression, s1, s2),
        sympy.diff(expression, s2, 2),
    )
    return tuple(sympy.lambdify((s1, s2), sympy.simplify(derivative), 'numpy') for derivative in derivatives)


def hessian_form(potential: Union[ScalarField, sympy.Expr], grid: GridSpec = None) -> TwoForm:
    """
    The form `i ddbar F` of an invariant potential, whose components are the cylinder Hessian of `F`.

    A nodal potential is differentiated on its grid. A sympy expression in `s1`, `s2` is differentiated
    symbolically and evaluated at the cylinder coordinates of the nodes, which handles potentials that are not
    smooth functions of the momentum coordinates.

    :param potential: A `ScalarField` or a sympy expression in `s1` and `s2`
    :param grid: The grid, needed for symbolic potentials
    :return: The closed form
    """
    if isinstance(potential, ScalarField):
        grid = potential.grid
        values = potential.values
        if potential.axis == BASE_ONLY:
            return TwoForm(grid, 0., 0., grid.d2_base(grid.d2_base(values)), closed=True)

        first = grid.d1(values)
        c11 = grid.d1(first)
        c12 = (grid.d2(first) + grid.d1(grid.d2(values))) / 2
        c22 = grid.d2(grid.d2(values))
        return TwoForm(grid, c11, c12, c22, closed=True)

    if grid is None:
        raise ValueError('A grid is needed to evaluate a symbolic potential')

    coordinates = grid.cylinder_coordinates()
    components = (function(*coordinates) for function in _symbolic_hessian(sympy.sympify(potential)))
    return TwoForm(grid, *components, closed=True)
