"""
Metric-free Futaki invariants of toric classes from the boundary formula. Only the polygon and the affine function
enter, so two metrics in the same class always get bit-identical predictions.
"""
import logging
import math
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple, Union

import sympy

from .errors import CalibrationError, NonAffineFunctionError
from .polytope import PolytopeData


logger = logging.getLogger(__name__)

x, y = sympy.symbols('x y', real=True)

EXPECTED_CONSTANT = (2 * math.pi) ** 2


class AffineFunction(NamedTuple):
    """
    `constant + slope_x * x + slope_y * y` with exact coefficients.
    """
    constant: Fraction
    slope_x: Fraction
    slope_y: Fraction

    def __call__(self, point) -> Fraction:
        return self.constant + self.slope_x * point[0] + self.slope_y * point[1]

    @classmethod
    def of_generator(cls, gen: Tuple[int, int]) -> 'AffineFunction':
        """
        The Hamiltonian of the generator `(a1, a2)` on the polygon, `a1 y + a2 x`.
        """
        a1, a2 = gen
        return cls(Fraction(0), Fraction(a2), Fraction(a1))


def _to_fraction(value) -> Fraction:
    rational = sympy.nsimplify(value, rational=True)
    return Fraction(int(rational.p), int(rational.q))


def affine_function(function: Union[AffineFunction, sympy.Expr, str]) -> AffineFunction:
    """
    Parse an affine function of the polygon coordinates `x`, `y`.

    :param function: An `AffineFunction`, a sympy expression or a string
    :return: The `AffineFunction`
    """
    if isinstance(function, AffineFunction):
        return function

    expression = sympy.sympify(function, locals={'x': x, 'y': y})
    try:
        polynomial = sympy.Poly(expression, x, y)
    except sympy.PolynomialError as err:
        raise NonAffineFunctionError(f'{expression} is not a polynomial in x and y') from err

    if polynomial.total_degree() > 1 or polynomial.free_symbols - {x, y}:
        raise NonAffineFunctionError(f'{expression} is not affine')

    return AffineFunction(
        _to_fraction(polynomial.coeff_monomial(1)),
        _to_fraction(polynomial.coeff_monomial(x)),
        _to_fraction(polynomial.coeff_monomial(y)),
    )


def boundary_integral(polytope: PolytopeData, function: AffineFunction) -> Fraction:
    return sum((facet.measure * function(facet.midpoint()) for facet in polytope.facets), Fraction(0))


def interior_integral(polytope: PolytopeData, function: AffineFunction) -> Fraction:
    return polytope.area * function(polytope.centroid)


def toric_scalar_average(polytope: PolytopeData) -> Fraction:
    """
    The average scalar curvature `|dP| / |P|` of the class of the polygon.
    """
    return polytope.boundary_measure / polytope.area


def toric_futaki_raw(polytope: PolytopeData, function) -> Fraction:
    """
    `2 int_dP f dsigma - 2 |dP| / |P| int_P f dmu`, exactly.
    """
    function = affine_function(function)
    return 2 * boundary_integral(polytope, function) \
        - 2 * toric_scalar_average(polytope) * interior_integral(polytope, function)


class Calibration(NamedTuple):
    """
    The frozen normalization constant of the boundary formula and the datum it was fitted on.
    """
    constant: float
    k: Optional[float] = None
    gen: Optional[Tuple[int, int]] = None


EXPECTED_CALIBRATION = Calibration(EXPECTED_CONSTANT)


def calibrate(measured: float, polytope: PolytopeData, function, k: float = None,
              gen: Tuple[int, int] = None) -> Calibration:
    """
    Fit the global constant of the boundary formula against one measured classical Futaki invariant.

    :param measured: The measured invariant
    :param polytope: The polygon of the measured class
    :param function: The affine function of the measured generator
    :param k: The adiabatic parameter of the datum, recorded
    :param gen: The generator of the datum, recorded
    :return: The calibration
    """
    raw = toric_futaki_raw(polytope, function)
    if raw == 0:
        raise CalibrationError('Cannot calibrate on a class where the boundary formula vanishes')

    calibration = Calibration(measured / float(raw), k, gen)
    logger.debug('Calibrated the boundary formula: %r (expected %.12g)', calibration, EXPECTED_CONSTANT)
    return calibration


def toric_futaki_oracle(polytope: PolytopeData, function,
                        calibration: Calibration = EXPECTED_CALIBRATION) -> float:
    """
    The calibrated boundary formula prediction of the classical Futaki invariant.

    :param polytope: The polygon of the class
    :param function: An affine function
    :param calibration: The calibration to apply
    :return: The prediction
    """
    return calibration.constant * float(toric_futaki_raw(polytope, function))
