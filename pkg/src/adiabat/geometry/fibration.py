import hashlib
import logging
from typing import Tuple

import numpy as np

from .errors import FieldAxisError, PositivityError
from .fields import BASE_ONLY, FIBRE_PROFILE, TOTAL_SPACE, ScalarField, TwoForm, hessian_form, wedge_density
from .grid import GridSpec


logger = logging.getLogger(__name__)

TWO_PI = 2 * np.pi
TRANSVERSE = 'transverse'
LEAFWISE = 'leafwise'
FIBRE = 'fibre'
GLOBAL = 'global'


def _check_positive(grid: GridSpec, quantity: str, values: np.ndarray):
    bad = ~(values > 0)
    if np.any(bad):
        node = tuple(int(i) for i in np.argwhere(bad)[0])
        raise PositivityError(quantity, node, (grid.tau1[node[0]], grid.tau2[node[1]]), float(values[node]))


class FibrationGeometry:
    """
    The pair of a relatively Kaehler form `omega` and a transverse Kaehler form `beta` on one of the testbed
    fibrations, generated by the potential perturbations `(phi, psi)` of a reference provider.

    `W` and `B` hold the cylinder components of `omega` and `beta`. `c = W12 / W11` defines the horizontal lift
    `e_H = d2 - c d1`.
    """
    def __init__(self, provider, grid: GridSpec, phi: ScalarField = None, psi: ScalarField = None):
        """
        Initialize the `FibrationGeometry` instance.

        :param provider: The reference provider
        :param grid: The grid; it is re-charted with the provider's twist when needed
        :param phi: The potential perturbation of `omega`
        :param psi: The potential perturbation of `beta`, base only
        """
        grid = provider.chart(grid)
        phi = ScalarField.constant(grid, 0., TOTAL_SPACE) if phi is None else ScalarField(grid, phi.values, phi.axis)
        psi = ScalarField.constant(grid, 0., BASE_ONLY) if psi is None else ScalarField(grid, psi.values, psi.axis)
        psi.require(BASE_ONLY, 'The beta potential')

        self.provider = provider
        self.grid = grid
        self.phi = phi
        self.psi = psi

        self.W = provider.omega_reference(grid) + hessian_form(phi)
        self.B = provider.beta_reference(grid) + hessian_form(psi)
        _check_positive(grid, 'W11', self.W.c11)
        _check_positive(grid, 'B22', self.B.c22)

        self.c = ScalarField(grid, self.W.c12 / self.W.c11)

        fibre_moment, base_moment = provider.omega_moments(grid)
        self.omega_moments = (
            ScalarField(grid, fibre_moment + grid.d1(phi.values)),
            ScalarField(grid, base_moment + grid.d2(phi.values)),
        )
        self.beta_moment = ScalarField(grid, provider.beta_moment(grid) + grid.d2_base(psi.values), BASE_ONLY)

    def __repr__(self) -> str:
        return f'FibrationGeometry({self.provider!r}, {self.grid!r})'

    @property
    def kappa(self) -> float:
        return self.provider.kappa

    @property
    def params(self) -> dict:
        """
        The normalization record of the provider.
        """
        return self.provider.params

    @property
    def potentials(self) -> Tuple[ScalarField, ScalarField]:
        return self.phi, self.psi

    @property
    def fingerprint(self) -> str:
        """
        A digest of the provider, the grid and the potentials.
        """
        digest = hashlib.sha1(repr((self.provider.name, sorted(self.params.items()), self.grid.key)).encode())
        digest.update(self.phi.values.tobytes())
        digest.update(self.psi.values.tobytes())
        return digest.hexdigest()[:16]

    def moment_polytope(self, k):
        """
        The moment polytope of `omega + k beta` for the reference class.

        :param k: The adiabatic parameter, rational values stay exact
        :return: The `PolytopeData`
        """
        return self.provider.polytope(k)

    def omega_k(self, k: float) -> TwoForm:
        return self.W + self.B.scale(k)

    def detW(self) -> np.ndarray:
        return self.W.c11 * self.W.c22 - self.W.c12 ** 2


def shift(geometry: FibrationGeometry, delta_phi: ScalarField = None,
          delta_psi: ScalarField = None) -> FibrationGeometry:
    """
    Move `omega` by `i ddbar delta_phi` and `beta` by `i ddbar delta_psi`.

    :param geometry: The geometry to shift
    :param delta_phi: The change of the omega potential
    :param delta_psi: The change of the beta potential, base only
    :return: The shifted geometry
    """
    grid = geometry.grid
    phi, psi = geometry.phi, geometry.psi
    if delta_phi is not None:
        phi = phi + ScalarField(grid, delta_phi.values, delta_phi.axis)

    if delta_psi is not None:
        delta_psi.require(BASE_ONLY, 'A beta shift')
        psi = ScalarField(grid, psi.values + delta_psi.values, BASE_ONLY)

    return FibrationGeometry(geometry.provider, grid, phi, psi)


def horizontal_component(eta: TwoForm, geometry: FibrationGeometry) -> np.ndarray:
    """
    The coefficient `eta_HH = eta22 - 2c eta12 + c^2 eta11` of `eta` on the horizontal frame pair.
    """
    c = geometry.c.values
    return eta.c22 - 2 * c * eta.c12 + c ** 2 * eta.c11


def split_form(eta: TwoForm, geometry: FibrationGeometry) -> Tuple[TwoForm, TwoForm, TwoForm]:
    """
    Split a form into its leafwise, horizontal and mixed parts with respect to the splitting defined by `omega`.

    The parts are taken in the frame `(d1, e_H)` with `e_H = d2 - c d1`. `eta_F` is the vertical slot of that frame,
    the leafwise projection `eta11 (ds1 + c ds2)^2`, so in the cylinder coframe it reads `eta11 (1, c, c^2)`. It has
    only the `(1, 1)` cylinder slot exactly when `c = 0`, as on the round product.

    :param eta: The form
    :param geometry: The geometry
    :return: The parts `(eta_F, eta_H, eta_mix)`, summing to `eta`
    """
    grid = geometry.grid
    c = geometry.c.values
    mixed = eta.c12 - c * eta.c11

    leafwise = TwoForm(grid, eta.c11, c * eta.c11, c ** 2 * eta.c11)
    horizontal = TwoForm(grid, 0., 0., horizontal_component(eta, geometry))
    remainder = TwoForm(grid, 0., mixed, 2 * c * mixed)
    return leafwise, horizontal, remainder


def contract(eta: TwoForm, which: str, geometry: FibrationGeometry) -> ScalarField:
    """
    The transverse contraction `Lambda_beta eta = eta_HH / B22` or the leafwise one `eta11 / W11`.
    """
    if which == TRANSVERSE:
        return ScalarField(geometry.grid, horizontal_component(eta, geometry) / geometry.B.c22)

    if which == LEAFWISE:
        return ScalarField(geometry.grid, eta.c11 / geometry.W.c11)

    raise ValueError(f'Unknown contraction {repr(which)}')


class Weight:
    """
    The form a density is integrated against: `omega ^ beta`, `omega_k ^ omega_k`, a pair of forms, or `omega`
    alone on the fibres.
    """
    def __init__(self, kind: str, k: float = None, forms: Tuple[TwoForm, TwoForm] = None):
        self.kind = kind
        self.k = k
        self.forms = forms

    def __repr__(self) -> str:
        return f'Weight({self.kind!r}, k={self.k!r})'

    @classmethod
    def omega_beta(cls) -> 'Weight':
        return cls('omega_beta')

    @classmethod
    def omega_k(cls, k: float) -> 'Weight':
        return cls('omega_k', k=k)

    @classmethod
    def custom(cls, eta: TwoForm, xi: TwoForm) -> 'Weight':
        return cls('custom', forms=(eta, xi))

    @classmethod
    def omega(cls) -> 'Weight':
        return cls('omega')

    def density(self, geometry: FibrationGeometry) -> np.ndarray:
        if self.kind == 'omega_beta':
            return wedge_density(geometry.W, geometry.B)

        if self.kind == 'omega_k':
            omega_k = geometry.omega_k(self.k)
            return wedge_density(omega_k, omega_k)

        if self.kind == 'custom':
            return wedge_density(*self.forms)

        raise ValueError(f'{self.kind} is not a top degree weight')


OMEGA_BETA = Weight.omega_beta()


def integrate(density, weight: Weight, domain: str, geometry: FibrationGeometry):
    """
    Integrate an invariant function against a weight form.

    On the whole space the torus contributes `(2 pi)^2`. Along the fibres the result is the coefficient of the
    resulting base form, with the fibre angle's `2 pi` included, so `integrate(1, omega ^ beta, fibre)` is
    `2 pi B22`.

    :param density: A `ScalarField` or a constant
    :param weight: The weight form
    :param domain: `fibre` or `global`
    :param geometry: The geometry
    :return: A base-only `ScalarField` for fibre integrals, a number for global ones
    """
    grid = geometry.grid
    values = density.values if isinstance(density, ScalarField) else np.full(grid.shape, float(density))

    if weight.kind == 'omega':
        if domain != FIBRE:
            raise ValueError('omega alone can only be integrated along the fibres')

        integrand = values * geometry.W.c11
    else:
        integrand = values * weight.density(geometry)

    if domain == FIBRE:
        return ScalarField.from_base(grid, TWO_PI * grid.integrate_fibres(integrand / grid.Q1))

    if domain == GLOBAL:
        return TWO_PI ** 2 * grid.integrate(integrand / (grid.Q1 * grid.Q2))

    raise ValueError(f'Unknown domain {repr(domain)}')


def integrate_base(field: ScalarField, geometry: FibrationGeometry) -> float:
    """
    `int_B f beta` for a base-only field.
    """
    grid = geometry.grid
    return TWO_PI * float(field.values[0] @ (grid.w2 * geometry.B.c22[0] / grid.q2))


def fibre_volumes(geometry: FibrationGeometry) -> np.ndarray:
    """
    The `omega` area of the fibre over every base node.
    """
    grid = geometry.grid
    return TWO_PI * grid.integrate_fibres(geometry.W.c11 / grid.Q1)


def fibre_average(field: ScalarField, geometry: FibrationGeometry) -> ScalarField:
    """
    The `omega` weighted mean of a field over every fibre.

    :param field: The field
    :param geometry: The geometry
    :return: A base-only field
    """
    grid = geometry.grid
    weights = geometry.W.c11 / grid.Q1
    return ScalarField.from_base(grid, grid.integrate_fibres(field.values * weights) / grid.integrate_fibres(weights))


def average(field, geometry: FibrationGeometry, weight: Weight = OMEGA_BETA) -> float:
    """
    The mean of a field against a top degree weight, `omega ^ beta` by default.
    """
    return integrate(field, weight, GLOBAL, geometry) / integrate(1., weight, GLOBAL, geometry)


def laplacian(field: ScalarField, which: str, geometry: FibrationGeometry) -> ScalarField:
    """
    The transverse Laplacian `(Hess f)_HH / B22` of a base-only field, or the leafwise Laplacian
    `d1 d1 f / W11`. Both are non-positive operators.

    :param field: The field
    :param which: `transverse` or `leafwise`
    :param geometry: The geometry
    :return: The Laplacian
    """
    grid = geometry.grid
    if which == TRANSVERSE:
        if field.axis != BASE_ONLY:
            raise FieldAxisError(f'The transverse Laplacian needs a base_only field, got a {field.axis} one')

        return ScalarField(grid, grid.d2_base(grid.d2_base(field.values)) / geometry.B.c22, BASE_ONLY)

    if which == LEAFWISE:
        axis = FIBRE_PROFILE if field.axis == FIBRE_PROFILE else TOTAL_SPACE
        return ScalarField(grid, grid.d1(grid.d1(field.values)) / geometry.W.c11, axis)

    raise ValueError(f'Unknown Laplacian {repr(which)}')


def horizontal_derivative(field: ScalarField, geometry: FibrationGeometry) -> np.ndarray:
    """
    `e_H f = d2 f - c d1 f`, which is the base derivative alone for base-only fields.
    """
    grid = geometry.grid
    if field.axis == BASE_ONLY:
        return grid.d2_base(field.values)

    return grid.d2(field.values) - geometry.c.values * grid.d1(field.values)


def gradient_pairing(f: ScalarField, g: ScalarField, which: str, geometry: FibrationGeometry) -> ScalarField:
    """
    The pointwise pairing `<df, dg>` of the transverse metric or of the leafwise metric.
    """
    grid = geometry.grid
    if which == TRANSVERSE:
        values = 2 * horizontal_derivative(f, geometry) * horizontal_derivative(g, geometry) / geometry.B.c22
        axis = BASE_ONLY if f.axis == g.axis == BASE_ONLY else TOTAL_SPACE
        return ScalarField(grid, values, axis)

    if which == LEAFWISE:
        return ScalarField(grid, 2 * grid.d1(f.values) * grid.d1(g.values) / geometry.W.c11)

    raise ValueError(f'Unknown pairing {repr(which)}')


def form_pairing(eta: TwoForm, xi: TwoForm, geometry: FibrationGeometry) -> ScalarField:
    """
    The transverse pairing `<eta, xi>_beta`; only the horizontal parts contribute.
    """
    b22 = geometry.B.c22
    return ScalarField(geometry.grid,
                       horizontal_component(eta, geometry) * horizontal_component(xi, geometry) / b22 ** 2)

