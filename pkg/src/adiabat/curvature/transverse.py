"""
Transverse curvature of `beta` and the operators of its invariant reduction. On the testbeds `B22` depends on the
base coordinate alone, so every transverse operator acting on base functions is an ordinary differential operator
in `s2` with coefficients built from `B22`.
"""
from typing import Tuple

import numpy as np

from ..geometry import BASE_ONLY, TRANSVERSE, TWO_PI, FibrationGeometry, ScalarField, TwoForm, TorusField, \
    gradient_pairing, horizontal_component, horizontal_derivative, laplacian, split_form
from .leafwise import leafwise_ricci


def transverse_ricci_scalar(geometry: FibrationGeometry) -> Tuple[TwoForm, ScalarField]:
    """
    The transverse Ricci form `-i ddbar log B22` and the transverse scalar curvature `S(beta)`.

    :param geometry: The geometry
    :return: `(Ric beta, S(beta))`, both base only
    """
    grid = geometry.grid
    # B22 vanishes like q2 at the poles, which is differentiated in closed form
    gradient = grid.d2_base(np.log(geometry.B.c22 / grid.Q2)) + (1 - 2 * grid.T2)
    ricci = TwoForm(grid, 0., 0., -grid.d2_base(gradient), closed=True)
    return ricci, ScalarField(grid, ricci.c22 / geometry.B.c22, BASE_ONLY)


def lichnerowicz_transverse(geometry: FibrationGeometry, phi: ScalarField) -> ScalarField:
    """
    The transverse Lichnerowicz operator `D*D phi` in the invariant reduction,
    `B^-1 d2(B^-1 d2(B d2(B^-1 d2 phi)))`. Its kernel on base functions is spanned by the constants and the
    transverse holomorphy potentials.

    :param geometry: The geometry
    :param phi: A base-only field
    :return: The base-only field `L phi`
    """
    phi.require(BASE_ONLY, 'The transverse Lichnerowicz operator')
    grid = geometry.grid
    b22 = geometry.B.c22
    d2 = grid.d2_base
    u = d2(phi.values) / b22
    g = b22 * d2(u)
    values = d2(d2(g) / b22) / b22
    return ScalarField(grid, values, BASE_ONLY)


def lichnerowicz_matrix(geometry: FibrationGeometry) -> np.ndarray:
    """
    The matrix of `L` acting on nodal base functions.
    """
    grid = geometry.grid
    b = geometry.B.c22[0]
    derivative = grid.q2[:, None] * grid.D2
    inverse = np.diag(1 / b)
    return inverse @ derivative @ inverse @ derivative @ np.diag(b) @ derivative @ inverse @ derivative


def rho_horizontal(geometry: FibrationGeometry, rho: TwoForm = None) -> ScalarField:
    """
    `Lambda_beta rho_H = rho_HH / B22`.
    """
    rho = leafwise_ricci(geometry) if rho is None else rho
    return ScalarField(geometry.grid, horizontal_component(rho, geometry) / geometry.B.c22)


def operator_P(geometry: FibrationGeometry, phi: ScalarField, rho: TwoForm = None) -> ScalarField:
    """
    `P phi = L phi - <rho_H, i ddbar phi>_beta - 1/2 <d Lambda_beta rho_H, d phi>_beta`.

    :param geometry: The geometry
    :param phi: A base-only field
    :param rho: The leafwise Ricci form when already known
    :return: A total-space field
    """
    grid = geometry.grid
    b22 = geometry.B.c22
    contracted = rho_horizontal(geometry, rho)
    hessian = grid.d2_base(grid.d2_base(phi.values)) / b22
    values = lichnerowicz_transverse(geometry, phi).values - contracted.values * hessian \
        - horizontal_derivative(contracted, geometry) * grid.d2_base(phi.values) / b22
    return ScalarField(grid, values)


def linearized_twisted(geometry: FibrationGeometry, phi: ScalarField, rho: TwoForm = None) -> ScalarField:
    """
    The first variation of `Lambda_beta(Ric beta + rho_H)` along `beta + t i ddbar phi`,
    `-L phi - <rho_H, i ddbar phi>_beta + 1/2 <d S(beta), d phi>_beta`.

    :param geometry: The geometry
    :param phi: A base-only field
    :param rho: The leafwise Ricci form when already known
    :return: A total-space field
    """
    grid = geometry.grid
    _, scalar = transverse_ricci_scalar(geometry)
    contracted = rho_horizontal(geometry, rho)
    hessian = laplacian(phi, TRANSVERSE, geometry)
    gradient = gradient_pairing(scalar, phi, TRANSVERSE, geometry)
    values = -lichnerowicz_transverse(geometry, phi).values - contracted.values * hessian.values \
        + gradient.values / 2
    return ScalarField(grid, values)


def scalar_variation(geometry: FibrationGeometry, phi: ScalarField) -> ScalarField:
    """
    The first variation of `S(beta)` along `beta + t i ddbar phi`, `-Delta^2 phi - S(beta) Delta phi`.
    """
    _, scalar = transverse_ricci_scalar(geometry)
    delta = laplacian(phi, TRANSVERSE, geometry)
    return -laplacian(delta, TRANSVERSE, geometry) - scalar * delta


def volume_variation(geometry: FibrationGeometry, phi: ScalarField) -> ScalarField:
    """
    The first variation of the density of `omega ^ beta` along `beta + t i ddbar phi`, as a multiple of that
    density: `Delta_beta phi`.
    """
    return laplacian(phi, TRANSVERSE, geometry)


def mixed_ricci_pairing(geometry: FibrationGeometry, field: TorusField, phi: ScalarField,
                        rho: TwoForm = None) -> float:
    """
    The integral of `rho_mix ^ iota_v omega ^ i d phi` over the total space, which balances the integral of
    `h P(phi)`.

    :param geometry: The geometry
    :param field: The torus generator
    :param phi: A base-only field
    :param rho: The leafwise Ricci form when already known
    :return: The integral
    """
    phi.require(BASE_ONLY, 'The mixed Ricci pairing')
    grid = geometry.grid
    rho = leafwise_ricci(geometry) if rho is None else rho
    _, _, mixed = split_form(rho, geometry)
    a1, a2 = field.gen
    moment = a1 * geometry.W.c11 + a2 * geometry.W.c12
    integrand = mixed.c12 * moment * grid.d2_base(phi.values)
    return TWO_PI ** 2 * grid.integrate(integrand / (grid.Q1 * grid.Q2))
