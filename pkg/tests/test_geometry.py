import numpy as np
import pytest
from adiabat.geometry import BASE_GENERATOR, BASE_ONLY, FIBRE, FIBRE_GENERATOR, GLOBAL, LEAFWISE, OMEGA_BETA, \
    TRANSVERSE, TWO_PI, FieldAxisError, GeneratorError, GridSpec, PositivityError, ProviderError, ScalarField, \
    TwoForm, Weight, chebyshev_gauss, form_pairing, hessian_form, integrate, laplacian, make_geometry, \
    make_hirzebruch_geometry, make_product_geometry, potentials, shift, split_form


def _base_field(grid: GridSpec, function) -> ScalarField:
    """
    Sample a function of the base coordinate as a base-only field.
    """
    return ScalarField.from_function(grid, lambda t1, t2: function(t2), BASE_ONLY)


def _perturbed_product(n: int = 16):
    """
    A product geometry with a mixed omega perturbation and a beta perturbation.
    """
    grid = GridSpec(n)
    phi = ScalarField.from_function(grid, lambda t1, t2: .05 * (t1 * (1 - t1)) ** 2 * (t2 - .5))
    psi = _base_field(grid, lambda t2: .1 * (t2 * (1 - t2)) ** 2)
    return make_product_geometry(grid, phi, psi)


def test_chebyshev_gauss():
    """
    Test the collocation nodes, weights and differentiation matrix
    """
    nodes, weights, derivative = chebyshev_gauss(12)
    assert np.all((nodes > 0) & (nodes < 1)), 'Nodes must be interior'
    assert np.all(np.diff(nodes) > 0), 'Nodes must be ascending'
    assert abs(weights.sum() - 1) < 1e-14, 'Weights must integrate constants exactly'
    assert abs(weights @ nodes ** 5 - 1 / 6) < 1e-14, 'Quadrature must be exact on low degree polynomials'
    assert np.max(np.abs(derivative @ np.ones(12))) < 1e-12, 'Constants must differentiate to zero'
    assert np.max(np.abs(derivative @ nodes ** 3 - 3 * nodes ** 2)) < 1e-10, 'Cubics must differentiate exactly'

    with pytest.raises(ValueError):
        chebyshev_gauss(1)


def test_grid_spec():
    """
    Test grid identity and the tensor quadrature
    """
    assert GridSpec(8) == GridSpec(8, 8), 'The base size defaults to the fibre size'
    assert hash(GridSpec(8, 10, 1)) == hash(GridSpec(8, 10, 1)), 'Equal grids must hash equally'
    assert GridSpec(8, twist=1) != GridSpec(8), 'The twist is part of the grid identity'

    grid = GridSpec(10, 12)
    assert grid.shape == (10, 12), 'Fibre nodes run along axis 0'
    assert abs(grid.integrate(grid.sample(lambda t1, t2: t1 ** 2 * t2)) - 1 / 6) < 1e-14, \
        'Tensor quadrature must be exact on polynomials'


def test_base_derivative():
    """
    Test that base functions are differentiated without the twist term of the chart
    """
    grid = GridSpec(24, twist=1)
    values = grid.sample(lambda t1, t2: t2 ** 3 + 0 * t1)
    derivative = grid.d2_base(values)
    assert np.max(np.abs(derivative - 3 * grid.T2 ** 2 * grid.Q2)) < 1e-12, 'd/ds2 of tau2^3 is 3 tau2^2 q2'
    assert np.all(derivative == derivative[:1]), 'The derivative of a base function is a base function'
    assert np.max(np.abs(derivative - grid.d2(values))) < 1e-10, 'Both derivatives agree on base functions'


def test_round_product_components():
    """
    Test the reference forms of the product
    """
    grid = GridSpec(12)
    geometry = make_product_geometry(grid, kappa=2.)
    assert np.allclose(geometry.W.c11, grid.Q1, atol=1e-15), 'The round fibre metric must be tau1 (1 - tau1)'
    assert np.allclose(geometry.B.c22, 2 * grid.Q2, atol=1e-15), 'The base metric must scale with kappa'
    assert np.allclose(geometry.c.values, 0), 'The product has no horizontal twist'

    volume = integrate(1., OMEGA_BETA, GLOBAL, geometry)
    assert abs(volume - 2 * TWO_PI ** 2) < 1e-10, 'Both factors have area 2 pi times their scale'

    fibres = integrate(1., OMEGA_BETA, FIBRE, geometry)
    assert fibres.axis == BASE_ONLY, 'Fibre integrals must be base functions'
    assert np.allclose(fibres.values, TWO_PI * geometry.B.c22, atol=1e-12), 'Fibre integral of omega ^ beta'


def test_shift():
    """
    Test that shifts only move their own form and can be undone
    """
    geometry = _perturbed_product()
    grid = geometry.grid
    unmoved = shift(geometry)
    for before, after in zip(geometry.W.components + geometry.B.components,
                             unmoved.W.components + unmoved.B.components):
        assert np.array_equal(before, after), 'An empty shift must keep every component'

    psi = _base_field(grid, lambda t2: .1 * np.sin(np.pi * t2))
    moved = shift(geometry, delta_psi=psi)
    assert np.array_equal(moved.W.c11, geometry.W.c11), 'A beta shift must not touch omega'
    assert not np.allclose(moved.B.c22, geometry.B.c22), 'A beta shift must move beta'

    phi = ScalarField.from_function(grid, lambda t1, t2: .05 * t1 ** 2 * t2)
    back = shift(shift(geometry, phi, psi), -phi, -psi)
    assert np.max(np.abs(back.W.c12 - geometry.W.c12)) < 1e-12, 'Shifting back must restore omega'
    assert np.max(np.abs(back.B.c22 - geometry.B.c22)) < 1e-12, 'Shifting back must restore beta'

    with pytest.raises(FieldAxisError):
        shift(geometry, delta_psi=phi)


def test_positivity():
    """
    Test that a potential breaking positivity is rejected with its location
    """
    grid = GridSpec(12)
    phi = ScalarField.from_function(grid, lambda t1, t2: -10 * (t1 * (1 - t1)) ** 2)
    with pytest.raises(PositivityError) as info:
        make_product_geometry(grid, phi)

    assert info.value.quantity == 'W11', 'The failing quantity must be reported'
    assert info.value.value <= 0, 'The failing value must be reported'


def test_providers():
    """
    Test provider parameters and the untwisted Hirzebruch surface
    """
    grid = GridSpec(10)
    with pytest.raises(ProviderError):
        make_hirzebruch_geometry(grid, a=2, b=1.)

    with pytest.raises(ProviderError):
        make_product_geometry(grid, kappa=0.)

    with pytest.raises(ProviderError):
        make_geometry('sphere', grid)

    flat = make_hirzebruch_geometry(grid, a=0, b=1.)
    product = make_product_geometry(grid)
    assert np.allclose(flat.W.c11, product.W.c11) and np.allclose(flat.W.c22, product.W.c22), \
        'The untwisted Hirzebruch surface is the product'

    twisted = make_hirzebruch_geometry(grid, a=1, b=2.)
    assert twisted.grid.twist == 1, 'The Hirzebruch chart carries its twist'
    assert abs(integrate(1., Weight.custom(twisted.W, twisted.W), GLOBAL, twisted)) < 1e-10, \
        'The reference omega has zero self-intersection'


def test_laplacians():
    """
    Test both Laplacians on the moment coordinates of the round factors
    """
    grid = GridSpec(12)
    geometry = make_product_geometry(grid)
    tau2 = _base_field(grid, lambda t2: t2)
    assert np.max(np.abs(laplacian(tau2, TRANSVERSE, geometry).values - (1 - 2 * grid.T2))) < 1e-10, \
        'The transverse Laplacian of the moment coordinate'
    assert laplacian(ScalarField.constant(grid, 3.), TRANSVERSE, geometry).sup() < 1e-10, \
        'Constants are harmonic'

    tau1 = ScalarField.from_function(grid, lambda t1, t2: t1)
    assert np.max(np.abs(laplacian(tau1, LEAFWISE, geometry).values - (1 - 2 * grid.T1))) < 1e-10, \
        'The leafwise Laplacian of the moment coordinate'

    with pytest.raises(FieldAxisError):
        laplacian(tau1, TRANSVERSE, geometry)


def test_split_form():
    """
    Test that the three parts of a form add back up to it
    """
    geometry = _perturbed_product()
    grid = geometry.grid
    rng = np.random.default_rng(0)
    eta = TwoForm(grid, *(rng.standard_normal(grid.shape) for _ in range(3)))
    fibre, horizontal, mixed = split_form(eta, geometry)
    assert (fibre + horizontal + mixed).allclose(eta, 1e-12), 'The splitting must be complete'
    assert np.allclose(horizontal.c11, 0) and np.allclose(horizontal.c12, 0), 'The horizontal part is pure HH'
    assert np.max(np.abs(form_pairing(geometry.B, geometry.B, geometry).values - 1)) < 1e-12, \
        'beta has unit length in its own metric'


def test_hessian_closedness():
    """
    Test that Hessian forms of polynomial potentials are closed
    """
    grid = GridSpec(16)
    potential = ScalarField.from_function(grid, lambda t1, t2: t1 ** 3 * t2 ** 2 - t1 * t2 ** 4)
    form = hessian_form(potential)
    assert form.closed, 'Hessian forms are closed by construction'
    assert form.closedness_defect() < 1e-9, 'Mixed partials must commute'


def test_potentials():
    """
    Test the normalized Hamiltonians of the two generators on the round product
    """
    grid = GridSpec(12)
    geometry = make_product_geometry(grid)
    base = potentials(BASE_GENERATOR, geometry)
    assert base.h.axis == BASE_ONLY, 'The transverse potential is a base function'
    assert np.max(np.abs(base.h.values - (grid.T2 - .5))) < 1e-12, 'h must be the centred base moment'

    fibre = potentials(FIBRE_GENERATOR, geometry)
    assert np.max(np.abs(fibre.h_F.values - (grid.T1 - .5))) < 1e-12, 'h_F must be the centred fibre moment'
    assert fibre.h.sup() < 1e-12, 'A vertical generator has no transverse potential'
    assert fibre.h_k(8.).allclose(fibre.h_F, 1e-12), 'h_k of a vertical generator is h_F'

    with pytest.raises(GeneratorError):
        potentials((0, 0), geometry)


def test_fingerprint():
    """
    Test that the fingerprint follows the potentials
    """
    geometry = _perturbed_product()
    assert geometry.fingerprint == _perturbed_product().fingerprint, 'Equal data must give equal fingerprints'
    moved = shift(geometry, delta_psi=_base_field(geometry.grid, lambda t2: .01 * t2 ** 2))
    assert moved.fingerprint != geometry.fingerprint, 'Moved data must change the fingerprint'
