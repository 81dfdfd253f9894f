import numpy as np
import pytest
from adiabat.curvature import CurvatureBundle, MetricNotPositiveError, averages, fine_expansion_defect, \
    leafwise_ricci, leafwise_scalar, lichnerowicz_matrix, lichnerowicz_transverse, linearized_twisted, \
    total_scalar, transverse_ricci_scalar, twisted_base_scalar, twisted_scalar_pointwise, weil_petersson
from adiabat.geometry import BASE_GENERATOR, BASE_ONLY, FieldAxisError, GridSpec, ScalarField, fibre_average, \
    make_hirzebruch_geometry, make_product_geometry, potentials, shift

FD_STEP = 1e-4


def _base_field(grid: GridSpec, function) -> ScalarField:
    """
    Sample a function of the base coordinate as a base-only field.
    """
    return ScalarField.from_function(grid, lambda t1, t2: function(t2), BASE_ONLY)


def test_round_product_curvature():
    """
    Test the curvature of the round product against the Fubini-Study values
    """
    geometry = make_product_geometry(GridSpec(12))
    bundle = CurvatureBundle(geometry)
    assert np.max(np.abs(bundle.S_F.values - 2)) < 1e-10, 'The round fibre has scalar curvature 2'
    assert np.max(np.abs(bundle.rho.c11 - 2 * geometry.W.c11)) < 1e-10, 'rho must be twice omega on round fibres'
    assert np.max(np.abs(bundle.S_beta.values - 2)) < 1e-10, 'The round base has scalar curvature 2'
    assert np.max(np.abs(bundle.twisted.values - 2)) < 1e-10, 'The twisted curvature reduces to S(beta)'
    assert all(np.max(np.abs(component)) < 1e-10 for component in bundle.alpha_pi.components), \
        'A product family has no Weil-Petersson twist'

    for name, value in (('S_F hat', bundle.S_F_hat), ('lambda', bundle.lam), ('S_pi hat', bundle.S_pi_hat)):
        assert abs(value - 2) < 1e-10, f'{name} of the round product must be 2'


def test_kappa_scaling():
    """
    Test that scaling the base class scales the transverse curvature inversely
    """
    geometry = make_product_geometry(GridSpec(12), kappa=4.)
    _, scalar = transverse_ricci_scalar(geometry)
    assert scalar.axis == BASE_ONLY, 'S(beta) is a base function'
    assert np.max(np.abs(scalar.values - .5)) < 1e-10, 'S(beta) must scale like 1 / kappa'

    constants = averages(geometry)
    assert abs(constants.twisted - .5) < 1e-10, 'S_pi hat must scale like 1 / kappa'
    assert abs(constants.leafwise - 2) < 1e-10, 'The fibres are unchanged'


def test_total_scalar():
    """
    Test the exact scalar curvature of omega + k beta on the round product
    """
    geometry = make_product_geometry(GridSpec(12))
    for k in (1., 8., 32.):
        assert np.max(np.abs(total_scalar(geometry, k).values - (2 + 2 / k))) < 1e-9, \
            f'S(omega_k) of the round product must be 2 + 2/k at k = {k}'
        assert abs(averages(geometry).total(k) - (2 + 2 / k)) < 1e-9, f'S_k hat must be 2 + 2/k at k = {k}'

    assert fine_expansion_defect(geometry, 16.) < 1e-8, 'The 1/k coefficient is exact on the round product'

    with pytest.raises(MetricNotPositiveError):
        total_scalar(geometry, -.5)


def test_leafwise_ricci_base_dependence():
    """
    Test that rho only sees the fibre metric
    """
    grid = GridSpec(12)
    phi = ScalarField.from_function(grid, lambda t1, t2: .1 * t2 ** 3)
    geometry = make_product_geometry(grid, phi)
    assert np.max(np.abs(leafwise_ricci(geometry).c11 - 2 * grid.Q1)) < 1e-10, \
        'A base potential leaves the fibre curvature unchanged'

    mixed = make_product_geometry(grid, ScalarField.from_function(grid, lambda t1, t2: .05 * t1 ** 2 * t2 ** 2))
    assert np.max(np.abs(leafwise_ricci(mixed).c12)) > 1e-4, 'A mixed potential must give rho a mixed part'


def test_hirzebruch_reference():
    """
    Test the constants of the reference Hirzebruch geometry
    """
    b = 2.
    geometry = make_hirzebruch_geometry(GridSpec(16), a=1, b=b)
    assert np.max(np.abs(leafwise_scalar(geometry).values - 2)) < 1e-10, 'The reference fibres are round'

    constants = averages(geometry)
    assert abs(constants.adiabatic - 2 / b) < 1e-8, 'lambda of the reference Hirzebruch surface'
    assert abs(constants.twisted - 2 / b) < 1e-8, 'lambda and S_pi hat agree when omega squares to zero'


def test_lichnerowicz_kernel():
    """
    Test that the transverse holomorphy potentials span the kernel of the Lichnerowicz operator
    """
    grid = GridSpec(16)
    psi = _base_field(grid, lambda t2: .1 * (t2 * (1 - t2)) ** 2)
    geometry = make_product_geometry(grid, psi=psi)
    h = potentials(BASE_GENERATOR, geometry).h
    assert lichnerowicz_transverse(geometry, h).sup() < 1e-8, 'L must annihilate holomorphy potentials'
    assert np.max(np.abs(lichnerowicz_matrix(geometry) @ h.base_values)) < 1e-8, \
        'The nodal matrix must annihilate holomorphy potentials'
    assert lichnerowicz_transverse(geometry, ScalarField.constant(grid, 1.)).sup() < 1e-8, 'L annihilates constants'

    with pytest.raises(FieldAxisError):
        lichnerowicz_transverse(geometry, ScalarField.from_function(grid, lambda t1, t2: t1))


def test_linearized_twisted():
    """
    Test the linearization of the twisted curvature against a central difference
    """
    grid = GridSpec(12)
    geometry = make_product_geometry(grid)
    phi = _base_field(grid, lambda t2: t2 ** 2)

    plus = twisted_scalar_pointwise(shift(geometry, delta_psi=phi * FD_STEP))
    minus = twisted_scalar_pointwise(shift(geometry, delta_psi=phi * -FD_STEP))
    difference = (plus.values - minus.values) / (2 * FD_STEP)
    assert np.max(np.abs(difference - linearized_twisted(geometry, phi).values)) < 1e-5, \
        'The linearization must match the central difference'

    assert linearized_twisted(geometry, ScalarField.constant(grid, 1.)).sup() < 1e-9, 'Constants do not move beta'


def test_weil_petersson_product_family():
    """
    Test that a family with the same fibre metric everywhere has no twist
    """
    grid = GridSpec(12)
    phi = ScalarField.from_function(grid, lambda t1, t2: .05 * (t1 * (1 - t1)) ** 2)
    geometry = make_product_geometry(grid, phi)
    assert all(np.max(np.abs(component)) < 1e-9 for component in weil_petersson(geometry).components), \
        'A base-independent fibre metric has no Weil-Petersson twist'


@pytest.mark.parametrize('n', [16, 32, 48])
def test_hirzebruch_lichnerowicz_kernel(n):
    """
    Test that the holomorphy potential stays in the kernel of L under refinement of the twisted chart
    """
    geometry = make_hirzebruch_geometry(GridSpec(n), a=1, b=2.)
    h = potentials(BASE_GENERATOR, geometry).h
    assert lichnerowicz_transverse(geometry, h).sup() < 1e-6, f'L must annihilate h at n = {n}'
    assert np.max(np.abs(lichnerowicz_transverse(geometry, h).base_values
                         - lichnerowicz_matrix(geometry) @ h.base_values)) < 1e-6, \
        f'The nodal and the matrix operator must agree at n = {n}'


def test_hirzebruch_linearized_twisted():
    """
    Test the linearization of the twisted curvature against a central difference on a fine twisted chart
    """
    grid = GridSpec(48)
    geometry = make_hirzebruch_geometry(grid, a=1, b=2.)
    phi = _base_field(geometry.grid, lambda t2: t2 ** 2)

    plus = twisted_scalar_pointwise(shift(geometry, delta_psi=phi * FD_STEP))
    minus = twisted_scalar_pointwise(shift(geometry, delta_psi=phi * -FD_STEP))
    difference = (plus.values - minus.values) / (2 * FD_STEP)
    assert np.max(np.abs(difference - linearized_twisted(geometry, phi).values)) < 1e-5, \
        'The linearization must match the central difference on the twisted chart'


def test_weil_petersson_varying_fibres():
    """
    Test that fibres changing shape along the base give a nonzero twist
    """
    grid = GridSpec(16)
    phi = ScalarField.from_function(grid, lambda t1, t2: .1 * (t1 * (1 - t1)) ** 2 * t2)
    geometry = make_product_geometry(grid, phi)
    alpha = weil_petersson(geometry)
    assert np.max(np.abs(alpha.c22)) > 1e-6, 'A base-dependent fibre metric must twist'
    assert np.max(np.abs(alpha.c11)) == 0 and np.max(np.abs(alpha.c12)) == 0, 'alpha_pi lives on the base'


@pytest.mark.parametrize('hirzebruch', [False, True])
def test_twisted_scalar_paths(hirzebruch):
    """
    Test that the fibre integral formula of the twisted base curvature is the fibre average of the pointwise one
    """
    grid = GridSpec(24)
    phi = ScalarField.from_function(grid, lambda t1, t2: .05 * (t1 * (1 - t1)) ** 2 * t2 + .02 * (t1 - .5) * t2)
    psi = _base_field(grid, lambda t2: .05 * (t2 * (1 - t2)) ** 2)
    if hirzebruch:
        geometry = make_hirzebruch_geometry(grid, a=1, b=2., phi=phi, psi=psi)
    else:
        geometry = make_product_geometry(grid, phi, psi)

    averaged = fibre_average(twisted_scalar_pointwise(geometry), geometry)
    assert np.max(np.abs(twisted_base_scalar(geometry).values - averaged.values)) < 1e-8, \
        'The two paths to the twisted base curvature must agree'
