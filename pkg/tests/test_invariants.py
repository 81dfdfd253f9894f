from adiabat.geometry import BASE_GENERATOR, BASE_ONLY, FIBRE_GENERATOR, GridSpec, ScalarField, TwoForm, \
    make_hirzebruch_geometry, make_product_geometry, potentials
from adiabat.invariants import adiabatic_table, classical_futaki, fitted_order, futaki_record, \
    twisted_map_functional
from adiabat.oracle import AffineFunction, calibrate, toric_futaki_oracle


def _perturbed_product(n: int = 24):
    grid = GridSpec(n)
    phi = ScalarField.from_function(grid, lambda t1, t2: .05 * (t1 * (1 - t1)) ** 2 * (t2 - .5)
                                    + .03 * (t1 - .5) * t2 * (1 - t2))
    psi = ScalarField.from_function(grid, lambda t1, t2: .1 * (t2 - .5) * (t2 * (1 - t2)) ** 2, BASE_ONLY)
    return make_product_geometry(grid, phi, psi)


def test_round_product_invariants():
    """
    Test that every Futaki-type invariant vanishes on the round product
    """
    geometry = make_product_geometry(GridSpec(12))
    for gen in (FIBRE_GENERATOR, BASE_GENERATOR):
        record = futaki_record(geometry, gen, ks=(8., 16.))
        for name in ('transverse', 'submersion', 'moment_pairing', 'leading_term'):
            assert abs(getattr(record, name)) < 1e-10, f'{name} of {gen} must vanish on the round product'

        assert all(abs(value) < 1e-8 for value in record.classical_k.values()), \
            f'The classical invariants of {gen} must vanish on the round product'


def test_route_agreement():
    """
    Test that the three routes of the transverse Futaki invariant agree on a perturbed product
    """
    geometry = _perturbed_product()
    for gen in (FIBRE_GENERATOR, BASE_GENERATOR, (1, 1)):
        record = futaki_record(geometry, gen)
        assert record.route_spread() < 1e-6, f'The routes of {gen} disagree by {record.route_spread()}'
        assert abs(record.transverse - sum(record.terms.values())) < 1e-14, 'The terms must add up'
        assert abs(record.leading_term) < 1e-6, f'The leading term of {gen} must vanish on a perturbed product'


def test_twisted_map_functional():
    """
    Test the twisted map functional on the zero form and on beta itself
    """
    geometry = _perturbed_product(16)
    v = potentials(BASE_GENERATOR, geometry)
    assert twisted_map_functional(geometry, v, TwoForm.zero(geometry.grid)) == 0, 'The zero form maps to zero'
    assert abs(twisted_map_functional(geometry, v, geometry.B)) < 1e-10, 'h is normalized against omega ^ beta'


def test_fitted_order():
    """
    Test the decay order fit and its exact-zero case
    """
    assert abs(fitted_order((k, 3 / k) for k in (8., 16., 32.)) - 1) < 1e-12, 'C / k decays with order 1'
    assert abs(fitted_order((k, -2 / k ** 2) for k in (8., 16., 32.)) - 2) < 1e-12, 'Signs are ignored'
    assert fitted_order((k, 1e-15) for k in (8., 16., 32.)) is None, 'Exact zeros carry no order'

    noise = [(8., 8.5e-12), (16., 2.7e-11), (32., 6.5e-11)]
    assert fitted_order(noise) < 0, 'Rounding noise scaled by k grows'
    assert fitted_order(noise, 1e-6) is None, 'Noise below the exactness floor carries no order'
    assert abs(fitted_order([(8., 1e-2), (16., 5e-3), (32., 1e-9)], 1e-6) - 1) < 1e-12, \
        'Defects that reach the floor are left out of the fit'
    assert fitted_order([(8., 1e-9), (16., 1e-9), (32., 1e-4)], 1e-6) < 0, 'Rising from the floor is growth'


def test_round_adiabatic_table():
    """
    Test that the normalized classical invariants match the transverse one on the round product
    """
    geometry = make_product_geometry(GridSpec(12))
    table = adiabatic_table(geometry, potentials(BASE_GENERATOR, geometry), (8., 16., 32.))
    assert [row.k for row in table.rows] == [8., 16., 32.], 'One row per adiabatic parameter'
    assert all(abs(row.difference) < 1e-9 for row in table.rows), 'The round product has no adiabatic defect'


def test_hirzebruch_oracle():
    """
    Test that the boundary formula, calibrated at one adiabatic parameter, predicts another one
    """
    geometry = make_hirzebruch_geometry(GridSpec(24), a=1, b=2.)
    function = AffineFunction.of_generator(FIBRE_GENERATOR)
    v = potentials(FIBRE_GENERATOR, geometry)
    measured = {k: classical_futaki(geometry, v, k) for k in (8, 16)}
    assert abs(measured[8]) > 1e-3, 'The fibre generator of a twisted Hirzebruch surface is obstructed'

    calibration = calibrate(measured[8], geometry.moment_polytope(8), function, 8, FIBRE_GENERATOR)
    predicted = toric_futaki_oracle(geometry.moment_polytope(16), function, calibration)
    assert abs(predicted - measured[16]) <= 1e-4 * abs(measured[16]), \
        f'Predicted {predicted}, measured {measured[16]}'


def test_hirzebruch_route_agreement():
    """
    Test that the routes of the transverse Futaki invariant agree on a perturbed Hirzebruch surface
    """
    grid = GridSpec(32)
    phi = ScalarField.from_function(grid, lambda t1, t2: .03 * (t1 * (1 - t1)) ** 2 * (t2 - .5))
    psi = ScalarField.from_function(grid, lambda t1, t2: .05 * (t2 * (1 - t2)) ** 2, BASE_ONLY)
    geometry = make_hirzebruch_geometry(grid, a=1, b=2., phi=phi, psi=psi)
    for gen in (FIBRE_GENERATOR, BASE_GENERATOR):
        record = futaki_record(geometry, gen)
        assert record.route_spread() < 1e-6, f'The routes of {gen} disagree by {record.route_spread()}'
        assert abs(record.leading_term) < 1e-6, f'The leading term of {gen} must vanish'
