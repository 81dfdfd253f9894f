from typing import Tuple

from .errors import GeneratorError
from .fields import BASE_ONLY, ScalarField
from .fibration import FibrationGeometry, average, fibre_average


FIBRE_GENERATOR = (1, 0)
BASE_GENERATOR = (0, 1)


class TorusField:
    """
    A generator `a1 d/dtheta1 + a2 d/dtheta2` of the torus action together with its Hamiltonians.

    The `omega` Hamiltonian of the generator splits as `h_F + drift`: `h_F` has zero mean on every fibre and
    `drift` is a base function with zero global mean. `h` is the transverse holomorphy potential, the `beta`
    Hamiltonian normalized to zero global mean.
    """
    def __init__(self, gen: Tuple[int, int], h_F: ScalarField, h: ScalarField, drift: ScalarField):
        self.gen = gen
        self.h_F = h_F
        self.h = h
        self.drift = drift

    def __repr__(self) -> str:
        return f'TorusField(gen={self.gen})'

    def h_k(self, k: float) -> ScalarField:
        """
        The `omega + k beta` Hamiltonian `k h + h_F + drift`.
        """
        return self.h * k + self.h_F + self.drift

    def action(self, field: ScalarField) -> ScalarField:
        """
        `v(f)` for the real vector field `a1 d/ds1 + a2 d/ds2` paired with the generator.
        """
        return vector_field_action(self.gen, field)


def _validate(gen) -> Tuple[int, int]:
    try:
        a1, a2 = (int(value) for value in gen)
    except (TypeError, ValueError) as err:
        raise GeneratorError(f'Malformed generator {gen!r}') from err

    if (a1, a2) == (0, 0):
        raise GeneratorError('The zero generator has no potentials')

    return a1, a2


def vector_field_action(gen, field: ScalarField) -> ScalarField:
    a1, a2 = _validate(gen)
    grid = field.grid
    if field.axis == BASE_ONLY:
        return ScalarField(grid, a2 * grid.d2_base(field.values), BASE_ONLY)

    values = a1 * grid.d1(field.values) + a2 * grid.d2(field.values)
    return ScalarField(grid, values, field.axis)


def potentials(gen, geometry: FibrationGeometry) -> TorusField:
    """
    The normalized Hamiltonians of a torus generator.

    :param gen: The integer pair `(a1, a2)`
    :param geometry: The geometry
    :return: The `TorusField`
    """
    a1, a2 = _validate(gen)
    fibre_moment, base_moment = geometry.omega_moments
    hamiltonian = fibre_moment * a1 + base_moment * a2

    per_fibre = fibre_average(hamiltonian, geometry)
    h_F = hamiltonian - per_fibre
    drift = per_fibre - average(per_fibre, geometry)

    beta_hamiltonian = geometry.beta_moment * a2
    h = beta_hamiltonian - average(beta_hamiltonian, geometry)
    return TorusField((a1, a2), h_F, ScalarField(geometry.grid, h.values, BASE_ONLY), drift)
