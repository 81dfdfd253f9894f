import numpy as np
import pytest
from adiabat.experiments import apply_overrides, parse_config, random_perturbation, random_potential
from adiabat.experiments.context import perturbed_geometry
from adiabat.experiments.identities import identity_defects

IDENTITIES = ('integration_by_parts', 'laplacian_characterization', 'potential_shift', 'linearization',
              'scalar_variation', 'volume_variation', 'integral_identity', 'kernel', 'kernel_matrix', 'self_adjoint')


def _defects(provider: str, n: int):
    config = apply_overrides(parse_config(f'provider.name = {provider}\n'), grid=n)
    rng = np.random.default_rng(0)
    perturbation = random_perturbation(rng)
    f_coefficients, g_coefficients = random_potential(rng), random_potential(rng)
    return identity_defects(perturbed_geometry(config, perturbation), f_coefficients, g_coefficients)


@pytest.mark.parametrize('provider', ['product', 'hirzebruch'])
def test_identities(provider):
    """
    Test the adjoint identity, the Laplacian characterization, the potential shift rule, the first variations, the
    integral identity of P, the kernel of L and its self-adjointness on a seeded perturbation
    """
    defects = _defects(provider, 32)
    assert set(defects) == set(IDENTITIES), 'Every identity is measured'
    for name in IDENTITIES:
        assert defects[name] <= 1e-6, f'{name} fails on the {provider} testbed with {defects[name]}'


def test_hirzebruch_identities_refine():
    """
    Test that the identities of the twisted chart keep holding on a finer grid
    """
    defects = _defects('hirzebruch', 48)
    for name in ('linearization', 'scalar_variation', 'kernel', 'kernel_matrix'):
        assert defects[name] <= 1e-6, f'{name} must not degrade under refinement, got {defects[name]}'
