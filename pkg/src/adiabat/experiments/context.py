from typing import Dict

from ..geometry import BASE_GENERATOR, FIBRE_GENERATOR, FibrationGeometry, GridSpec, ProviderError, \
    make_geometry, shift
from ..types import HierarchyMapping
from .errors import ConfigError
from .perturbations import RandomPerturbation, perturbation_profile, sample
from .report import ExperimentReport


GENERATORS = (FIBRE_GENERATOR, BASE_GENERATOR)


def generator_name(gen) -> str:
    return {FIBRE_GENERATOR: 'fibre', BASE_GENERATOR: 'base'}.get(tuple(gen), f'{gen[0]}_{gen[1]}')


def provider_params(config: HierarchyMapping) -> Dict[str, float]:
    if config['provider.name'] == 'hirzebruch':
        return {'a': config['provider.a'], 'b': config['provider.b']}

    return {'kappa': config['provider.kappa']}


def reference_geometry(config: HierarchyMapping, n: int = None) -> FibrationGeometry:
    """
    The unperturbed geometry of the configured provider.

    :param config: The config
    :param n: The grid size, `grid.n` by default
    :return: The geometry
    """
    n = config['grid.n'] if n is None else n
    try:
        return make_geometry(config['provider.name'], GridSpec(n), **provider_params(config))
    except (ProviderError, ValueError) as err:
        raise ConfigError(str(err)) from err


def configured_geometry(config: HierarchyMapping, n: int = None) -> FibrationGeometry:
    """
    The configured provider moved by the configured `perturbation.*` potentials.
    """
    geometry = reference_geometry(config, n)
    phi = perturbation_profile(config['perturbation.phi.poly'], config['perturbation.phi.basis'])
    psi = perturbation_profile(config['perturbation.psi.poly'], config['perturbation.psi.basis'], base_only=True)
    return shift(geometry, sample(geometry.grid, phi), sample(geometry.grid, psi, base_only=True))


def perturbed_geometry(config: HierarchyMapping, perturbation: RandomPerturbation,
                       n: int = None) -> FibrationGeometry:
    """
    The configured geometry moved further by a seeded random perturbation.
    """
    geometry = configured_geometry(config, n)
    return shift(geometry, sample(geometry.grid, perturbation.phi_profile),
                 sample(geometry.grid, perturbation.psi_profile, base_only=True))


def new_report(name: str, config: HierarchyMapping) -> ExperimentReport:
    return ExperimentReport(name, config.serialize())
