"""
Potential perturbations given in config text, either as inline polynomials `c:i:j, ...` meaning
`sum c tau1^i tau2^j`, or as named basis functions `name:coefficient, ...`.
"""
from typing import Callable, Dict, List, NamedTuple, Tuple

import numpy as np

from ..geometry import BASE_ONLY, TOTAL_SPACE, GridSpec, ScalarField
from .errors import ConfigError


Profile = Callable[[np.ndarray, np.ndarray], np.ndarray]


class BasisFunction(NamedTuple):
    profile: Profile
    base_only: bool


def _q(tau: np.ndarray) -> np.ndarray:
    return tau * (1 - tau)


BASIS: Dict[str, BasisFunction] = {
    'fibre_bump': BasisFunction(lambda t1, t2: _q(t1) ** 2, False),
    'fibre_odd': BasisFunction(lambda t1, t2: (t1 - .5) * _q(t1) ** 2, False),
    'twisting': BasisFunction(lambda t1, t2: (t1 - .5) * _q(t2), False),
    'mixed': BasisFunction(lambda t1, t2: _q(t1) ** 2 * (t2 - .5), False),
    'base_bump': BasisFunction(lambda t1, t2: _q(t2) ** 2, True),
    'base_odd': BasisFunction(lambda t1, t2: (t2 - .5) * _q(t2) ** 2, True),
}


def _split_terms(raw: str) -> List[List[str]]:
    return [[part.strip() for part in term.split(':')] for term in raw.split(',') if term.strip()]


def parse_poly(raw: str) -> Tuple[Tuple[float, int, int], ...]:
    """
    Parse `c:i:j, ...` into `(c, i, j)` triples.

    :param raw: The config value
    :return: The monomial terms
    """
    terms = []
    for parts in _split_terms(raw):
        if len(parts) != 3:
            raise ConfigError(f'Malformed monomial {":".join(parts)!r}, expected c:i:j')

        try:
            coefficient, i, j = float(parts[0]), int(parts[1]), int(parts[2])
        except ValueError as err:
            raise ConfigError(f'Malformed monomial {":".join(parts)!r}') from err

        if i < 0 or j < 0:
            raise ConfigError(f'Negative exponent in {":".join(parts)!r}')

        terms.append((coefficient, i, j))

    return tuple(terms)


def parse_basis(raw: str) -> Tuple[Tuple[str, float], ...]:
    """
    Parse `name:coefficient, ...` into pairs, checking every name.
    """
    terms = []
    for parts in _split_terms(raw):
        if len(parts) != 2:
            raise ConfigError(f'Malformed basis term {":".join(parts)!r}, expected name:coefficient')

        name = parts[0].replace('-', '_')
        if name not in BASIS:
            raise ConfigError(f'Unknown basis function {parts[0]!r}, known are {", ".join(BASIS)}')

        try:
            terms.append((name, float(parts[1])))
        except ValueError as err:
            raise ConfigError(f'Malformed coefficient in {":".join(parts)!r}') from err

    return tuple(terms)


def perturbation_profile(poly: str, basis: str, base_only: bool = False) -> Profile:
    """
    The function of `(tau1, tau2)` described by a polynomial and a basis config value.

    :param poly: The `c:i:j` terms
    :param basis: The `name:coefficient` terms
    :param base_only: Whether the perturbation must not depend on `tau1`
    :return: The profile
    """
    monomials = parse_poly(poly)
    named = parse_basis(basis)
    if base_only:
        if any(i != 0 for _, i, _ in monomials):
            raise ConfigError('A beta perturbation cannot depend on tau1')

        if any(not BASIS[name].base_only for name, _ in named):
            raise ConfigError('A beta perturbation only takes base basis functions')

    def profile(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
        values = np.zeros(np.broadcast(t1, t2).shape)
        for coefficient, i, j in monomials:
            values = values + coefficient * t1 ** i * t2 ** j

        for name, coefficient in named:
            values = values + coefficient * BASIS[name].profile(t1, t2)

        return values

    return profile


def sample(grid: GridSpec, profile: Profile, base_only: bool = False) -> ScalarField:
    return ScalarField.from_function(grid, profile, BASE_ONLY if base_only else TOTAL_SPACE)


class RandomPerturbation(NamedTuple):
    """
    Seeded random coefficients of an `omega` and a `beta` potential, sampled afresh on every grid so that grid
    refinement sees the same analytic data.
    """
    phi: Tuple[float, ...]
    psi: Tuple[float, ...]

    def phi_profile(self, t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
        c0, c1, c2 = self.phi
        return c0 * _q(t1) ** 2 + c1 * _q(t1) ** 2 * (t2 - .5) + c2 * (t1 - .5) * _q(t1) * _q(t2)

    def psi_profile(self, t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
        return random_potential_profile(self.psi)(t1, t2)


def random_potential_profile(coefficients: Tuple[float, ...]) -> Profile:
    """
    `sum_j c_j tau2^(j + 1)`, a transverse potential.
    """
    def profile(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
        return sum(c * t2 ** (j + 1) for j, c in enumerate(coefficients))

    return profile


def random_perturbation(rng: np.random.Generator, amplitude: float = .05) -> RandomPerturbation:
    """
    Draw the coefficients of a random admissible perturbation.

    :param rng: The seeded generator
    :param amplitude: The bound of every coefficient
    :return: The perturbation
    """
    phi = rng.uniform(-amplitude, amplitude, size=3)
    psi = rng.uniform(-amplitude, amplitude, size=3)
    return RandomPerturbation(tuple(float(c) for c in phi), tuple(float(c) for c in psi))


def random_potential(rng: np.random.Generator, amplitude: float = 1 / 3) -> Tuple[float, ...]:
    """
    Draw the coefficients of a random transverse potential. With the default amplitude `beta + 0.2 i ddbar phi`
    stays positive on every testbed.
    """
    return tuple(float(c) for c in rng.uniform(-amplitude, amplitude, size=3))
