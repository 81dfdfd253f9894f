"""
Futaki-type invariants of a torus generator. The transverse invariant is evaluated along three routes: the pointwise
twisted curvature, the fibre integrals through the Weil-Petersson form, and the horizontal part of the leafwise Ricci
form. They share the horizontal projection `horizontal_component` and the leafwise Ricci form, and differ in where
the fibre integration happens.
"""
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, Iterable, Tuple

from ..curvature import CurvatureBundle, total_average, total_scalar, weil_petersson_contraction
from ..geometry import FIBRE, GLOBAL, OMEGA_BETA, TRANSVERSE, FibrationGeometry, ScalarField, TorusField, \
    TwoForm, Weight, contract, fibre_volumes, integrate, integrate_base, potentials, shift, split_form


logger = logging.getLogger(__name__)


def _bundle(geometry: FibrationGeometry, curvature: CurvatureBundle = None) -> CurvatureBundle:
    return CurvatureBundle(geometry) if curvature is None else curvature


def transverse_futaki_terms(geometry: FibrationGeometry, v: TorusField,
                            curvature: CurvatureBundle = None) -> Dict[str, float]:
    """
    The three integrals of the transverse Futaki invariant:
    `int h_F (S_F - S_F hat) omega ^ beta`, `int h (Lambda_beta(Ric beta + rho) - lambda) omega ^ beta` and
    `1/2 int h (S_F - S_F hat) omega ^ omega`.
    """
    curvature = _bundle(geometry, curvature)
    leafwise_defect = curvature.S_F - curvature.S_F_hat
    return {
        'fibre': integrate(v.h_F * leafwise_defect, OMEGA_BETA, GLOBAL, geometry),
        'twisted': integrate(v.h * (curvature.twisted_pointwise - curvature.lam), OMEGA_BETA, GLOBAL, geometry),
        'omega_squared': integrate(v.h * leafwise_defect, Weight.custom(geometry.W, geometry.W), GLOBAL,
                                   geometry) / 2,
    }


def transverse_futaki(geometry: FibrationGeometry, v: TorusField, curvature: CurvatureBundle = None) -> float:
    """
    The transverse Futaki invariant of the generator `v`.

    :param geometry: The geometry
    :param v: A torus field of the geometry
    :param curvature: The curvature bundle when already known
    :return: The invariant
    """
    return sum(transverse_futaki_terms(geometry, v, curvature).values())


def submersion_futaki_terms(geometry: FibrationGeometry, v: TorusField,
                            curvature: CurvatureBundle = None) -> Dict[str, float]:
    """
    The submersion route: a fibre integral of the leafwise defect, and the base integral of
    `h (S(beta) - Lambda_beta alpha_pi - S_pi hat)` against the fibre volume, split into its scalar and twist parts.
    """
    curvature = _bundle(geometry, curvature)
    grid = geometry.grid
    volumes = ScalarField.from_base(grid, fibre_volumes(geometry))

    leafwise = integrate(v.h_F * (curvature.S_F - curvature.S_F_hat), Weight.omega(), FIBRE, geometry)
    return {
        'fibre': integrate_base(leafwise, geometry),
        'scalar': integrate_base(v.h * (curvature.S_beta - curvature.S_pi_hat) * volumes, geometry),
        'twist': -integrate_base(v.h * weil_petersson_contraction(geometry, curvature.rho) * volumes, geometry),
    }


def submersion_futaki(geometry: FibrationGeometry, v: TorusField, curvature: CurvatureBundle = None) -> float:
    """
    The submersion Futaki invariant, through the Weil-Petersson form and fibre integrals.
    """
    return sum(submersion_futaki_terms(geometry, v, curvature).values())


def moment_pairing(geometry: FibrationGeometry, v: TorusField, curvature: CurvatureBundle = None) -> float:
    """
    The pairing of the coupled moment map with `v`, using only the horizontal part of the leafwise Ricci form and
    the twisted average `S_pi hat`.
    """
    curvature = _bundle(geometry, curvature)
    _, rho_H, _ = split_form(curvature.rho, geometry)
    twisted = contract(curvature.ric_beta + rho_H, TRANSVERSE, geometry)
    leafwise_defect = curvature.S_F - curvature.S_F_hat

    return integrate(v.h_F * leafwise_defect, OMEGA_BETA, GLOBAL, geometry) \
        + integrate(v.h * (twisted - curvature.S_pi_hat), OMEGA_BETA, GLOBAL, geometry) \
        + integrate(v.h * leafwise_defect, Weight.custom(geometry.W, geometry.W), GLOBAL, geometry) / 2


def classical_futaki(geometry: FibrationGeometry, v: TorusField, k: float) -> float:
    """
    The Futaki invariant `int h_k (S(omega_k) - S_k hat) omega_k^2` of the Kaehler metric `omega + k beta`.
    """
    defect = total_scalar(geometry, k) - total_average(geometry, k)
    return integrate(v.h_k(k) * defect, Weight.omega_k(k), GLOBAL, geometry)


def leading_term(geometry: FibrationGeometry, v: TorusField, curvature: CurvatureBundle = None) -> float:
    """
    `int h (S_F - S_F hat) omega ^ beta`, the coefficient of the leading power of `k` in the classical invariant.
    """
    curvature = _bundle(geometry, curvature)
    return integrate(v.h * (curvature.S_F - curvature.S_F_hat), OMEGA_BETA, GLOBAL, geometry)


def twisted_map_functional(geometry: FibrationGeometry, v: TorusField, alpha: TwoForm) -> float:
    """
    `int h Lambda_beta(alpha) omega ^ beta` for a transverse form `alpha`.
    """
    return integrate(v.h * contract(alpha, TRANSVERSE, geometry), OMEGA_BETA, GLOBAL, geometry)


@dataclass
class FutakiRecord:
    gen: Tuple[int, int]
    fingerprint: str
    transverse: float
    submersion: float
    moment_pairing: float
    leading_term: float
    classical_k: Dict[float, float] = dataclass_field(default_factory=dict)
    terms: Dict[str, float] = dataclass_field(default_factory=dict)
    submersion_terms: Dict[str, float] = dataclass_field(default_factory=dict)

    def route_spread(self) -> float:
        """
        The largest disagreement between the three routes.
        """
        values = (self.transverse, self.submersion, self.moment_pairing)
        return max(values) - min(values)


def futaki_record(geometry: FibrationGeometry, gen, ks: Iterable[float] = ()) -> FutakiRecord:
    """
    Evaluate every Futaki-type invariant of one generator.

    :param geometry: The geometry
    :param gen: The generator `(a1, a2)`
    :param ks: Adiabatic parameters for the classical invariant
    :return: The record
    """
    curvature = CurvatureBundle(geometry)
    v = potentials(gen, geometry)
    terms = transverse_futaki_terms(geometry, v, curvature)
    submersion_terms = submersion_futaki_terms(geometry, v, curvature)
    return FutakiRecord(
        gen=v.gen,
        fingerprint=geometry.fingerprint,
        transverse=sum(terms.values()),
        submersion=sum(submersion_terms.values()),
        moment_pairing=moment_pairing(geometry, v, curvature),
        leading_term=leading_term(geometry, v, curvature),
        classical_k={k: classical_futaki(geometry, v, k) for k in ks},
        terms=terms,
        submersion_terms=submersion_terms,
    )


def omega_shift_variation(geometry: FibrationGeometry, gen, delta_phi: ScalarField,
                          tolerance: float = 1e-6) -> float:
    """
    The change of the transverse Futaki invariant when `omega` moves by `i ddbar delta_phi`. Only measured.

    :param geometry: The geometry
    :param gen: The generator
    :param delta_phi: The omega potential change
    :param tolerance: Changes above this are logged as warnings
    :return: The change
    """
    moved = shift(geometry, delta_phi=delta_phi)
    variation = transverse_futaki(moved, potentials(gen, moved)) - transverse_futaki(geometry,
                                                                                      potentials(gen, geometry))
    level = logging.WARNING if abs(variation) > tolerance else logging.DEBUG
    logger.log(level, 'Transverse Futaki invariant of %s moved by %.3g under an omega shift', gen, variation)
    return variation
