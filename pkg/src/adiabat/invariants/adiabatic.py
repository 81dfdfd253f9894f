from typing import Iterable, List, NamedTuple, Optional, Tuple

from ..curvature import CurvatureBundle, fine_expansion_defect, total_average
from ..geometry import FibrationGeometry, TorusField
from ..oracle import richardson_order
from .futaki import classical_futaki, transverse_futaki


# Defects below this are treated as exact zeros and carry no order
ORDER_FLOOR = 1e-13


class AdiabaticRow(NamedTuple):
    k: float
    normalized_classical: float
    transverse: float
    difference: float


class AdiabaticTable(NamedTuple):
    rows: List[AdiabaticRow]
    order: Optional[float]


def fitted_order(pairs: Iterable[Tuple[float, float]], floor: float = ORDER_FLOOR) -> Optional[float]:
    """
    The Richardson decay order of `(k, defect)` pairs in increasing `k`. Defects at or below `floor` are exact zeros
    up to rounding and carry no order, so only the defects above it are fitted. A defect that rises above the floor
    after reaching it is growth, and the whole series is fitted with the floor as its smallest value.

    :param pairs: `(k, defect)` pairs
    :param floor: The exactness floor
    :return: The order, or `None` when the defects reach the floor before two of them can be fitted
    """
    pairs = [(k, abs(value)) for k, value in pairs]
    exact = [value <= floor for _, value in pairs]
    if True in exact and not all(exact[exact.index(True):]):
        return richardson_order((k, max(value, floor)) for k, value in pairs)

    resolved = [pair for pair, is_exact in zip(pairs, exact) if not is_exact]
    if len(resolved) < 2:
        return None

    return richardson_order(resolved)


def adiabatic_table(geometry: FibrationGeometry, v: TorusField, ks: Iterable[float],
                    floor: float = ORDER_FLOOR) -> AdiabaticTable:
    """
    Compare the classical invariants of `omega + k beta`, normalized by `2k`, with the transverse invariant.

    :param geometry: The geometry
    :param v: A torus field of the geometry
    :param ks: The adiabatic parameters
    :param floor: Differences at or below this are exact zeros
    :return: The rows and the fitted decay order of the difference
    """
    transverse = transverse_futaki(geometry, v)
    rows = []
    for k in ks:
        normalized = classical_futaki(geometry, v, k) / (2 * k)
        rows.append(AdiabaticRow(k, normalized, transverse, normalized - transverse))

    return AdiabaticTable(rows, fitted_order(((row.k, row.difference) for row in rows), floor))


def average_expansion_defects(geometry: FibrationGeometry, ks: Iterable[float]) -> List[Tuple[float, float]]:
    """
    `|k (S_k hat - S_F hat) - lambda|` for every `k`.
    """
    curvature = CurvatureBundle(geometry)
    return [(k, abs(k * (total_average(geometry, k) - curvature.S_F_hat) - curvature.lam)) for k in ks]


def fine_expansion_defects(geometry: FibrationGeometry, ks: Iterable[float]) -> List[Tuple[float, float]]:
    """
    The sup-norm defect of the pointwise expansion of `S(omega_k)` for every `k`.
    """
    return [(k, fine_expansion_defect(geometry, k)) for k in ks]
