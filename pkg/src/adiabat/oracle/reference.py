"""
Closed-form reference values, all derived symbolically from the Fubini-Study potential `log(1 + e^s)` and from the
boundary formula of the testbed polygons.
"""
from functools import lru_cache
from typing import Callable, Dict

import sympy

from .errors import UnknownReferenceError


s, tau, k, a, b, kappa = sympy.symbols('s tau k a b kappa', positive=True)


def _fubini_study_scalar() -> sympy.Expr:
    potential = sympy.log(1 + sympy.exp(s))
    metric = sympy.simplify(sympy.diff(potential, s, 2))
    log_metric = sympy.expand_log(sympy.log(metric), force=True)
    return sympy.simplify(-sympy.diff(log_metric, s, 2) / metric)


def _moment_laplacian() -> sympy.Expr:
    moment = sympy.diff(sympy.log(1 + sympy.exp(s)), s)
    metric = sympy.diff(moment, s)
    laplacian = sympy.diff(moment, s, 2) / metric
    return sympy.simplify(laplacian.subs(s, sympy.log(tau / (1 - tau))))


def _round_product() -> Dict[str, sympy.Expr]:
    scalar = _fubini_study_scalar()
    # Both factors have unit momentum length, so the averages are the pointwise values
    return {'S_F': scalar, 'S_beta': scalar, 'lambda': scalar, 'S_pi': scalar, 'alpha_pi': sympy.Integer(0)}


def _round_product_k() -> Dict[str, sympy.Expr]:
    scalar = _fubini_study_scalar()
    total = scalar + scalar / (k * kappa)
    return {'S_k': total, 'S_k_hat': total, 'S_beta': scalar / kappa}


def _hirzebruch() -> Dict[str, sympy.Expr]:
    length = k * b
    boundary = 2 + 2 * length
    return {
        'S_F': sympy.Integer(2),
        'lambda': 2 / b,
        'S_pi': 2 / b,
        'S_k_hat': boundary / length,
        'futaki_fibre': 2 * (a / 3 - a / (6 * length)),
        'futaki_base': 2 * (a ** 2 / 6 - a ** 2 / (12 * length)),
    }


_REFERENCES = {
    'round_product': _round_product,
    'round_product_k': _round_product_k,
    'fs_scalar': lambda: {'S': _fubini_study_scalar()},
    'fs_moment_laplacian': lambda: {'laplacian': _moment_laplacian()},
    'hirzebruch': _hirzebruch,
}

REFERENCE_NAMES = tuple(_REFERENCES)


class ClosedForm:
    """
    A named record of closed-form values. Values are sympy expressions in the symbols `tau`, `k`, `a`, `b` and
    `kappa`.
    """
    def __init__(self, name: str, values: Dict[str, sympy.Expr]):
        self.name = name
        self.values = values

    def __repr__(self) -> str:
        return f'ClosedForm({self.name!r}, {self.values!r})'

    def __getitem__(self, key: str) -> sympy.Expr:
        return self.values[key]

    def value(self, key: str, **symbols) -> float:
        """
        Evaluate one entry as a number.

        :param key: The entry
        :param symbols: Values of the free symbols, by name
        :return: The number
        """
        substitutions = {sympy.Symbol(name, positive=True): value for name, value in symbols.items()}
        expression = self.values[key].subs(substitutions)
        return float(expression)

    def function(self, key: str) -> Callable:
        """
        Lambdify one entry over its free symbols, ordered by name.
        """
        expression = self.values[key]
        arguments = sorted(expression.free_symbols, key=lambda symbol: symbol.name)
        return sympy.lambdify(arguments, expression, 'numpy')


@lru_cache(maxsize=None)
def closed_form_reference(name: str) -> ClosedForm:
    """
    Look up a closed-form reference record.

    :param name: One of `REFERENCE_NAMES`
    :return: The record
    """
    try:
        builder = _REFERENCES[name]
    except KeyError as err:
        raise UnknownReferenceError(name) from err

    return ClosedForm(name, builder())
