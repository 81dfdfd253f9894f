"""
Flat typed `key = value` experiment configuration. Every key has a type and a default; unknown keys and values of
the wrong type raise `ConfigError`.
"""
import logging
from typing import Any, Callable, Dict, NamedTuple

from ..geometry import providers
from ..types import HierarchyMapping
from ..types.hierarchy_mapping import normalize_key
from .errors import ConfigError
from .perturbations import parse_basis, parse_poly


logger = logging.getLogger(__name__)


def _integer(raw: str) -> int:
    return int(raw)


def _number(raw: str) -> float:
    return float(raw)


def _boolean(raw: str) -> bool:
    lowered = raw.lower()
    if lowered not in ('true', 'false'):
        raise ValueError(f'Expected true or false, got {raw!r}')

    return lowered == 'true'


def _text(raw: str) -> str:
    if not raw:
        raise ValueError('Empty value')

    return raw


def _list_of(item: Callable[[str], Any]) -> Callable[[str], list]:
    def parse(raw: str) -> list:
        values = [item(part.strip()) for part in raw.split(',') if part.strip()]
        if not values:
            raise ValueError('Empty list')

        return values

    return parse


def _provider(raw: str) -> str:
    name = raw.strip()
    if name not in providers.names:
        raise ValueError(f'Unknown provider {name!r}, known are {", ".join(providers.names)}')

    return name


def _poly(raw: str) -> str:
    parse_poly(raw)
    return raw


def _basis(raw: str) -> str:
    parse_basis(raw)
    return raw


class Option(NamedTuple):
    parse: Callable[[str], Any]
    default: Any
    help: str


SCHEMA: Dict[str, Option] = {
    'experiment': Option(_text, 'round-baseline', 'The experiment to run'),
    'provider.name': Option(_provider, 'product', 'The testbed fibration, product or hirzebruch'),
    'provider.a': Option(_integer, 1, 'The Hirzebruch twist'),
    'provider.b': Option(_number, 2., 'The Hirzebruch base class scale'),
    'provider.kappa': Option(_number, 1., 'The product base class scale'),
    'grid.n': Option(_integer, 32, 'Collocation nodes per axis'),
    'grid.refinement': Option(_list_of(_integer), [16, 24, 32], 'Grid sizes of refinement studies'),
    'ks': Option(_list_of(_number), [8., 16., 32.], 'Adiabatic parameters'),
    'epsilons': Option(_list_of(_number), [.05, .1, .2], 'Amplitudes of transverse potential shifts'),
    'seed': Option(_integer, 0, 'Seed of the random perturbations'),
    'samples': Option(_integer, 5, 'Random geometries per sweep'),
    'potentials': Option(_integer, 3, 'Random transverse potentials per geometry'),
    'perturbation.phi.poly': Option(_poly, '', 'Inline omega potential, c:i:j terms'),
    'perturbation.phi.basis': Option(_basis, '', 'Named omega potential terms, name:coefficient'),
    'perturbation.psi.poly': Option(_poly, '', 'Inline beta potential, c:0:j terms'),
    'perturbation.psi.basis': Option(_basis, '', 'Named beta potential terms, name:coefficient'),
    'tolerance.identity': Option(_number, 1e-6, 'Bound of identity defects and route disagreement'),
    'tolerance.round': Option(_number, 1e-8, 'Bound of round baseline errors'),
    'tolerance.order': Option(_number, .9, 'Smallest accepted decay order'),
    'tolerance.oracle': Option(_number, 1e-4, 'Relative error bound of the toric oracle'),
    'flow.dt': Option(_number, 0., 'Flow step, 0 for the automatic stability bound'),
    'flow.max_steps': Option(_integer, 10000, 'Accepted flow steps allowed'),
    'flow.tol': Option(_number, 1e-6, 'Flow residual tolerance'),
    'flow.retries': Option(_integer, 8, 'Step halvings allowed'),
    'flow.n': Option(_integer, 12, 'Collocation nodes per axis of the flow, small because the step is explicit'),
    'output': Option(_text, 'reports', 'The report directory'),
}


def default_config() -> HierarchyMapping:
    """
    A config holding every default, in schema order.
    """
    config = HierarchyMapping()
    for key, option in SCHEMA.items():
        config[key] = list(option.default) if isinstance(option.default, list) else option.default

    return config


def set_option(config: HierarchyMapping, key: str, raw: str, where: str = '') -> Any:
    """
    Parse and store one option.

    :param config: The config to update
    :param key: The dotted key, dashes allowed
    :param raw: The unparsed value
    :param where: A location prefix for error messages
    :return: The parsed value
    """
    try:
        key = normalize_key(key)
    except KeyError as err:
        raise ConfigError(f'{where}Malformed key {key!r}') from err

    option = SCHEMA.get(key)
    if option is None:
        raise ConfigError(f'{where}Unknown key {key!r}')

    try:
        value = option.parse(raw.strip())
    except ConfigError as err:
        raise ConfigError(f'{where}{key}: {err}') from err
    except ValueError as err:
        raise ConfigError(f'{where}Bad value {raw.strip()!r} for {key!r}: {err}') from err

    config[key] = value
    return value


def parse_config(text: str, source: str = '<config>') -> HierarchyMapping:
    """
    Parse config text over the defaults.

    :param text: Lines of `key = value`, `#` comments and blank lines
    :param source: The name used in error messages
    :return: The config
    """
    config = default_config()
    for number, line in enumerate(text.splitlines(), 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue

        key, separator, raw = line.partition('=')
        where = f'{source}:{number}: '
        if not separator:
            raise ConfigError(f'{where}Expected key = value, got {line!r}')

        set_option(config, key, raw, where)

    return config


def load_config(path: str = None) -> HierarchyMapping:
    """
    Read a config file, or return the defaults when there is none.
    """
    if path is None:
        return default_config()

    try:
        with open(path, 'r') as config_file:
            text = config_file.read()
    except OSError as err:
        raise ConfigError(f'Cannot read config {path!r}: {err}') from err

    logger.debug('Read config from %s', path)
    return parse_config(text, path)


def apply_overrides(config: HierarchyMapping, experiment: str = None, grid: int = None, seed: int = None,
                    out: str = None) -> HierarchyMapping:
    """
    Apply command line overrides to a copy of the config.
    """
    config = config.copy()
    for key, value in (('experiment', experiment), ('grid.n', grid), ('seed', seed), ('output', out)):
        if value is not None:
            set_option(config, key, str(value), 'command line: ')

    return config
