from typing import Callable

from ..types import HierarchyMapping
from .report import ExperimentReport


Experiment = Callable[[HierarchyMapping], ExperimentReport]

experiments = {}


def register_implementation(name: str, experiment: Experiment):
    """
    Register an experiment under a given name.

    :param name: The name of the experiment
    :param experiment: The experiment, a callable taking the config and returning its report
    """
    if name in experiments:
        raise KeyError(f'Implementation {repr(name)} already exists')

    experiments[name] = experiment


def implementation(name: str) -> Callable[[Experiment], Experiment]:
    """
    Returns a decorator that registers an experiment with a given name.

    :param name: The name of the experiment
    :return: A decorator that should wrap the experiment
    """
    def hook(experiment: Experiment) -> Experiment:
        register_implementation(name, experiment)
        return experiment

    return hook


def get(name: str) -> Experiment:
    """
    Get a registered experiment. Raises `KeyError` if it wasn't registered.

    :param name: The name of the experiment
    :return: The experiment
    """
    return experiments[name]
