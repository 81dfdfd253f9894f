from .errors import ExperimentError, ConfigError, ExperimentFailed
from .config import SCHEMA, default_config, parse_config, load_config, apply_overrides, set_option
from .perturbations import BASIS, parse_poly, parse_basis, perturbation_profile, random_perturbation, \
    random_potential
from .report import ExperimentReport, Table, write_report
from .store import experiments, register_implementation, implementation
from .runner import execute, run, VERIFY_ALL

# Import the experiments so they register themselves
from . import baseline, sweeps, identities, convergence
