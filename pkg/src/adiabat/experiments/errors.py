from ..errors import AdiabatError


class ExperimentError(AdiabatError):
    pass


class ConfigError(ExperimentError):
    """
    Raised for unparseable config text, unknown keys and values of the wrong type.
    """
    pass


class ExperimentFailed(ExperimentError):
    """
    Raised after a report was written when one of its verdicts failed.
    """
    def __init__(self, experiment: str, failed: list):
        super().__init__(f'Experiment {repr(experiment)} failed: {", ".join(failed)}')
        self.experiment = experiment
        self.failed = failed
