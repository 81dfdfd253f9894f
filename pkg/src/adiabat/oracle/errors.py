from ..errors import AdiabatError


class OracleError(AdiabatError):
    pass


class UnknownReferenceError(OracleError, KeyError):
    pass


class NonAffineFunctionError(OracleError):
    pass


class CalibrationError(OracleError):
    pass
