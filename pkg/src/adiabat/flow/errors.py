from ..errors import AdiabatError


class FlowError(AdiabatError):
    pass


class StepSizeError(FlowError):
    """
    Raised when a step keeps failing after the allowed number of step halvings.
    """
    def __init__(self, dts: list, residuals: tuple, reason: str):
        super().__init__(f'Step failed after {len(dts)} attempts (last dt {dts[-1]:.3g}): {reason}')
        self.dts = dts
        self.residuals = residuals
        self.reason = reason


class NonConvergenceError(FlowError):
    """
    Raised when the flow doesn't reach its tolerance. Carries the residual trace and the last geometry.
    """
    def __init__(self, trace: list, tol: float, geometry=None):
        last = trace[-1]
        super().__init__(f'No convergence to {tol:.3g} after {len(trace) - 1} steps '
                         f'(r_fibre = {last.r_fibre:.3g}, r_base = {last.r_base:.3g})')
        self.trace = trace
        self.tol = tol
        self.geometry = geometry
