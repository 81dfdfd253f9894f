from .errors import FlowError, StepSizeError, NonConvergenceError
from .state import FlowState, TracePoint, Defects, defects, energy
from .solver import residuals, step, solve, stable_dt, metric_scale
