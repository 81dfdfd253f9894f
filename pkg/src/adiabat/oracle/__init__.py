from .errors import OracleError, UnknownReferenceError, NonAffineFunctionError, CalibrationError
from .polytope import PolytopeData, Facet, trapezoid, rectangle
from .toric import AffineFunction, Calibration, EXPECTED_CALIBRATION, EXPECTED_CONSTANT, affine_function, \
    boundary_integral, interior_integral, toric_scalar_average, toric_futaki_raw, calibrate, toric_futaki_oracle
from .reference import ClosedForm, closed_form_reference, REFERENCE_NAMES
from .derivatives import fd_directional_derivative, refinement_decays, richardson_order
