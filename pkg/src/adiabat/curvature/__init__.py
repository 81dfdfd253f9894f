from .errors import CurvatureError, MetricNotPositiveError
from .leafwise import log_hessian, leafwise_ricci, leafwise_scalar
from .transverse import transverse_ricci_scalar, lichnerowicz_transverse, lichnerowicz_matrix, rho_horizontal, \
    operator_P, linearized_twisted, scalar_variation, volume_variation, mixed_ricci_pairing
from .total import total_scalar, fine_expansion_coefficient, fine_expansion_defect
from .twisted import Averages, averages, leafwise_average, adiabatic_constant, twisted_average, total_average, \
    weil_petersson, weil_petersson_contraction, twisted_scalar_pointwise, twisted_base_scalar, \
    omega_self_intersection, lambda_gap
from .bundle import CurvatureBundle
