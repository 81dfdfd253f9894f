from .errors import GeometryError, PositivityError, FieldAxisError, GeneratorError, ProviderError
from .grid import GridSpec, chebyshev_gauss
from .fields import ScalarField, TwoForm, hessian_form, wedge_density, s1, s2, \
    TOTAL_SPACE, BASE_ONLY, FIBRE_PROFILE
from .fibration import FibrationGeometry, Weight, OMEGA_BETA, shift, split_form, contract, integrate, \
    integrate_base, fibre_average, fibre_volumes, average, laplacian, gradient_pairing, form_pairing, \
    horizontal_component, horizontal_derivative, TRANSVERSE, LEAFWISE, FIBRE, GLOBAL, TWO_PI
from .providers import providers, Provider, ProductProvider, HirzebruchProvider, make_product_geometry, \
    make_hirzebruch_geometry, make_geometry
from .torus import TorusField, potentials, vector_field_action, FIBRE_GENERATOR, BASE_GENERATOR
