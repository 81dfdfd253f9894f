from ..errors import AdiabatError


class GeometryError(AdiabatError):
    pass


class PositivityError(GeometryError):
    """
    Raised when a metric component fails to be positive. Carries the first offending node.
    """
    def __init__(self, quantity: str, node: tuple, tau: tuple, value: float):
        super().__init__(f'{quantity} is not positive at node {node} (tau = {tau[0]:.6g}, {tau[1]:.6g}): {value:.6g}')
        self.quantity = quantity
        self.node = node
        self.tau = tau
        self.value = value


class FieldAxisError(GeometryError):
    pass


class GeneratorError(GeometryError):
    pass


class ProviderError(GeometryError):
    pass
