from ..errors import AdiabatError


class CurvatureError(AdiabatError):
    pass


class MetricNotPositiveError(CurvatureError):
    """
    Raised when `omega_k` fails to be a Kaehler metric. Carries the minimal eigenvalue and its node.
    """
    def __init__(self, k: float, node: tuple, eigenvalue: float):
        super().__init__(f'omega + {k} beta is not positive at node {node}: minimal eigenvalue {eigenvalue:.6g}')
        self.k = k
        self.node = node
        self.eigenvalue = eigenvalue
