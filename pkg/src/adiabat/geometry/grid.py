import logging
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from scipy.linalg import toeplitz


logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def chebyshev_gauss(n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Build the interior Chebyshev-Gauss collocation data on [0, 1].

    The nodes are `tau_k = (1 - cos theta_k) / 2` with `theta_k = (2k + 1) pi / 2n`, ascending. The quadrature is
    Fejer's first rule mapped to [0, 1] and the differentiation matrix is the barycentric one. Node differences use
    the product-of-sines identity and the diagonal uses the negative sum trick, so constants differentiate to zero
    up to rounding.

    :param n: The number of nodes
    :return: The nodes, the quadrature weights and the differentiation matrix
    """
    if n < 2:
        raise ValueError(f'At least 2 nodes are needed, got {n}')

    k = np.arange(n)
    theta = (2 * k + 1) * np.pi / (2 * n)
    nodes = (1 - np.cos(theta)) / 2

    j = np.arange(1, n // 2 + 1)
    weights = (1 - 2 * np.sum(np.cos(2 * np.outer(theta, j)) / (4 * j ** 2 - 1), axis=1)) / n

    half_sum = (theta[:, None] + theta[None, :]) / 2
    half_difference = (theta[:, None] - theta[None, :]) / 2
    differences = np.sin(half_sum) * np.sin(half_difference)
    np.fill_diagonal(differences, 1.)

    sines = np.sin(theta)
    ratios = toeplitz((-1.) ** k) * sines[None, :] / sines[:, None]
    derivative = ratios / differences
    np.fill_diagonal(derivative, 0.)
    np.fill_diagonal(derivative, -np.sum(derivative, axis=1))

    for array in (nodes, weights, derivative):
        array.setflags(write=False)

    return nodes, weights, derivative


class GridSpec:
    """
    The tensor collocation grid in the reference momentum square. Axis 0 of every nodal array is the fibre
    coordinate `tau1`, axis 1 is the base coordinate `tau2`.

    The grid also owns the chart: `d1` and `d2` are the cylinder derivatives along `s1` and `s2`. With a nonzero
    `twist` the fibre coordinate is sheared along the base, which is the chart of the Hirzebruch surface.
    """
    def __init__(self, n1: int, n2: int = None, twist: int = 0):
        """
        Initialize the `GridSpec` instance.

        :param n1: The number of nodes along the fibre coordinate
        :param n2: The number of nodes along the base coordinate, defaults to `n1`
        :param twist: The twist of the chart, 0 for products
        """
        n2 = n1 if n2 is None else n2
        self._n1 = int(n1)
        self._n2 = int(n2)
        self._twist = int(twist)

        self.tau1, self.w1, self.D1 = chebyshev_gauss(self._n1)
        self.tau2, self.w2, self.D2 = chebyshev_gauss(self._n2)
        self.q1 = self.tau1 * (1 - self.tau1)
        self.q2 = self.tau2 * (1 - self.tau2)

        logger.debug('Built a %dx%d grid with twist %d', self._n1, self._n2, self._twist)

    def __repr__(self) -> str:
        return f'GridSpec({self._n1}, {self._n2}, twist={self._twist})'

    def __eq__(self, other) -> bool:
        if not isinstance(other, GridSpec):
            return NotImplemented

        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def key(self) -> Tuple[int, int, int]:
        return self._n1, self._n2, self._twist

    @property
    def n1(self) -> int:
        return self._n1

    @property
    def n2(self) -> int:
        return self._n2

    @property
    def twist(self) -> int:
        return self._twist

    @property
    def shape(self) -> Tuple[int, int]:
        return self._n1, self._n2

    @property
    def T1(self) -> np.ndarray:
        """
        The fibre coordinate broadcast over the grid.
        """
        return np.broadcast_to(self.tau1[:, None], self.shape)

    @property
    def T2(self) -> np.ndarray:
        """
        The base coordinate broadcast over the grid.
        """
        return np.broadcast_to(self.tau2[None, :], self.shape)

    @property
    def Q1(self) -> np.ndarray:
        return np.broadcast_to(self.q1[:, None], self.shape)

    @property
    def Q2(self) -> np.ndarray:
        return np.broadcast_to(self.q2[None, :], self.shape)

    def sample(self, function: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> np.ndarray:
        """
        Evaluate a function of `(tau1, tau2)` on every node.

        :param function: A vectorized function of the two momentum coordinates
        :return: The nodal array
        """
        values = np.asarray(function(self.T1, self.T2), dtype=float)
        return np.array(np.broadcast_to(values, self.shape))

    def cylinder_coordinates(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        The cylinder coordinates `(s1, s2)` of the nodes. `s2 = logit(tau2)` and
        `s1 = logit(tau1) + twist * log(1 - tau2)`.

        :return: The two nodal arrays
        """
        logit1 = np.log(self.tau1) - np.log1p(-self.tau1)
        logit2 = np.log(self.tau2) - np.log1p(-self.tau2)
        s1 = logit1[:, None] + self._twist * np.log1p(-self.tau2)[None, :]
        s2 = np.broadcast_to(logit2[None, :], self.shape)
        return np.array(s1), np.array(s2)

    def d_tau1(self, values: np.ndarray) -> np.ndarray:
        return self.D1 @ values

    def d_tau2(self, values: np.ndarray) -> np.ndarray:
        return values @ self.D2.T

    def d1(self, values: np.ndarray) -> np.ndarray:
        """
        The cylinder derivative along `s1` at fixed `s2`.

        :param values: Nodal values
        :return: Nodal values of the derivative
        """
        return self.q1[:, None] * self.d_tau1(values)

    def d2(self, values: np.ndarray) -> np.ndarray:
        """
        The cylinder derivative along `s2` at fixed `s1`. In the twisted chart moving along the base at fixed `s1`
        also moves `tau1`, hence the extra term.

        :param values: Nodal values
        :return: Nodal values of the derivative
        """
        result = self.q2[None, :] * self.d_tau2(values)
        if self._twist:
            result = result + self._twist * self.T2 * self.d1(values)

        return result

    def d2_base(self, values: np.ndarray) -> np.ndarray:
        """
        The derivative along `s2` of a function of the base coordinate alone. Only the first fibre row is read, so
        the twist term and the rounding noise it would pick up along the fibres never enter.

        :param values: Nodal values that are constant along the fibre axis
        :return: Nodal values of the derivative, again constant along the fibre axis
        """
        return self.spread(self.q2 * (self.D2 @ np.asarray(values)[0]))

    def integrate(self, values: np.ndarray) -> float:
        """
        Tensor quadrature over the square `[0, 1]^2` in `tau` coordinates.

        :param values: Nodal values
        :return: The integral
        """
        return float(self.w1 @ values @ self.w2)

    def integrate_fibres(self, values: np.ndarray) -> np.ndarray:
        """
        Quadrature over `tau1` at every base node.

        :param values: Nodal values
        :return: One value per base node
        """
        return self.w1 @ values

    def spread(self, base_values: np.ndarray) -> np.ndarray:
        """
        Store base values redundantly along the fibre axis.

        :param base_values: One value per base node
        :return: The nodal array
        """
        return np.array(np.broadcast_to(np.asarray(base_values, dtype=float)[None, :], self.shape))
