from fractions import Fraction
from math import gcd
from typing import List, NamedTuple, Sequence, Tuple

Point = Tuple[Fraction, Fraction]


class Facet(NamedTuple):
    """
    The edge `<normal, p> + offset >= 0` of a polygon, `normal` being the primitive inner normal. `measure` is the
    Lebesgue length divided by the length of the normal.
    """
    normal: Tuple[int, int]
    offset: Fraction
    start: Point
    end: Point
    measure: Fraction

    def midpoint(self) -> Point:
        return (self.start[0] + self.end[0]) / 2, (self.start[1] + self.end[1]) / 2


def _primitive(dx: Fraction, dy: Fraction) -> Tuple[Tuple[int, int], Fraction]:
    """
    Write an edge vector as `length * u` with `u` a primitive integer vector.
    """
    denominator = dx.denominator * dy.denominator
    x, y = int(dx * denominator), int(dy * denominator)
    divisor = gcd(abs(x), abs(y))
    if divisor == 0:
        raise ValueError('Degenerate edge')

    return (x // divisor, y // divisor), Fraction(divisor, denominator)


class PolytopeData:
    """
    A lattice polygon given by its vertices in counter-clockwise order. All quantities are exact rationals.
    Coordinates are `(x, y)` with `x` the base momentum of `omega + k beta` and `y` the fibre momentum.
    """
    def __init__(self, vertices: Sequence[Tuple]):
        self.vertices: List[Point] = [(Fraction(x), Fraction(y)) for x, y in vertices]
        self.facets: List[Facet] = []
        count = len(self.vertices)
        for index in range(count):
            start, end = self.vertices[index], self.vertices[(index + 1) % count]
            (ux, uy), length = _primitive(end[0] - start[0], end[1] - start[1])
            normal = (-uy, ux)
            offset = -(normal[0] * start[0] + normal[1] * start[1])
            self.facets.append(Facet(normal, offset, start, end, length))

        if self.area <= 0:
            raise ValueError('The vertices must be given counter-clockwise')

    def __repr__(self) -> str:
        return f'PolytopeData({[(str(x), str(y)) for x, y in self.vertices]})'

    def __eq__(self, other) -> bool:
        return isinstance(other, PolytopeData) and self.vertices == other.vertices

    @property
    def area(self) -> Fraction:
        total = Fraction(0)
        count = len(self.vertices)
        for index in range(count):
            (x0, y0), (x1, y1) = self.vertices[index], self.vertices[(index + 1) % count]
            total += x0 * y1 - x1 * y0

        return total / 2

    @property
    def boundary_measure(self) -> Fraction:
        return sum((facet.measure for facet in self.facets), Fraction(0))

    @property
    def centroid(self) -> Point:
        cx, cy = Fraction(0), Fraction(0)
        count = len(self.vertices)
        for index in range(count):
            (x0, y0), (x1, y1) = self.vertices[index], self.vertices[(index + 1) % count]
            cross = x0 * y1 - x1 * y0
            cx += (x0 + x1) * cross
            cy += (y0 + y1) * cross

        return cx / (6 * self.area), cy / (6 * self.area)

    def contains(self, point: Point) -> bool:
        return all(facet.normal[0] * point[0] + facet.normal[1] * point[1] + facet.offset >= 0
                   for facet in self.facets)


def trapezoid(length: Fraction, twist: int) -> PolytopeData:
    """
    The Hirzebruch polygon `{0 <= y <= 1, 0 <= x <= length + twist (y - 1/2)}`.

    :param length: The mean length along the base direction
    :param twist: The slope of the slanted facet
    :return: The polygon
    """
    length = Fraction(length)
    half = Fraction(twist, 2)
    return PolytopeData([(0, 0), (length - half, 0), (length + half, 1), (0, 1)])


def rectangle(fibre: Fraction, base: Fraction) -> PolytopeData:
    """
    The product polygon `[0, base] x [0, fibre]`.
    """
    return PolytopeData([(0, 0), (Fraction(base), 0), (Fraction(base), Fraction(fibre)), (0, Fraction(fibre))])
