"""Newton polygons and lattice-point geometry.

Polygons are stored by their extreme points in counterclockwise order,
starting from the lexicographically smallest vertex.  Edges carry primitive
outward normals and the number of lattice points they contain.

Interior and boundary counts use Pick's theorem on the exact doubled area,
so no enumeration is needed for large polygons.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from .poly import PolynomialError, SparsePolynomial

Point = Tuple[int, int]


class GeometryError(ValueError):
    """Invalid geometric input (for example a non-convex vertex cycle)."""


@dataclass(frozen=True)
class Edge:
    """A side of a Newton polygon.

    Attributes
    ----------
    start, end : tuple of int
        Endpoints; ``start`` comes first when the boundary is traversed
        counterclockwise.
    normal : tuple of int
        Primitive outward normal ``(alpha, beta)``.
    lattice_count : int
        Lattice points on the closed edge.
    on_axis : bool
        Both endpoints lie on the same coordinate axis.
    """

    start: Point
    end: Point
    normal: Tuple[int, int]
    lattice_count: int
    on_axis: bool

    @property
    def n_gamma(self) -> int:
        """Number of primitive segments, ``lattice_count - 1``."""
        return self.lattice_count - 1

    @property
    def direction(self) -> Tuple[int, int]:
        """Primitive step from ``start`` towards ``end``; equals ``(-beta, alpha)``."""
        a, b = self.normal
        return (-b, a)

    @property
    def support_value(self) -> int:
        """``<normal, p>`` for any point ``p`` of the edge."""
        return self.normal[0] * self.start[0] + self.normal[1] * self.start[1]

    def lattice_points(self) -> List[Point]:
        """Lattice points from ``start`` to ``end`` in traversal order."""
        dl, dm = self.direction
        u0, v0 = self.start
        return [(u0 + k * dl, v0 + k * dm) for k in range(self.lattice_count)]

    def contains(self, p: Point) -> bool:
        return p in self.lattice_points()

    def as_dict(self) -> dict:
        return {
            "start": list(self.start),
            "end": list(self.end),
            "normal": list(self.normal),
            "lattice_count": self.lattice_count,
            "on_axis": self.on_axis,
        }


def _make_edge(start: Point, end: Point) -> Edge:
    dx, dy = end[0] - start[0], end[1] - start[1]
    g = gcd(abs(dx), abs(dy))
    if g == 0:
        raise GeometryError("edge endpoints coincide")
    normal = (dy // g, -dx // g)
    on_axis = (start[0] == 0 and end[0] == 0) or (start[1] == 0 and end[1] == 0)
    return Edge(tuple(start), tuple(end), normal, g + 1, on_axis)


@dataclass(frozen=True)
class Face:
    """A face of a polygon selected by a covector.

    ``kind`` is ``'vertex'``, ``'edge'`` or ``'polygon'``; ``vertices`` are the
    extreme points of the face, and ``edge`` is set for edge faces.
    """

    kind: str
    vertices: Tuple[Point, ...]
    edge: Optional[Edge] = None

    def describe(self) -> str:
        if self.kind == "vertex":
            return f"vertex {self.vertices[0]}"
        if self.kind == "edge":
            return f"edge {self.vertices[0]}-{self.vertices[1]}"
        return "polygon"


@dataclass(frozen=True)
class NewtonPolygon:
    """Convex lattice polygon given by its counterclockwise extreme points.

    Attributes
    ----------
    vertices : tuple of points
        Extreme points, counterclockwise from the lexicographically smallest.
    dimension : int
        Affine dimension (0, 1 or 2).
    edges : tuple of Edge
        Sides in counterclockwise order; empty unless ``dimension == 2``.
    """

    vertices: Tuple[Point, ...]
    dimension: int
    edges: Tuple[Edge, ...] = field(default=())

    @classmethod
    def from_points(cls, points: Iterable[Point]) -> "NewtonPolygon":
        """Convex hull of a finite nonempty point set (monotone chain)."""
        pts = sorted(set((int(a), int(b)) for a, b in points))
        if not pts:
            raise GeometryError("convex hull of an empty point set")
        if len(pts) == 1:
            return cls((pts[0],), 0, ())
        hull = _monotone_chain(pts)
        if len(hull) == 2:
            return cls(tuple(hull), 1, ())
        edges = tuple(_make_edge(hull[k], hull[(k + 1) % len(hull)]) for k in range(len(hull)))
        return cls(tuple(hull), 2, edges)

    # queries -----------------------------------------------------------

    def contains(self, p: Point) -> bool:
        """Whether the lattice point ``p`` lies in the closed polygon."""
        if self.dimension == 0:
            return tuple(p) == self.vertices[0]
        if self.dimension == 1:
            a, b = self.vertices
            cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
            if cross:
                return False
            return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
        return all(e.normal[0] * p[0] + e.normal[1] * p[1] <= e.support_value for e in self.edges)

    def strictly_inside(self, p: Point) -> bool:
        """Relative-interior membership (interior of the minimal affine span)."""
        if self.dimension == 0:
            return False
        if self.dimension == 1:
            return self.contains(p) and tuple(p) not in self.vertices
        return all(e.normal[0] * p[0] + e.normal[1] * p[1] < e.support_value for e in self.edges)

    def area_twice(self) -> int:
        return polygon_area_twice(self.vertices) if self.dimension == 2 else 0

    def boundary_lattice_count(self) -> int:
        if self.dimension == 0:
            return 1
        if self.dimension == 1:
            a, b = self.vertices
            return gcd(abs(b[0] - a[0]), abs(b[1] - a[1])) + 1
        return sum(e.n_gamma for e in self.edges)

    def interior_points(self) -> List[Point]:
        """Enumerate relative-interior lattice points (bounding-box scan)."""
        if self.dimension == 0:
            return []
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return [(a, b) for a in range(min(xs), max(xs) + 1) for b in range(min(ys), max(ys) + 1)
                if self.strictly_inside((a, b))]

    def off_axis_edges(self) -> List[Edge]:
        return [e for e in self.edges if not e.on_axis]

    def puncture_edges(self) -> List[Edge]:
        """Off-axis edges whose outward normal has a positive coordinate.

        These are the sides facing infinity in the torus; under the
        rectangle condition they are exactly the off-axis sides.
        """
        return [e for e in self.edges if not e.on_axis and (e.normal[0] > 0 or e.normal[1] > 0)]

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "vertices": [list(v) for v in self.vertices],
            "edges": [e.as_dict() for e in self.edges],
        }


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _monotone_chain(pts: Sequence[Point]) -> List[Point]:
    lower: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull


def newton_polygon(f: SparsePolynomial, relaxed: bool = False) -> NewtonPolygon:
    """Newton polygon of ``f``: the convex hull of its support.

    Parameters
    ----------
    f : SparsePolynomial
        Nonzero polynomial.
    relaxed : bool
        If true, return the relaxed polygon: the hull of the origin together
        with the off-axis sides of the ordinary polygon (see
        :func:`relaxed_polygon`).

    Raises
    ------
    PolynomialError
        For the zero polynomial.

    Examples
    --------
    >>> from newton_atlas.parser import parse_polynomial
    >>> newton_polygon(parse_polynomial("z^3+w^3-1")).vertices
    ((0, 0), (3, 0), (0, 3))
    """
    if f.is_zero():
        raise PolynomialError("the zero polynomial has no Newton polygon")
    P = NewtonPolygon.from_points(f.terms.keys())
    return relaxed_polygon(P) if relaxed else P


def relaxed_polygon(P: NewtonPolygon) -> NewtonPolygon:
    """Hull of the origin and the off-axis sides of ``P``.

    For polygons of dimension below two the origin is simply adjoined.
    """
    pts = [(0, 0)]
    if P.dimension == 2:
        for e in P.off_axis_edges():
            pts.extend([e.start, e.end])
    else:
        pts.extend(P.vertices)
    return NewtonPolygon.from_points(pts)


def _primitive(v: Tuple[int, int]) -> Tuple[int, int]:
    g = gcd(abs(v[0]), abs(v[1]))
    return (v[0] // g, v[1] // g) if g else (0, 0)


def face_for_covector(P: NewtonPolygon, eta: Tuple[int, int]) -> Face:
    """Face of ``P`` on which ``x -> <eta, x>`` attains its maximum.

    ``eta = (0, 0)`` selects the whole polygon.

    Examples
    --------
    >>> from newton_atlas.parser import parse_polynomial
    >>> P = newton_polygon(parse_polynomial("z^3+w^3-1"))
    >>> face_for_covector(P, (1, 1)).vertices
    ((3, 0), (0, 3))
    >>> face_for_covector(P, (-1, -1)).vertices
    ((0, 0),)
    """
    a, b = eta
    if a == 0 and b == 0:
        return Face("polygon", P.vertices)
    values = [a * v[0] + b * v[1] for v in P.vertices]
    top = max(values)
    maximisers = [v for v, s in zip(P.vertices, values) if s == top]
    if len(maximisers) == 1:
        return Face("vertex", (maximisers[0],))
    if P.dimension == 2:
        for e in P.edges:
            if e.start in maximisers and e.end in maximisers:
                return Face("edge", (e.start, e.end), e)
        raise GeometryError("inconsistent polygon: maximising vertices do not span an edge")
    # a segment orthogonal to eta: orient it so that the normal is eta
    n = _primitive((a, b))
    p, q = maximisers
    step = (-n[1], n[0])
    if (q[0] - p[0]) * step[0] + (q[1] - p[1]) * step[1] < 0:
        p, q = q, p
    g = gcd(abs(q[0] - p[0]), abs(q[1] - p[1]))
    on_axis = (p[0] == 0 and q[0] == 0) or (p[1] == 0 and q[1] == 0)
    return Face("edge", (p, q), Edge(p, q, n, g + 1, on_axis))


def polygon_area_twice(vertices: Sequence[Point]) -> int:
    """Twice the area of a convex counterclockwise lattice polygon.

    Raises
    ------
    GeometryError
        If the cycle turns clockwise anywhere (non-convex or wrongly oriented).

    Examples
    --------
    >>> polygon_area_twice([(1, 1), (3, 0), (0, 3)])
    3
    """
    n = len(vertices)
    if n < 3:
        return 0
    for k in range(n):
        if _cross(vertices[k], vertices[(k + 1) % n], vertices[(k + 2) % n]) < 0:
            raise GeometryError("vertex cycle is not convex and counterclockwise")
    return signed_area_twice(vertices)


def signed_area_twice(vertices: Sequence[Point]) -> int:
    """Shoelace sum of an arbitrary closed vertex cycle."""
    n = len(vertices)
    return sum(vertices[k][0] * vertices[(k + 1) % n][1] - vertices[(k + 1) % n][0] * vertices[k][1]
               for k in range(n))


def interior_lattice_count(P: NewtonPolygon) -> int:
    """Lattice points in the relative interior of ``P``.

    For a polygon this follows from Pick's theorem, ``2I = 2A - B + 2``; for a
    segment it is ``gcd - 1``; for a point it is zero.
    """
    if P.dimension == 0:
        return 0
    if P.dimension == 1:
        return P.boundary_lattice_count() - 2
    twice = P.area_twice() - P.boundary_lattice_count() + 2
    return twice // 2


@dataclass(frozen=True)
class ConditionResult:
    """Outcome of the rectangle condition: ``holds`` or a failing vertex."""

    holds: bool
    witness: Optional[Point] = None
    missing: Optional[Point] = None

    def as_dict(self) -> dict:
        return {
            "holds": self.holds,
            "witness": list(self.witness) if self.witness is not None else None,
            "missing": list(self.missing) if self.missing is not None else None,
        }


def check_condition_i(P: NewtonPolygon) -> ConditionResult:
    """Rectangle condition: ``P`` contains ``[0,u] x [0,v]`` for each of its points.

    By convexity it suffices to test the corners ``(0,0)``, ``(u,0)`` and
    ``(0,v)`` for every vertex ``(u,v)``.  On failure the witness is the
    vertex and ``missing`` the absent corner.

    Examples
    --------
    >>> from newton_atlas.parser import parse_polynomial
    >>> check_condition_i(newton_polygon(parse_polynomial("z*w"))).witness
    (1, 1)
    """
    for u, v in P.vertices:
        for corner in ((0, 0), (u, 0), (0, v)):
            if not P.contains(corner):
                return ConditionResult(False, (u, v), corner)
    return ConditionResult(True)
