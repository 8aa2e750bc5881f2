import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newton_atlas.lattice import (GeometryError, NewtonPolygon, check_condition_i, face_for_covector,
                                  interior_lattice_count, newton_polygon, polygon_area_twice, relaxed_polygon)
from newton_atlas.parser import parse_polynomial as P
from newton_atlas.poly import PolynomialError, SparsePolynomial

point_sets = st.lists(st.tuples(st.integers(0, 10), st.integers(0, 10)), min_size=1, max_size=12, unique=True)


def brute_interior(poly: NewtonPolygon) -> int:
    if poly.dimension == 0:
        return 0
    xs = [v[0] for v in poly.vertices]
    ys = [v[1] for v in poly.vertices]
    return sum(poly.strictly_inside((a, b)) for a in range(min(xs), max(xs) + 1) for b in range(min(ys), max(ys) + 1))


def test_triangle_of_z3_w3_minus_1():
    poly = newton_polygon(P("z^3+w^3-1"))
    assert poly.vertices == ((0, 0), (3, 0), (0, 3))
    assert poly.dimension == 2
    assert interior_lattice_count(poly) == 1


def test_constant_and_segment():
    assert newton_polygon(P("5")).dimension == 0
    seg = newton_polygon(P("z^4-1"))
    assert seg.dimension == 1 and seg.vertices == ((0, 0), (4, 0))
    assert interior_lattice_count(seg) == 3


def test_zero_polynomial_has_no_polygon():
    with pytest.raises(PolynomialError):
        newton_polygon(SparsePolynomial())


def test_edges_are_ccw_with_outward_normals():
    poly = newton_polygon(P("z^3+w^3-1"))
    hyp = [e for e in poly.edges if not e.on_axis]
    assert len(hyp) == 1
    e = hyp[0]
    assert (e.start, e.end, e.normal, e.lattice_count) == ((3, 0), (0, 3), (1, 1), 4)
    assert e.direction == (-1, 1)
    assert e.lattice_points() == [(3, 0), (2, 1), (1, 2), (0, 3)]


def test_faces_for_covectors():
    poly = newton_polygon(P("z^3+w^3-1"))
    assert face_for_covector(poly, (1, 1)).vertices == ((3, 0), (0, 3))
    assert face_for_covector(poly, (0, 0)).kind == "polygon"
    assert face_for_covector(poly, (-1, -1)).vertices == ((0, 0),)
    assert face_for_covector(poly, (1, 0)).vertices == ((3, 0),)


def test_face_of_a_segment_is_oriented_by_the_covector():
    seg = newton_polygon(P("z*w+1"))
    face = face_for_covector(seg, (1, -1))
    assert face.kind == "edge"
    assert face.edge.normal == (1, -1)


@pytest.mark.parametrize("p, q", [(3, 4), (2, 2), (5, 3), (8, 6)])
def test_interior_count_of_family_triangle(p, q):
    poly = newton_polygon(P(f"z^{q}+w^{p}-1"))
    assert interior_lattice_count(poly) == ((p - 1) * (q - 1) - (gcd(p, q) - 1)) // 2


def test_area_examples():
    assert polygon_area_twice([(1, 1), (3, 0), (0, 3)]) == 3
    assert polygon_area_twice([(0, 0), (1, 0), (1, 1), (0, 1)]) == 2
    assert polygon_area_twice([(0, 0), (2, 2)]) == 0
    with pytest.raises(GeometryError):
        polygon_area_twice([(0, 0), (0, 1), (1, 0)])


def test_condition_i_examples():
    assert check_condition_i(newton_polygon(P("z^3+w^3-1"))).holds
    res = check_condition_i(newton_polygon(P("z*w")))
    assert not res.holds and res.witness == (1, 1)
    # constant term removed: the origin is missing
    res = check_condition_i(newton_polygon(P("z^2+w^5+w")))
    assert not res.holds and res.missing == (0, 0)


def test_relaxed_polygon_keeps_off_axis_sides():
    poly = newton_polygon(P("z^2+w^5+w"))
    rel = relaxed_polygon(poly)
    assert (0, 0) in rel.vertices
    assert check_condition_i(rel).holds
    assert newton_polygon(P("z^2+w^5+w"), relaxed=True) == rel


@settings(max_examples=100, deadline=None)
@given(point_sets)
def test_interior_count_matches_bounding_box(points):
    poly = NewtonPolygon.from_points(points)
    assert interior_lattice_count(poly) == brute_interior(poly)


@settings(max_examples=100, deadline=None)
@given(point_sets)
def test_pick_cross_check(points):
    poly = NewtonPolygon.from_points(points)
    if poly.dimension == 2:
        assert poly.area_twice() == 2 * interior_lattice_count(poly) + poly.boundary_lattice_count() - 2


@settings(max_examples=100, deadline=None)
@given(point_sets)
def test_edge_normals_support_every_point(points):
    poly = NewtonPolygon.from_points(points)
    for e in poly.edges:
        h = e.support_value
        on_edge = set(e.lattice_points())
        for p in points:
            s = e.normal[0] * p[0] + e.normal[1] * p[1]
            assert s <= h
            assert (s == h) == (p in on_edge)


@settings(max_examples=60, deadline=None)
@given(point_sets)
def test_hull_idempotence(points):
    poly = NewtonPolygon.from_points(points)
    full = [p for p in _box(poly) if poly.contains(p)]
    assert NewtonPolygon.from_points(full).vertices == poly.vertices
    assert NewtonPolygon.from_points(poly.vertices) == poly


def _box(poly):
    xs = [v[0] for v in poly.vertices]
    ys = [v[1] for v in poly.vertices]
    return [(a, b) for a in range(min(xs), max(xs) + 1) for b in range(min(ys), max(ys) + 1)]


def test_vertices_start_lexicographically_smallest():
    rng = random.Random(3)
    for _ in range(50):
        pts = [(rng.randint(0, 6), rng.randint(0, 6)) for _ in range(6)]
        poly = NewtonPolygon.from_points(pts)
        assert poly.vertices[0] == min(pts)
