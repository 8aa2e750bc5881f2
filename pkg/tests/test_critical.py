import pytest

from newton_atlas.critical import critical_values, split_critical_locus
from newton_atlas.parser import parse_polynomial as P

# (polynomial, critical values) for the table rows; frozen from an independent hand derivation
FROZEN = [
    ("z", []),
    ("z^2+w^3", [0]),
    ("z^2+w^2+2*z*w+w", []),
    ("z^3+(w+1)^2", [0]),
    ("(z+1)*(z+2)", [-0.25]),
    ("z*w", [0]),
    ("(z^2+w^2+1)*(z^2+w^2+2)", [-0.25, 2]),
    ("(z+1)^3", [0]),
]


def _same(values, expected):
    assert len(values) == len(expected)
    for v, e in zip(sorted(values, key=lambda c: c.real), sorted(expected)):
        assert abs(v - e) <= 1e-8


@pytest.mark.parametrize("text, expected", FROZEN)
def test_table_critical_values(text, expected):
    cv = critical_values(P(text), precision=1e-8)
    _same(cv.values, expected)


def test_singular_fibre_column():
    singular = {t: critical_values(P(t)).contains(0) for t, _ in FROZEN}
    assert singular == {
        "z": False, "z^2+w^3": True, "z^2+w^2+2*z*w+w": False, "z^3+(w+1)^2": True,
        "(z+1)*(z+2)": False, "z*w": True, "(z^2+w^2+1)*(z^2+w^2+2)": False, "(z+1)^3": True,
    }


def test_cubic_family():
    _same(critical_values(P("z^3+w^3")).values, [0])
    _same(critical_values(P("z^2+w^3-3*w")).values, [-2, 2])


def test_positive_dimensional_locus_is_flagged():
    cv = critical_values(P("(z+1)*(z+2)"))
    assert cv.positive_dimensional
    assert cv.curve_factor is not None
    g, p, q = split_critical_locus(P("(z+1)*(z+2)"))
    assert not g.is_constant()


def test_isolated_points_lie_on_the_critical_locus():
    cv = critical_values(P("z^2+w^3-3*w"))
    for pt in cv.points:
        assert abs(2 * pt.z) < 1e-12
        assert abs(3 * pt.w ** 2 - 3) < 1e-12
