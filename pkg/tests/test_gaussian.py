from fractions import Fraction

import pytest
from hypothesis import given

from newton_atlas.gaussian import I, ONE, ZERO, GaussianRational, format_scalar

from strategies import gaussian_rationals


def test_arithmetic_matches_complex():
    a = GaussianRational(Fraction(1, 2), 3)
    b = GaussianRational(-2, Fraction(1, 3))
    for exact, approx in [(a + b, complex(a) + complex(b)), (a * b, complex(a) * complex(b)),
                          (a / b, complex(a) / complex(b)), (a - b, complex(a) - complex(b))]:
        assert complex(exact) == pytest.approx(approx, rel=1e-15)


def test_i_squared_is_minus_one():
    assert I * I == -ONE
    assert I ** 4 == ONE
    assert I ** -1 == -I


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_format_scalar_examples():
    assert format_scalar(GaussianRational(1, 2)) == "(1+2i)"
    assert format_scalar(GaussianRational(0, -1)) == "-1i"
    assert format_scalar(GaussianRational(Fraction(3, 2))) == "3/2"


def test_coerce_and_equality_with_builtins():
    assert GaussianRational.coerce(2) == 2
    assert GaussianRational.coerce(Fraction(1, 3)) == Fraction(1, 3)
    assert GaussianRational(0, 1) == 1j


def test_immutable():
    c = GaussianRational(1, 1)
    with pytest.raises(AttributeError):
        c.re = Fraction(2)


@given(gaussian_rationals(), gaussian_rationals(nonzero=True))
def test_division_inverts_multiplication(a, b):
    assert (a * b) / b == a


@given(gaussian_rationals())
def test_norm_is_product_with_conjugate(a):
    assert a * a.conjugate() == a.norm()
    assert hash(a) == hash(GaussianRational(a.re, a.im))
