import pytest
from hypothesis import given, settings

from newton_atlas.gaussian import GaussianRational
from newton_atlas.parser import ParseError, parse_polynomial, render
from newton_atlas.poly import SparsePolynomial

from strategies import sparse_polynomials


def test_expansion_examples():
    assert parse_polynomial("z^2 + w^3 - 1").terms == {(2, 0): 1, (0, 3): 1, (0, 0): -1}
    assert parse_polynomial("(1+2i)*z*w").terms == {(1, 1): GaussianRational(1, 2)}
    assert parse_polynomial("z^3 + w^3").terms == {(3, 0): 1, (0, 3): 1}


def test_products_and_powers_expand():
    f = parse_polynomial("(z+1)*(z-1) - (w)^2")
    assert f == parse_polynomial("z^2 - w^2 - 1")
    assert parse_polynomial("(z+w)^2") == parse_polynomial("z^2 + 2*z*w + w^2")


def test_literals():
    assert parse_polynomial("1/2*z").coefficient(1, 0) == GaussianRational("1/2")
    assert parse_polynomial("0.25").coefficient(0, 0) == GaussianRational("1/4")
    assert parse_polynomial("-i*w").coefficient(0, 1) == GaussianRational(0, -1)
    assert parse_polynomial("3i").coefficient(0, 0) == GaussianRational(0, 3)


def test_adjacent_variables_multiply():
    assert parse_polynomial("zw") == SparsePolynomial.monomial(1, 1)
    assert parse_polynomial("zzw^2") == SparsePolynomial.monomial(2, 2)
    assert parse_polynomial("z^2w") == SparsePolynomial.monomial(2, 1)


@pytest.mark.parametrize("text, kind, offset", [
    ("z^-1", "negative-exponent", 2),
    ("z^2 +", "syntax", 5),
    ("2z", "syntax", 1),
    ("x+1", "literal", 0),
    ("zx", "literal", 0),
    ("z*)", "syntax", 2),
])
def test_errors_carry_kind_and_offset(text, kind, offset):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text)
    assert info.value.kind == kind
    assert info.value.offset == offset


def test_offset_is_in_bytes():
    with pytest.raises(ParseError) as info:
        parse_polynomial("z²")
    assert info.value.offset == 1


def test_render_order():
    assert render(parse_polynomial("1 + w + z + z*w + z^2")) == "z^2 + z*w + z + w + 1"
    assert render(parse_polynomial("-z")) == "-z"
    assert render(SparsePolynomial()) == "0"


@settings(max_examples=150, deadline=None)
@given(sparse_polynomials(max_terms=8))
def test_round_trip(f):
    assert parse_polynomial(render(f)) == f
