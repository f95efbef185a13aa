import pytest
from hypothesis import given, strategies as st

from stacked_bases.errors import ParseError
from stacked_bases.literals import (format_element, format_matrix, format_ring, parse_element,
                                    parse_ideal, parse_matrix, parse_ring)
from stacked_bases.rings import Element, Integers, Product, Quadratic, Residue

RINGS = ["Z", "Z/12", "Q[-5]", "Q[-3]", "prod(Z, Z/6)", "prod(Z/12, Z/5)", "prod(Z,Z)"]


@pytest.mark.parametrize("text", RINGS)
def test_ring_round_trip(text):
    R = parse_ring(text)
    assert parse_ring(format_ring(R)) == R


@pytest.mark.parametrize("text", ["", "Z/0", "Z/1", "Q[1]", "prod(Z", "R", "Z/x"])
def test_bad_rings(text):
    with pytest.raises(ParseError):
        parse_ring(text)


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6))
def test_quadratic_round_trip(a, b):
    R = Quadratic(-5)
    x = Element(R, (a, b))
    assert parse_element(format_element(x), R) == x


@given(st.integers(-1000, 1000), st.integers(0, 5))
def test_product_round_trip(a, b):
    R = Product(Integers(), Residue(6))
    x = R((a, b))
    assert parse_element(format_element(x), R) == x


def test_quadratic_literal_forms():
    R = Quadratic(-5)
    assert parse_element("1+1*w", R) == Element(R, (1, 1))
    assert parse_element("w", R) == Element(R, (0, 1))
    assert parse_element("-3*w", R) == Element(R, (0, -3))
    assert parse_element("2 - w", R) == Element(R, (2, -1))
    for bad in ("1+", "w*w", "x", "1++w"):
        with pytest.raises(ParseError):
            parse_element(bad, R)


def test_matrix_and_ideal_literals():
    R = parse_ring("prod(Z, Z/6)")
    A = parse_matrix("(1, 2), (0, 3); (4, 5), (1, 1)", R)
    assert A.shape == (2, 2)
    assert parse_matrix(format_matrix(A), R) == A
    I = parse_ideal("ideal(2, 1+1*w)", Quadratic(-5))
    assert I.norm() == 2
    with pytest.raises(ParseError):
        parse_matrix("1,2;3", Integers())
    with pytest.raises(ParseError):
        parse_ideal("ideal()", Integers())
