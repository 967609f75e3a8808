from fractions import Fraction

import pytest

from hopfmi.bseries import (
    Poly,
    bseries_truncated,
    check_morphism_law,
    check_tree_consistency,
    elementary_differential,
    parse_field,
    parse_poly,
)
from hopfmi.errors import BoundError, ParseError, WeightError
from hopfmi.textio import parse_key


def k(text):
    return parse_key(text, "multiindex", ("a",))


def test_poly_arithmetic():
    p = parse_poly("1 + 2*y")
    q = parse_poly("y^2")
    assert (p * q).coeffs == (0, 0, 1, 2)
    assert (p + q - p) == q
    assert (p ** 3)(Fraction(1)) == 27
    assert q.derivative() == parse_poly("2y")
    assert q.derivative(3) == Poly()
    assert parse_poly("-3/2*y^2 + 1").to_text() == "1 - 3/2*y^2"
    assert Poly().to_text() == "0"


def test_poly_parse_errors():
    for bad in ["", "y +", "2 3", "y^", "z"]:
        with pytest.raises(ParseError):
            parse_poly(bad)


def test_elementary_differentials():
    y2 = {"a": parse_poly("y^2")}
    y = {"a": parse_poly("y")}
    assert elementary_differential(k("x{-1}"), y2) == parse_poly("y^2")
    assert elementary_differential(k("x{-1} x{0}"), y) == parse_poly("y")
    assert elementary_differential(k("x{-1}^2 x{1}"), y2) == parse_poly("2*y^4")
    with pytest.raises(WeightError):
        elementary_differential(k("x{0}"), y)


def test_truncated_series():
    y = {"a": Poly.y()}
    assert bseries_truncated({}, y, 3, default=1) == Poly([0, Fraction(5, 2)])
    assert bseries_truncated({}, y, 5, default=0) == Poly()
    assert bseries_truncated({k("x{-1}"): 1}, {"a": parse_poly("y^2")}, 1) == parse_poly("y^2")
    with pytest.raises(BoundError):
        bseries_truncated({}, y, 20)


def test_field_spec():
    f = parse_field("a=y^2;b=1+y", ("a", "b"))
    assert f["b"] == parse_poly("y + 1")
    assert parse_field("y", ("a", "b"))["a"] == Poly.y()
    with pytest.raises(ValueError):
        parse_field("a=y", ("a", "b"))


def test_morphism_and_consistency():
    assert check_morphism_law(4, ("a",), seed=7)[1] == []
    assert check_morphism_law(2, ("a", "b"), seed=7)[1] == []
    assert check_tree_consistency(5, ("a",), seed=7)[1] == []
