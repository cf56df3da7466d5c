from fractions import Fraction

import pytest

from macinv.grammar import ParseError, parse_dual, parse_jet, parse_poly
from macinv.poly import DualPoly, Jet


@pytest.mark.parametrize(
    "text, expected",
    [
        ("y1^2*y2", {(2, 1): 1}),
        ("2y1 y2", {(1, 1): 2}),
        ("-y1 + 1/3*y2^2", {(1, 0): -1, (0, 2): Fraction(1, 3)}),
        ("(y1 + y2)^2", {(2, 0): 1, (1, 1): 2, (0, 2): 1}),
        ("y1*(y1 - y2)/2", {(2, 0): Fraction(1, 2), (1, 1): Fraction(-1, 2)}),
        ("y2 - y2", {}),
    ],
)
def test_parses(text, expected):
    g = parse_poly(text, nvars=2)
    assert isinstance(g, DualPoly)
    assert dict(g.terms) == {k: Fraction(v) for k, v in expected.items()}


def test_side_and_arity_inference():
    assert isinstance(parse_poly("x1*x3"), Jet)
    assert parse_poly("x1*x3").nvars == 3
    assert parse_poly("5").nvars == 1
    assert parse_jet("x1", bound=2).bound == 2


@pytest.mark.parametrize(
    "text, position",
    [
        ("y1 +", 4),
        ("y1 x2", 3),
        ("y1^y2", 3),
        ("y0", 0),
        ("y1 $ 2", 3),
        ("", 0),
        ("(y1", 3),
        ("y1/y2", 3),
        ("y1/0", 3),
    ],
)
def test_errors_carry_positions(text, position):
    with pytest.raises(ParseError) as exc:
        parse_poly(text)
    assert exc.value.position == position


def test_declared_count_too_small():
    with pytest.raises(ParseError):
        parse_dual("y3", nvars=2)


def test_wrong_side():
    with pytest.raises(ParseError):
        parse_jet("y1")
