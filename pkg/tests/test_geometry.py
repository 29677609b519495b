from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from bikepath.errors import InvalidInputError, ModeError
from bikepath.geometry import (
    FLOAT,
    Point,
    format_scalar,
    is_parallel,
    parallel_check,
    shoelace_area,
    to_scalar,
    triangle_area,
)

from conftest import fractions, nonzero_fractions

points = st.builds(Point, fractions(), fractions())


def square():
    return [Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)]


def test_unit_square_area():
    assert shoelace_area(square()) == 1


def test_clockwise_square_is_negative():
    assert shoelace_area(list(reversed(square()))) == -1


def test_triangle_matches_half_base_height():
    base, height = F(2), F(2)
    assert shoelace_area([Point(0, 0), Point(2, 0), Point(0, 2)]) == base * height / 2


def test_shoelace_needs_three_points():
    with pytest.raises(InvalidInputError):
        shoelace_area([Point(0, 0), Point(1, 0)])


@pytest.mark.parametrize(
    "u, v, expected",
    [
        (Point(1, 2), Point(2, 4), True),
        (Point(1, 0), Point(0, 1), False),
        (Point(2, -1), Point(F(6, 5), F(-3, 5)), True),
    ],
)
def test_is_parallel_examples(u, v, expected):
    assert is_parallel(u, v) is expected


def test_zero_vector_is_parallel_and_flagged():
    check = parallel_check(Point(0, 0), Point(3, 1))
    assert check.parallel and check.degenerate


def test_float_parallel_uses_relative_tolerance():
    u = Point(1e6, 2e6)
    v = Point(1.0, 2.0 + 1e-12)
    assert is_parallel(u, v)
    assert not is_parallel(Point(1.0, 0.0), Point(1.0, 1e-6))


def test_mode_mixing_raises():
    with pytest.raises(ModeError):
        Point(F(1), 1.0)
    with pytest.raises(ModeError):
        Point(1, 2) + Point(1.0, 2.0)


def test_scalar_text_forms():
    assert to_scalar("3/6") == F(1, 2)
    assert to_scalar("0.1") == F(1, 10)
    assert to_scalar("1/4", FLOAT) == 0.25
    assert format_scalar(F(4, 2)) == "2"
    assert format_scalar(F(-3, 9)) == "-1/3"
    assert format_scalar(0.1) == "0.1"
    with pytest.raises(ModeError):
        to_scalar(0.5)


@given(fractions(), fractions(), fractions())
def test_rational_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if a != 0:
        assert a * (1 / a) == 1
    assert a + (-a) == 0


@given(fractions(), fractions(), nonzero_fractions(), nonzero_fractions())
def test_rational_canonical_sum(a, b, c, d):
    lhs = a / c + b / d
    rhs = F(a * d + b * c, 1) / (c * d)
    assert lhs == rhs and lhs.denominator > 0


@given(st.lists(points, min_size=3, max_size=8), points)
def test_shoelace_translation_and_orientation(poly, shift):
    area = shoelace_area(poly)
    assert shoelace_area([p + shift for p in poly]) == area
    assert shoelace_area(list(reversed(poly))) == -area


@given(points, points, points)
def test_triangle_area_is_cyclic(a, b, c):
    assert triangle_area(a, b, c) == triangle_area(b, c, a) == -triangle_area(b, a, c)
