from fractions import Fraction as F
from itertools import product
from math import comb

import pytest
from hypothesis import given, strategies as st

from bikepath.errors import InconsistentSequenceError, InvalidInputError, TooLargeError
from bikepath.geometry import FLOAT, Point
from bikepath.paths import (
    OUTSIDE_FAMILY,
    REGULAR,
    SIGN_SEQUENCE,
    PathParams,
    PeriodicPath,
    SignSequence,
    check_trapezoidal,
    classify_as_family,
    enumerate_sign_sequences,
    make_regular,
    make_sign_sequence_path,
    validate_equilateral,
    validate_k_diagonals,
    validate_path,
)

from conftest import fractions


def zigzag(chi="+-+-", r=1):
    return make_sign_sequence_path(len(chi), SignSequence.parse(chi, r))


def test_vertex_examples():
    reg = make_regular(3)
    assert reg.vertex(4) == Point(F(4, 3), 0)
    assert reg.vertex(-1) == Point(F(-1, 3), 0)
    assert zigzag().vertex(0) == Point(0, 0)


@given(st.integers(-100, 100), st.integers(1, 4))
def test_vertex_periodicity(i, m):
    path = PeriodicPath((Point(0, 0), Point(F(1, 3), F(2, 7)), Point(F(5, 4), F(-1, 2))), m)
    assert path.vertex(i + path.p) == path.vertex(i) + Point(m, 0)


def test_make_regular():
    one = make_regular(1)
    assert one.vertices == (Point(0, 0),) and one.shift() == Point(1, 0)
    assert make_regular(3).vertices == (Point(0, 0), Point(F(1, 3), 0), Point(F(2, 3), 0))
    assert validate_path(make_regular(5), 4).passed


def test_sign_sequence_constructor():
    path = zigzag()
    assert path.vertices == (Point(0, 0), Point(F(1, 4), 1), Point(F(1, 2), 0), Point(F(3, 4), 1))
    assert validate_equilateral(path).value == F(1, 16) + 1
    assert validate_k_diagonals(path, 3).value == F(9, 16) + 1


def test_zero_amplitude_is_regular():
    for chi in enumerate_sign_sequences(6):
        assert make_sign_sequence_path(6, SignSequence(chi, 0)) == make_regular(6)


def test_unbalanced_sequence_rejected():
    with pytest.raises(InconsistentSequenceError):
        make_sign_sequence_path(5, SignSequence.parse("++-+-", 1))
    with pytest.raises(InvalidInputError):
        SignSequence((1, -1), F(-1))


def test_staircase_validates():
    stair = zigzag("+++---", F(1, 2))
    assert validate_path(stair, 5).passed


def test_validate_equilateral_examples():
    assert validate_equilateral(make_regular(4)).value == F(1, 16)
    bumped = PeriodicPath((Point(0, 0), Point(F(1, 4), F(1, 100)), Point(F(1, 2), 0), Point(F(3, 4), 0)))
    report = validate_equilateral(bumped)
    assert not report.passed and report.max_violation > 0


def test_validate_k_diagonals_examples():
    assert validate_k_diagonals(make_regular(5), 7).value == F(49, 25)
    assert validate_k_diagonals(zigzag("++--", 1), 2).passed is False


def test_k_multiple_of_period_is_degenerate():
    report = validate_k_diagonals(make_regular(4), 8)
    assert report.degenerate and report.status == "degenerate"
    assert PathParams(4, 8).degenerate


def test_validate_path_examples():
    assert validate_path(zigzag("+-+-+-", 2), 5).passed
    assert validate_path(make_regular(7), 6).passed
    report = validate_path(zigzag("++--", 1), 2)
    assert not report.passed
    assert report.part("equilateral").passed and not report.part("k-diagonals").passed


def test_normalization_required():
    shifted = zigzag().translated(Point(F(1, 8), 0))
    assert not validate_path(shifted, 3).part("normalization").passed


def test_trapezoidal_examples():
    alt = check_trapezoidal(zigzag("+-+-+-", 1), 5)
    assert alt.passed and set(alt.details["quads"]) == {"trapezoid"}
    stair = check_trapezoidal(zigzag("+++---", 1), 5)
    assert not stair.passed
    assert "parallelogram" in stair.details["quads"]
    assert stair.details["quads"][1] == "parallelogram"
    reg = check_trapezoidal(make_regular(5), 4)
    assert reg.degenerate and set(reg.details["quads"]) == {"degenerate"}


def test_trapezoidal_float_mode():
    alt = zigzag("+-+-+-", F(1, 3)).to_float()
    assert check_trapezoidal(alt, 5).passed


def test_enumeration_counts():
    assert enumerate_sign_sequences(2) == [(1, -1), (-1, 1)]
    assert len(enumerate_sign_sequences(4)) == 6
    assert enumerate_sign_sequences(5) == []
    for n in range(1, 24, 2):
        assert enumerate_sign_sequences(n) == []
    with pytest.raises(TooLargeError):
        enumerate_sign_sequences(26)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_enumeration_matches_brute_force(n):
    brute = sorted((c for c in product((1, -1), repeat=n) if sum(c) == 0), reverse=True)
    got = enumerate_sign_sequences(n)
    assert got == brute and len(got) == comb(n, n // 2)


def test_classify_examples():
    assert classify_as_family(make_regular(5)).kind == REGULAR
    cls = classify_as_family(zigzag())
    assert cls.kind == SIGN_SEQUENCE and cls.chi == (1, -1, 1, -1) and cls.r == 1
    bent = PeriodicPath((Point(0, 0), Point(F(3, 10), 1), Point(F(1, 2), 0), Point(F(3, 4), 1)))
    assert classify_as_family(bent).kind == OUTSIDE_FAMILY
    near = PeriodicPath((Point(0.0, 0.0), Point(0.3, 1.0), Point(0.5, 0.0), Point(0.75, 1.0)))
    assert classify_as_family(near).kind == OUTSIDE_FAMILY


def test_classify_float_tolerance():
    path = zigzag("+--+", F(1, 3)).to_float()
    wobble = PeriodicPath(tuple(Point(v.x + 1e-10, v.y) if i else v for i, v in enumerate(path.vertices)))
    cls = classify_as_family(wobble)
    assert cls.kind == SIGN_SEQUENCE and cls.chi == (1, -1, -1, 1)
    assert cls.r == pytest.approx(1 / 3)


@given(st.sampled_from([4, 6, 8, 10]).flatmap(
    lambda n: st.tuples(st.just(n), st.sampled_from(enumerate_sign_sequences(n)), fractions(20, 9).map(abs))
))
def test_classify_round_trip(args):
    n, chi, r = args
    cls = classify_as_family(make_sign_sequence_path(n, SignSequence(chi, r)))
    if r == 0:
        assert cls.kind == REGULAR
    else:
        assert cls.kind == SIGN_SEQUENCE and cls.chi == chi and cls.r == r


@given(st.sampled_from([2, 4, 6, 8]).flatmap(
    lambda n: st.tuples(st.just(n), st.sampled_from(enumerate_sign_sequences(n)), fractions(20, 9).map(abs),
                        st.sampled_from([-2, -1, 1, 2]))
))
def test_family_validates_for_both_diagonals(args):
    n, chi, r, d = args
    path = make_sign_sequence_path(n, SignSequence(chi, r))
    for k in (d * n - 1, d * n + 1):
        report = validate_path(path, k)
        assert report.passed and report.max_violation == 0


@given(st.lists(st.tuples(fractions(), fractions()), min_size=4, max_size=4), st.sampled_from([-1, 1, 2]))
def test_plus_minus_diagonal_verdicts_agree(coords, d):
    path = PeriodicPath((Point(0, 0),) + tuple(Point(x, y) for x, y in coords[1:]))
    n = path.p
    assert validate_path(path, d * n + 1).passed == validate_path(path, d * n - 1).passed


def test_float_mode_family():
    path = make_sign_sequence_path(6, SignSequence.parse("+-++--", "0.25", FLOAT))
    assert path.mode == FLOAT
    assert validate_path(path, 7).passed
