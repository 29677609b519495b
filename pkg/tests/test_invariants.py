import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from bikepath.darboux import (
    DarbouxParams,
    closure_analysis,
    darboux_step,
    darboux_transform,
    decompose_linkages,
)
from bikepath.errors import BaselineError, InvalidInputError
from bikepath.geometry import Point
from bikepath.invariants import (
    AreaBaseline,
    area_under_path,
    check_area_preservation,
    check_quad_triangle_equality,
    default_baseline,
    sweep_invariant,
)
from bikepath.mobius import ProjectiveParam
from bikepath.paths import PeriodicPath, SignSequence, make_regular, make_sign_sequence_path

from builders import engineered_rational_closure, rand_point
from conftest import fractions


def zigzag(chi="+-+-", r=1):
    return make_sign_sequence_path(len(chi), SignSequence.parse(chi, r))


def trapezoid_sum(path, c):
    pts = [path.vertex(i) for i in range(path.p + 1)]
    return c * path.m + sum((b.x - a.x) * (a.y + b.y) / 2 for a, b in zip(pts, pts[1:]))


def test_area_examples():
    assert area_under_path(make_regular(3), AreaBaseline(1)) == 1
    assert area_under_path(zigzag(), AreaBaseline(2)) == 2 + F(1, 2)


def test_baseline_must_clear_path():
    with pytest.raises(BaselineError):
        area_under_path(zigzag(), AreaBaseline(1))
    with pytest.raises(BaselineError):
        AreaBaseline(0)
    assert default_baseline(zigzag()).c == 2


@given(st.lists(st.builds(Point, fractions(), fractions()), min_size=0, max_size=6), st.integers(1, 3))
def test_area_matches_trapezoid_sum_and_shifts_by_m(tail, m):
    path = PeriodicPath((Point(0, 0),) + tuple(tail), m)
    base = default_baseline(path)
    area = area_under_path(path, base)
    assert area == trapezoid_sum(path, base.c)
    assert area_under_path(path, AreaBaseline(base.c + 1)) - area == m


def test_quad_triangle_examples():
    q_next = darboux_step(Point(0, 0), Point(2, 0), Point(0, 1), DarbouxParams.from_ell(1))
    report = check_quad_triangle_equality(Point(0, 0), Point(0, 1), Point(2, 0), q_next)
    assert report.passed and report.details["left"] == report.details["right"]
    flat = check_quad_triangle_equality(Point(0, 0), Point(1, 0), Point(2, 0), Point(3, 0))
    assert flat.passed and flat.details["left"] == 0
    bent = check_quad_triangle_equality(Point(0, 0), Point(0, 1), Point(2, 0), q_next + Point(F(1, 10), 0))
    assert not bent.passed


def test_regular_translate_preserves_area_exactly():
    path = make_regular(4)
    params = DarbouxParams.from_ell(F(1, 3))
    corr = darboux_transform(path, Point(F(1, 3), 0), params).correspondence
    report = check_area_preservation(corr)
    assert report.passed and report.max_violation == 0


def test_zigzag_float_closure_preserves_area():
    z = zigzag()
    params = DarbouxParams.from_ell(2)
    for dv in closure_analysis(z, params).vectors:
        corr = darboux_transform(z.to_float(), dv, params.to_float()).correspondence
        report = check_area_preservation(corr)
        assert report.passed
        assert report.max_violation <= 1e-9 * (1 + abs(report.details["area_source"]))


def test_zigzag_parabolic_closure_is_exact():
    z = zigzag()
    params = DarbouxParams.from_ell(1)
    (dv,) = closure_analysis(z, params).vectors
    report = check_area_preservation(darboux_transform(z, dv, params).correspondence)
    assert report.passed and report.details["difference"] == 0


def test_non_closed_transform_reports_expected_failure():
    z = zigzag()
    corr = darboux_transform(z, ProjectiveParam(1, 2), DarbouxParams.from_ell(F(1, 3))).correspondence
    report = check_area_preservation(corr)
    assert not report.passed
    assert not report.details["boundary_equal"]
    assert report.details["telescoping_identity"]
    assert "does not close" in report.details["note"]


@pytest.mark.parametrize("seed", range(8))
def test_engineered_closures_preserve_area(seed):
    rng = random.Random(seed)
    path, params, v0 = engineered_rational_closure(rng, 3 + seed % 5, 1 + seed % 2)
    corr = darboux_transform(path, v0, params).correspondence
    report = check_area_preservation(corr)
    assert report.passed and report.details["difference"] == 0
    assert report.details["boundary_start"] == report.details["boundary_end"]
    raised = check_area_preservation(corr, AreaBaseline(report.details["c"] + 1))
    assert raised.details["difference"] == 0


def test_telescoping_holds_for_arbitrary_start():
    rng = random.Random(11)
    path = PeriodicPath((Point(0, 0), rand_point(rng), rand_point(rng), rand_point(rng)))
    corr = darboux_transform(path, ProjectiveParam(F(2, 3), 1), DarbouxParams.from_ell(F(3, 2))).correspondence
    report = check_area_preservation(corr)
    assert report.details["telescoping_identity"] and not report.details["quad_equality_failures"]
    # without closure the x-extents differ, so raising c moves the difference
    other = check_area_preservation(corr, AreaBaseline(report.details["c"] + 5))
    q0, qp = corr.target_vertex(0), corr.target_vertex(path.p)
    extent_gap = path.m - (qp.x - q0.x)
    assert other.details["difference"] - report.details["difference"] == 5 * extent_gap


@pytest.mark.parametrize("n", [4, 6, 8])
def test_linkages_have_equal_area(n):
    path = zigzag("+-" * (n // 2), F(1, 2))
    dec = decompose_linkages(path, n - 1)
    base = AreaBaseline(F(3))
    areas = {area_under_path(L, base) for L in dec.linkages}
    assert len(areas) == 1


def test_sweep_regular_has_two_fixed_points():
    grid = [F(1, 50) * i for i in range(1, 40)]
    sweep = sweep_invariant(make_regular(4), grid)
    for rec in sweep.records:
        if rec.ell == F(1, 4):
            assert rec.status.startswith("degenerate-edge")
        else:
            assert rec.status == "ok" and rec.fixed_point_count == 2


def test_sweep_csv_and_rotation_invariance():
    z = zigzag()
    grid = [F(i, 10) for i in range(1, 51)]
    sweep = sweep_invariant(z, grid)
    assert len(sweep.records) == 50
    lines = sweep.to_csv().splitlines()
    assert lines[0] == "ell,invariant,det,trace,fixed_point_count,status"
    assert len(lines) == 51
    rotated = sweep_invariant(z.rotated(1), grid)
    assert [r.invariant for r in rotated.records] == [r.invariant for r in sweep.records]


def test_sweep_grid_validation():
    with pytest.raises(InvalidInputError):
        sweep_invariant(zigzag(), [F(1), F(1)])
    with pytest.raises(InvalidInputError):
        sweep_invariant(zigzag(), [F(-1), F(1)])
    with pytest.raises(InvalidInputError):
        sweep_invariant(zigzag(), [])
