"""Area under a periodic path, area preservation, and monodromy invariant sweeps."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .darboux import Correspondence, DarbouxParams, monodromy
from .errors import AllFixedError, BaselineError, DegenerateError, InvalidInputError
from .geometry import FLOAT, RATIONAL, Point, Scalar, format_scalar, shoelace_area, shoelace_error_bound, triangle_area
from .mobius import mobius_conjugacy_invariant, mobius_fixed_points
from .paths import PeriodicPath
from .report import Report

#: Relative tolerance for float-mode area comparisons.
AREA_TOL = 1e-9


@dataclass(frozen=True)
class AreaBaseline:
    """The horizontal line ``y = -c`` below the paths being measured."""

    c: Scalar

    def __post_init__(self):
        if type(self.c) is int:
            object.__setattr__(self, "c", Fraction(self.c))
        if self.c <= 0:
            raise BaselineError("baseline constant c must be positive")

    def check(self, points: Iterable[Point]) -> None:
        top = max(abs(p.y) for p in points)
        if not self.c > top:
            raise BaselineError(f"baseline c = {self.c} must exceed max |y| = {top}")

    def foot(self, p: Point) -> Point:
        return Point(p.x, -self.c if p.mode == RATIONAL else -float(self.c))


def _period_points(path: PeriodicPath, end: Point | None = None) -> list[Point]:
    pts = [path.vertex(i) for i in range(path.p)]
    pts.append(path.vertex(path.p) if end is None else end)
    return pts


def default_baseline(*paths: PeriodicPath) -> AreaBaseline:
    """``c = ceil(max |y|) + 1`` over one period (plus endpoint) of every path."""
    top = max(abs(p.vertex(i).y) for p in paths for i in range(p.p + 1))
    c = math.floor(top) + 1
    if paths[0].mode == FLOAT:
        return AreaBaseline(float(c))
    return AreaBaseline(Fraction(c))


def _area_polygon(points: Sequence[Point], baseline: AreaBaseline) -> list[Point]:
    # walked right-to-left so the region above a rightward path has positive area
    pts = [baseline.foot(points[-1])] + list(reversed(points)) + [baseline.foot(points[0])]
    return pts


def area_under_path(path: PeriodicPath, baseline: AreaBaseline | None = None, end: Point | None = None) -> Scalar:
    """Signed area between one period ``V_0 .. V_p`` and the baseline ``y = -c``.

    Equals ``c * m + sum (x_{i+1} - x_i)(y_i + y_{i+1}) / 2``. ``end`` replaces
    ``V_p`` for traces that are not periodic.
    """
    if baseline is None:
        baseline = default_baseline(path)
    pts = _period_points(path, end)
    baseline.check(pts)
    return shoelace_area(_area_polygon(pts, baseline))


def area_error_bound(path: PeriodicPath, baseline: AreaBaseline, end: Point | None = None) -> float:
    """Float rounding bound of :func:`area_under_path`; zero in rational mode."""
    if path.mode == RATIONAL:
        return 0.0
    return shoelace_error_bound(_area_polygon(_period_points(path, end), baseline))


def _segment_area(a: Point, b: Point, baseline: AreaBaseline) -> Scalar:
    """Signed area under the segment ``a -> b`` down to the baseline."""
    return shoelace_area([baseline.foot(b), b, a, baseline.foot(a)])


def check_quad_triangle_equality(p_i: Point, q_i: Point, p_next: Point, q_next: Point, tol: float = AREA_TOL) -> Report:
    """Signed ``|P_i P_{i+1} Q_{i+1}| == |Q_i Q_{i+1} P_i|`` for a Darboux quad."""
    left = triangle_area(p_i, p_next, q_next)
    right = triangle_area(q_i, q_next, p_i)
    diff = abs(left - right)
    if isinstance(diff, float):
        ok = diff <= tol * (1.0 + abs(left) + abs(right))
    else:
        ok = diff == 0
    return Report("quad-triangle-equality", ok, diff, details={"left": left, "right": right})


def _close(diff: Scalar, scale: Scalar, tol: float) -> bool:
    if isinstance(diff, float):
        return abs(diff) <= tol * (1.0 + abs(scale))
    return diff == 0


def check_area_preservation(
    c: Correspondence, baseline: AreaBaseline | None = None, tol: float = AREA_TOL
) -> Report:
    """Compare the areas under the two paths of a Darboux correspondence.

    Also reports the telescoped boundary terms (area under ``Q_0 -> P_0`` and
    ``Q_p -> P_p``) and the per-quad triangle equality. The areas agree only
    when the correspondence closes (``v_p = v_0``); otherwise the report fails
    and says so.
    """
    src, dst = c.source, c.target
    p_pts = _period_points(src)
    q_pts = [c.target_vertex(i) for i in range(src.p + 1)]
    if baseline is None:
        top = max(abs(v.y) for v in p_pts + q_pts)
        cval = math.floor(top) + 1
        baseline = AreaBaseline(float(cval) if src.mode == FLOAT else Fraction(cval))
    baseline.check(p_pts + q_pts)

    area_p = shoelace_area(_area_polygon(p_pts, baseline))
    area_q = shoelace_area(_area_polygon(q_pts, baseline))
    diff = area_p - area_q
    start = _segment_area(q_pts[0], p_pts[0], baseline)
    end = _segment_area(q_pts[-1], p_pts[-1], baseline)
    telescoped = end - start

    quads = [
        check_quad_triangle_equality(p_pts[i], q_pts[i], p_pts[i + 1], q_pts[i + 1], tol)
        for i in range(src.p)
    ]
    bad_quads = [i for i, r in enumerate(quads) if not r.passed]
    scale = abs(area_p) + abs(area_q)
    equal = _close(diff, abs(area_p), tol)
    boundary_equal = _close(end - start, abs(start) + abs(end), tol)
    telescopes = _close(diff - telescoped, scale, tol)

    details = {
        "area_source": area_p,
        "area_target": area_q,
        "difference": diff,
        "boundary_start": start,
        "boundary_end": end,
        "boundary_equal": boundary_equal,
        "telescoping_identity": telescopes,
        "quad_equality_failures": bad_quads,
        "closed": c.closed,
        "c": baseline.c,
    }
    if src.mode == FLOAT:
        details["error_bound"] = area_error_bound(src, baseline) + area_error_bound(dst, baseline, q_pts[-1])
    if not c.closed:
        details["note"] = "transform does not close (v_p != v_0); unequal areas are expected"
    passed = c.closed and equal and boundary_equal and telescopes and not bad_quads
    return Report("area-preservation", passed, abs(diff), details=details, parts=tuple(quads))


@dataclass(frozen=True)
class SweepRecord:
    ell: Scalar
    invariant: Scalar | None
    det: Scalar | None
    trace: Scalar | None
    fixed_point_count: int | None
    status: str


@dataclass(frozen=True)
class InvariantSweep:
    grid: tuple[Scalar, ...]
    records: tuple[SweepRecord, ...]

    COLUMNS = ("ell", "invariant", "det", "trace", "fixed_point_count", "status")

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.COLUMNS)
        for r in self.records:
            writer.writerow([
                format_scalar(r.ell),
                "" if r.invariant is None else format_scalar(r.invariant),
                "" if r.det is None else format_scalar(r.det),
                "" if r.trace is None else format_scalar(r.trace),
                "" if r.fixed_point_count is None else r.fixed_point_count,
                r.status,
            ])
        return buf.getvalue()


def sweep_invariant(path: PeriodicPath, grid: Sequence[Scalar]) -> InvariantSweep:
    """Monodromy trace^2/det and real fixed-point count at each ``ell`` of ``grid``."""
    grid = tuple(grid)
    if not grid:
        raise InvalidInputError("empty ell grid")
    if any(g <= 0 for g in grid):
        raise InvalidInputError("ell grid values must be positive")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidInputError("ell grid must be strictly increasing")
    records = []
    for ell in grid:
        params = DarbouxParams.from_ell(ell, path.mode)
        try:
            mono = monodromy(path, params)
        except DegenerateError as exc:
            index = getattr(exc, "index", None)
            status = "degenerate-edge" if index is None else f"degenerate-edge:{index}"
            records.append(SweepRecord(ell, None, None, None, None, status))
            continue
        inv = mobius_conjugacy_invariant(mono)
        try:
            count = len(mobius_fixed_points(mono).points)
            status = "ok"
        except AllFixedError:
            count, status = None, "identity"
        records.append(SweepRecord(ell, inv, mono.det, mono.trace, count, status))
    return InvariantSweep(grid, tuple(records))
