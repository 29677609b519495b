"""Periodic polygonal paths, bicycle-path validators and the classified families.

A :class:`PeriodicPath` stores one period of vertices ``V_0 .. V_{p-1}`` and an
integer shift ``m``; every other vertex follows from ``V_{i+p} = V_i + m e1``.
Bicycle ``(n, k)``-paths are the ``m = 1`` paths with equal edges and equal
``k``-diagonals. Linkages extracted from an ``(n, k)``-path have ``m > 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InconsistentSequenceError, InvalidInputError, TooLargeError
from .geometry import (
    DEFAULT_TOL,
    FLOAT,
    RATIONAL,
    Point,
    Scalar,
    common_mode,
    parallel_check,
    to_scalar,
)
from .report import Report

#: Default cap on ``n`` for :func:`enumerate_sign_sequences`.
ENUMERATION_CAP = 24

#: Coordinate tolerance used by :func:`classify_as_family` in float mode.
CLASSIFY_TOL = 1e-8


@dataclass(frozen=True)
class PeriodicPath:
    vertices: tuple[Point, ...]
    m: int = 1

    def __post_init__(self):
        verts = tuple(self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise InvalidInputError("a periodic path needs at least one vertex")
        if isinstance(self.m, bool) or not isinstance(self.m, int) or self.m < 1:
            raise InvalidInputError(f"shift m must be a positive integer, got {self.m!r}")
        common_mode(v.x for v in verts)

    @property
    def p(self) -> int:
        return len(self.vertices)

    @property
    def mode(self) -> str:
        return self.vertices[0].mode

    def vertex(self, i: int) -> Point:
        q, r = divmod(i, len(self.vertices))
        v = self.vertices[r]
        if q == 0:
            return v
        return Point(v.x + q * self.m, v.y)

    def shift(self) -> Point:
        return Point(self.vertices[0].x * 0 + self.m, self.vertices[0].y * 0)

    def edges(self) -> list[Point]:
        return [self.vertex(i + 1) - self.vertex(i) for i in range(self.p)]

    def to_float(self) -> "PeriodicPath":
        return PeriodicPath(tuple(v.to_float() for v in self.vertices), self.m)

    def translated(self, offset: Point) -> "PeriodicPath":
        return PeriodicPath(tuple(v + offset for v in self.vertices), self.m)

    def normalized(self) -> "PeriodicPath":
        """Translate so that ``V_0`` is the origin."""
        return self.translated(-self.vertices[0])

    def rotated(self, s: int) -> "PeriodicPath":
        """Same vertex set, with ``V_s`` as the new base vertex (not re-anchored)."""
        return PeriodicPath(tuple(self.vertex(s + j) for j in range(self.p)), self.m)


def vertex(path: PeriodicPath, i: int) -> Point:
    """``V_i`` for any integer ``i``, via ``V_{i mod p} + floor(i / p) m e1``."""
    return path.vertex(i)


@dataclass(frozen=True)
class PathParams:
    n: int
    k: int
    d: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError("n must be positive")
        if self.k == 0:
            raise InvalidInputError("k must be nonzero")

    @property
    def degenerate(self) -> bool:
        return self.k % self.n == 0

    @classmethod
    def from_d(cls, n: int, d: int, sign: int) -> "PathParams":
        return cls(n, d * n + sign, d)


@dataclass(frozen=True)
class SignSequence:
    chi: tuple[int, ...]
    r: Scalar

    def __post_init__(self):
        chi = tuple(int(c) for c in self.chi)
        if any(c not in (-1, 1) for c in chi):
            raise InvalidInputError("sign sequence entries must be +1 or -1")
        object.__setattr__(self, "chi", chi)
        if type(self.r) is int:
            object.__setattr__(self, "r", Fraction(self.r))
        if self.r < 0:
            raise InvalidInputError("amplitude r must be nonnegative")

    @classmethod
    def parse(cls, text: str, r, mode: str = RATIONAL) -> "SignSequence":
        """``SignSequence.parse("+-+-", "1/2")``."""
        table = {"+": 1, "-": -1}
        try:
            chi = tuple(table[c] for c in text.strip())
        except KeyError as exc:
            raise InvalidInputError(f"sign string may contain only '+' and '-': {text!r}") from exc
        return cls(chi, to_scalar(r, mode))

    @property
    def balanced(self) -> bool:
        return sum(self.chi) == 0

    def signs(self) -> str:
        return "".join("+" if c > 0 else "-" for c in self.chi)


def make_regular(n: int, mode: str = RATIONAL) -> PeriodicPath:
    """The regular path ``V_i = (i/n, 0)``."""
    if n < 1:
        raise InvalidInputError("n must be positive")
    if mode == RATIONAL:
        verts = tuple(Point(Fraction(i, n), Fraction(0)) for i in range(n))
    else:
        verts = tuple(Point(i / n, 0.0) for i in range(n))
    return PeriodicPath(verts, 1)


def make_sign_sequence_path(n: int, s: SignSequence) -> PeriodicPath:
    """``x_j = j/n`` and ``y_{j+1} = y_j + chi_j r``."""
    if len(s.chi) != n:
        raise InvalidInputError(f"sign sequence has length {len(s.chi)}, expected {n}")
    if not s.balanced:
        raise InconsistentSequenceError(
            f"sum of signs is {sum(s.chi)}; the path would not close to V_n = V_0 + e1"
        )
    rational = not isinstance(s.r, float)
    y = s.r * 0
    verts = []
    for j in range(n):
        x = Fraction(j, n) if rational else j / n
        verts.append(Point(x, y))
        y = y + s.chi[j] * s.r
    return PeriodicPath(tuple(verts), 1)


def _equal_values_report(name: str, values: Sequence[Scalar], tol: float) -> tuple[bool, Scalar]:
    ref = values[0]
    worst = max(abs(v - ref) for v in values)
    if isinstance(ref, float):
        scale = max(abs(v) for v in values)
        return worst <= tol * max(scale, 1e-300), worst
    return worst == 0, worst


def validate_equilateral(path: PeriodicPath, tol: float = DEFAULT_TOL) -> Report:
    """All squared edge lengths ``|V_i V_{i+1}|^2`` equal."""
    lengths = [e.norm2() for e in path.edges()]
    ok, worst = _equal_values_report("equilateral", lengths, tol)
    zero = [i for i, v in enumerate(lengths) if v == 0]
    details = {"zero_length_edges": zero} if zero else {}
    return Report("equilateral", ok, worst, value=lengths[0], details=details)


def _require_unit_shift(path: PeriodicPath, what: str) -> None:
    if path.m != 1:
        raise InvalidInputError(f"{what} is defined for paths with shift m = 1, got m = {path.m}")


def validate_k_diagonals(path: PeriodicPath, k: int, tol: float = DEFAULT_TOL) -> Report:
    """All squared ``k``-diagonals ``|V_i V_{i+k}|^2`` equal."""
    _require_unit_shift(path, "k-diagonal equality")
    if k % path.p == 0:
        # every k-diagonal is the translation (k/p) e1: the condition is vacuous
        return Report("k-diagonals", False, 0, degenerate=True,
                      details={"reason": f"k = {k} is a multiple of the period {path.p}"})
    diags = [(path.vertex(i + k) - path.vertex(i)).norm2() for i in range(path.p)]
    ok, worst = _equal_values_report("k-diagonals", diags, tol)
    return Report("k-diagonals", ok, worst, value=diags[0], details={"k": k})


def _normalization_report(path: PeriodicPath, tol: float) -> Report:
    v0 = path.vertices[0]
    worst = max(abs(v0.x), abs(v0.y))
    ok = worst <= tol if path.mode == FLOAT else worst == 0
    return Report("normalization", ok, worst)


def validate_path(path: PeriodicPath, k: int, tol: float = DEFAULT_TOL) -> Report:
    """Whether ``path`` is a discrete periodic bicycle ``(n, k)``-path."""
    _require_unit_shift(path, "a bicycle (n, k)-path")
    parts = (
        _normalization_report(path, tol),
        validate_equilateral(path, tol),
        validate_k_diagonals(path, k, tol),
    )
    return Report(
        "bicycle-path",
        all(p.passed for p in parts),
        max(p.max_violation for p in parts),
        degenerate=any(p.degenerate for p in parts),
        details={"n": path.p, "k": k},
        parts=parts,
    )


QUAD_TRAPEZOID = "trapezoid"
QUAD_PARALLELOGRAM = "parallelogram"
QUAD_DEGENERATE = "degenerate"
QUAD_NEITHER = "neither"


def check_trapezoidal(path: PeriodicPath, k: int, tol: float = DEFAULT_TOL) -> Report:
    """``V_i V_{i+k+1} || V_{i+1} V_{i+k}`` for every ``i``, with per-quad labels.

    A quad is a parallelogram motion when ``V_{i+1} - V_i == V_{i+k+1} - V_{i+k}``;
    quads that are both (collinear) or have a zero side are ``degenerate``.
    """
    _require_unit_shift(path, "the trapezoidal condition")
    labels = []
    worst = path.vertices[0].x * 0
    for i in range(path.p):
        a, b = path.vertex(i), path.vertex(i + 1)
        c, d = path.vertex(i + k), path.vertex(i + k + 1)
        par = parallel_check(d - a, c - b, tol)
        gap = (b - a) - (d - c)
        if path.mode == FLOAT:
            glide = max(abs(gap.x), abs(gap.y)) <= tol * max(1.0, abs(b.x - a.x) + abs(b.y - a.y))
        else:
            glide = gap.x == 0 and gap.y == 0
        if par.degenerate or (par.parallel and glide):
            labels.append(QUAD_DEGENERATE)
        elif par.parallel:
            labels.append(QUAD_TRAPEZOID)
        elif glide:
            labels.append(QUAD_PARALLELOGRAM)
        else:
            labels.append(QUAD_NEITHER)
        worst = max(worst, par.violation)
    bad = [i for i, lab in enumerate(labels) if lab in (QUAD_PARALLELOGRAM, QUAD_NEITHER)]
    degenerate = not bad and QUAD_DEGENERATE in labels
    return Report(
        "trapezoidal",
        not bad and not degenerate,
        worst,
        degenerate=degenerate,
        details={"k": k, "quads": labels, "failing_quads": bad},
    )


def enumerate_sign_sequences(n: int, cap: int = ENUMERATION_CAP) -> list[tuple[int, ...]]:
    """All balanced ``chi`` in ``{+1, -1}^n``, lexicographic with ``+`` first."""
    if n < 1:
        raise InvalidInputError("n must be positive")
    if n > cap:
        raise TooLargeError(f"n = {n} exceeds enumeration cap {cap}")
    if n % 2:
        return []
    out = []
    for plus in itertools.combinations(range(n), n // 2):
        chi = [-1] * n
        for j in plus:
            chi[j] = 1
        out.append(tuple(chi))
    return out


@dataclass(frozen=True)
class FamilyClass:
    """Result of :func:`classify_as_family`; ``distance`` is the max coordinate gap."""

    kind: str
    sign_sequence: SignSequence | None = None
    distance: Scalar = 0

    @property
    def chi(self):
        return None if self.sign_sequence is None else self.sign_sequence.chi

    @property
    def r(self):
        return None if self.sign_sequence is None else self.sign_sequence.r


REGULAR = "regular"
SIGN_SEQUENCE = "sign-sequence"
OUTSIDE_FAMILY = "outside-family"


def _coordinate_distance(a: PeriodicPath, b: PeriodicPath) -> Scalar:
    return max(max(abs(u.x - v.x), abs(u.y - v.y)) for u, v in zip(a.vertices, b.vertices))


def classify_as_family(path: PeriodicPath, tol: float | None = None) -> FamilyClass:
    """Match ``path`` against the regular path and the sign-sequence family.

    Exact in rational mode; in float mode a candidate is accepted when every
    coordinate is within ``tol`` (default 1e-8) of the family member.
    """
    _require_unit_shift(path, "family classification")
    n = path.p
    exact = path.mode == RATIONAL
    if tol is None:
        tol = CLASSIFY_TOL

    def close(dist):
        return dist == 0 if exact else dist <= tol

    regular = make_regular(n, path.mode)
    dist = _coordinate_distance(path, regular)
    if close(dist):
        return FamilyClass(REGULAR, distance=dist)
    ys = [path.vertex(j).y for j in range(n + 1)]
    steps = [ys[j + 1] - ys[j] for j in range(n)]
    if any(s == 0 for s in steps):
        return FamilyClass(OUTSIDE_FAMILY, distance=dist)
    chi = tuple(1 if s > 0 else -1 for s in steps)
    if sum(chi) != 0:
        return FamilyClass(OUTSIDE_FAMILY, distance=dist)
    r = sum(abs(s) for s in steps) / n
    seq = SignSequence(chi, r)
    member_dist = _coordinate_distance(path, make_sign_sequence_path(n, seq))
    if close(member_dist):
        return FamilyClass(SIGN_SEQUENCE, seq, member_dist)
    return FamilyClass(OUTSIDE_FAMILY, distance=min(dist, member_dist))


def path_from_coordinates(coords: Iterable[Sequence], m: int = 1, mode: str = RATIONAL) -> PeriodicPath:
    """Build a path from ``[(x, y), ...]`` with loosely typed entries."""
    return PeriodicPath(tuple(Point(to_scalar(x, mode), to_scalar(y, mode)) for x, y in coords), m)
