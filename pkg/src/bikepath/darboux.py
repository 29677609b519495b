"""Darboux steps, transforms, edge/monodromy Moebius maps and linkages.

Two paths ``P`` and ``Q`` are in Darboux correspondence with parameter ``ell``
when every quad ``P_i Q_i P_{i+1} Q_{i+1}`` is an isosceles trapezoid with legs
``|P_i Q_i| = ell`` and ``P_i Q_{i+1} || Q_i P_{i+1}``. The Darboux vector
``v_i = Q_i - P_i`` lives on the circle of radius ``ell``. It is coordinatized
by ``t = v_y / (ell + v_x)``, stereographic projection from ``(-ell, 0)``, so
``t = 0`` is ``(ell, 0)`` and ``t = inf`` is ``(-ell, 0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from .errors import (
    DegenerateEdgeError,
    DegenerateError,
    DegenerateFitError,
    InconsistentInputError,
    InvalidInputError,
    ModeError,
    UndefinedDirectionError,
)
from .geometry import DEFAULT_TOL, FLOAT, RATIONAL, Point, Scalar, exact_sqrt, parallel_check, to_scalar
from .mobius import (
    FixedPoints,
    MobiusMap,
    ProjectiveParam,
    mobius_apply,
    mobius_fit,
    mobius_fixed_points,
)
from .paths import PeriodicPath
from .report import Report


@dataclass(frozen=True)
class DarbouxParams:
    """Leg length of the Darboux trapezoids.

    ``ell2`` is always present. ``ell`` is ``None`` in rational mode when
    ``ell2`` is not a rational square; the step itself only needs ``ell2``, but
    the stereographic parameter needs ``ell``.
    """

    ell2: Scalar
    ell: Scalar | None = None

    def __post_init__(self):
        if type(self.ell2) is int:
            object.__setattr__(self, "ell2", Fraction(self.ell2))
        if self.ell2 < 0:
            raise InvalidInputError("ell^2 must be nonnegative")
        if self.ell is None:
            if isinstance(self.ell2, float):
                object.__setattr__(self, "ell", math.sqrt(self.ell2))
            else:
                object.__setattr__(self, "ell", exact_sqrt(self.ell2))
        elif type(self.ell) is int:
            object.__setattr__(self, "ell", Fraction(self.ell))

    @classmethod
    def from_ell(cls, ell, mode: str = RATIONAL) -> "DarbouxParams":
        value = to_scalar(ell, mode)
        if value < 0:
            raise InvalidInputError("ell must be nonnegative")
        return cls(value * value, value)

    @classmethod
    def from_ell2(cls, ell2, mode: str = RATIONAL) -> "DarbouxParams":
        return cls(to_scalar(ell2, mode))

    @property
    def mode(self) -> str:
        return FLOAT if isinstance(self.ell2, float) else RATIONAL

    @property
    def trivial(self) -> bool:
        return self.ell2 == 0

    def require_ell(self) -> Scalar:
        if self.ell is None:
            raise InvalidInputError(
                f"ell^2 = {self.ell2} has no rational square root; the circle "
                "parameter needs ell itself (use float mode)"
            )
        return self.ell

    def to_float(self) -> "DarbouxParams":
        ell = None if self.ell is None else float(self.ell)
        return DarbouxParams(float(self.ell2), ell)


def _same_mode(*modes: str) -> str:
    if len(set(modes)) != 1:
        raise ModeError("rational and float inputs mixed in one Darboux computation")
    return modes[0]


def _leg_ok(value: Scalar, ell2: Scalar, tol: float) -> bool:
    if isinstance(value, float):
        return abs(value - ell2) <= tol * max(ell2, value, 1e-300)
    return value == ell2


def vector_from_param(t: ProjectiveParam, params: DarbouxParams) -> Point:
    """Inverse stereographic projection ``ell ((1 - t^2), 2 t) / (1 + t^2)``."""
    ell = params.require_ell()
    _same_mode(t.mode, params.mode)
    p, q = t.p, t.q
    den = p * p + q * q
    return Point(ell * (q * q - p * p) / den, ell * 2 * p * q / den)


def param_from_vector(v: Point, params: DarbouxParams) -> ProjectiveParam:
    """Stereographic parameter ``[v_y : ell + v_x]`` of a vector on the circle."""
    ell = params.require_ell()
    _same_mode(v.mode, params.mode)
    first = (v.y, ell + v.x)
    if v.mode == RATIONAL:
        if first[1] != 0:
            return ProjectiveParam(*first)
        return ProjectiveParam(Fraction(1), Fraction(0))
    # [v_y : ell + v_x] == [ell - v_x : v_y] on the circle; keep the better conditioned one
    second = (ell - v.x, v.y)
    if abs(first[0]) + abs(first[1]) >= abs(second[0]) + abs(second[1]):
        return ProjectiveParam(*first)
    return ProjectiveParam(*second)


@dataclass(frozen=True)
class DarbouxVector:
    v: Point
    t: ProjectiveParam

    @classmethod
    def from_param(cls, t: ProjectiveParam, params: DarbouxParams) -> "DarbouxVector":
        return cls(vector_from_param(t, params), t)

    @classmethod
    def from_vector(cls, v: Point, params: DarbouxParams, tol: float = DEFAULT_TOL) -> "DarbouxVector":
        if not _leg_ok(v.norm2(), params.ell2, tol):
            raise InconsistentInputError(f"|v|^2 = {v.norm2()} differs from ell^2 = {params.ell2}")
        return cls(v, param_from_vector(v, params))

    @property
    def mode(self) -> str:
        return self.v.mode


class StepResult(NamedTuple):
    point: Point
    factor: Scalar
    degenerate: bool


def darboux_step_info(
    p_i: Point,
    p_next: Point,
    q_i: Point,
    params: DarbouxParams,
    tol: float = DEFAULT_TOL,
    index: int | None = None,
) -> StepResult:
    """:func:`darboux_step` plus the line factor ``f`` and the degeneracy tag."""
    _same_mode(p_i.mode, p_next.mode, q_i.mode, params.mode)
    u = q_i - p_i
    if not _leg_ok(u.norm2(), params.ell2, tol):
        raise InconsistentInputError(
            f"|P_i Q_i|^2 = {u.norm2()} differs from ell^2 = {params.ell2}", index
        )
    w = p_next - q_i
    w2 = w.norm2()
    a2 = (p_next - p_i).norm2()
    if w2 == 0 or (isinstance(w2, float) and w2 <= tol * tol * max(a2, params.ell2)):
        raise UndefinedDirectionError("Q_i coincides with P_{i+1}: trapezoid direction undefined", index)
    # Vieta on the line P_i + s w: roots multiply to (|a|^2 - ell^2) / |w|^2 and s = 1
    # is the parallelogram point, so the other root is f
    f = (a2 - params.ell2) / w2
    if isinstance(f, float):
        degenerate = abs(f - 1.0) <= tol
    else:
        degenerate = f == 1
    return StepResult(p_i + w * f, f, degenerate)


def darboux_step(
    p_i: Point, p_next: Point, q_i: Point, params: DarbouxParams, tol: float = DEFAULT_TOL
) -> Point:
    """Complete the isosceles trapezoid ``P_i Q_i P_{i+1} Q_{i+1}``.

    Returns the point ``Q_{i+1}`` with ``|P_{i+1} Q_{i+1}| = ell`` on the line
    through ``P_i`` parallel to ``Q_i P_{i+1}`` that is not the parallelogram
    point ``P_i + (P_{i+1} - Q_i)``.
    """
    return darboux_step_info(p_i, p_next, q_i, params, tol).point


@dataclass(frozen=True)
class Correspondence:
    """A pair of periodic paths claimed to be in Darboux correspondence.

    ``target_end`` optionally records the true ``Q_p`` of a transform that did
    not close; the periodic ``target`` then disagrees with it at the wrap.
    """

    source: PeriodicPath
    target: PeriodicPath
    params: DarbouxParams
    target_end: Point | None = None

    def __post_init__(self):
        if self.source.p != self.target.p or self.source.m != self.target.m:
            raise InvalidInputError("source and target must share period and shift")
        _same_mode(self.source.mode, self.target.mode, self.params.mode)

    @property
    def closed(self) -> bool:
        return self.target_end is None

    def target_vertex(self, i: int) -> Point:
        """``Q_i`` as traced by the transform (uses ``target_end`` at ``i = p``)."""
        if i == self.source.p and self.target_end is not None:
            return self.target_end
        return self.target.vertex(i)


@dataclass(frozen=True)
class DarbouxResult:
    image: PeriodicPath
    trace: tuple[Point, ...]
    v0: Point
    vp: Point
    closed: bool
    closure_gap: Scalar
    degenerate_steps: tuple[int, ...]
    params: DarbouxParams
    source: PeriodicPath

    @property
    def correspondence(self) -> Correspondence:
        end = None if self.closed else self.trace[-1]
        return Correspondence(self.source, self.image, self.params, end)


def _as_vector(v0, params: DarbouxParams) -> Point:
    if isinstance(v0, DarbouxVector):
        return v0.v
    if isinstance(v0, ProjectiveParam):
        return vector_from_param(v0, params)
    if isinstance(v0, Point):
        return v0
    raise InvalidInputError(f"cannot use {v0!r} as a Darboux vector")


def darboux_transform(
    path: PeriodicPath, v0, params: DarbouxParams, tol: float = DEFAULT_TOL
) -> DarbouxResult:
    """Propagate the Darboux vector ``v0`` over one period of ``path``.

    The image keeps ``Q_0 = V_0 + v0`` where it is; it is not re-anchored.
    ``closed`` reports whether ``v_p == v_0``.
    """
    v = _as_vector(v0, params)
    _same_mode(path.mode, v.mode, params.mode)
    q = path.vertex(0) + v
    trace = [q]
    degenerate = []
    for i in range(path.p):
        step = darboux_step_info(path.vertex(i), path.vertex(i + 1), q, params, tol, index=i)
        q = step.point
        trace.append(q)
        if step.degenerate:
            degenerate.append(i)
    vp = q - path.vertex(path.p)
    gap = vp - v
    if path.mode == RATIONAL:
        size = max(abs(gap.x), abs(gap.y))
        closed = size == 0
    else:
        size = math.hypot(gap.x, gap.y)
        closed = size <= tol * max(float(params.ell), 1.0)
    image = PeriodicPath(tuple(trace[: path.p]), path.m)
    return DarbouxResult(image, tuple(trace), v, vp, closed, size, tuple(degenerate), params, path)


_SAMPLE_PARAMS = ("0", "1", "-1", "2", "-2", "1/2", "3", "-1/2")


def _edge_image(p_i, p_next, t, params, tol):
    q = p_i + vector_from_param(t, params)
    q_next = darboux_step(p_i, p_next, q, params, tol)
    return param_from_vector(q_next - p_next, params)


def edge_mobius(p_i: Point, p_next: Point, params: DarbouxParams, tol: float = DEFAULT_TOL) -> MobiusMap:
    """The circle map ``t_i -> t_{i+1}`` of one edge, fitted from sampled steps.

    Samples ``t = 0, 1, -1`` (then further rationals if a sample degenerates),
    fits the three-point Moebius map and checks it on a held-out sample.
    """
    if p_i == p_next:
        raise DegenerateEdgeError("zero-length edge")
    mode = _same_mode(p_i.mode, p_next.mode, params.mode)
    params.require_ell()
    pairs = []
    spare = []
    for text in _SAMPLE_PARAMS:
        t = ProjectiveParam.of(text, mode)
        try:
            u = _edge_image(p_i, p_next, t, params, tol)
        except DegenerateError:
            continue
        if len(pairs) < 3 and all(u != img for _, img in pairs):
            pairs.append((t, u))
        else:
            spare.append((t, u))
        if len(pairs) == 3 and spare:
            break
    if len(pairs) < 3 or not spare:
        raise DegenerateEdgeError("edge map collapses: ell equals the edge length or step undefined")
    try:
        fitted = mobius_fit(pairs)
    except DegenerateFitError as exc:
        raise DegenerateEdgeError(str(exc)) from exc
    t, u = spare[0]
    if mobius_apply(fitted, t) != u:
        raise DegenerateEdgeError("fitted edge map disagrees with the held-out sample")
    return fitted


def edge_maps(path: PeriodicPath, params: DarbouxParams, tol: float = DEFAULT_TOL) -> list[MobiusMap]:
    maps = []
    for i in range(path.p):
        try:
            maps.append(edge_mobius(path.vertex(i), path.vertex(i + 1), params, tol))
        except DegenerateEdgeError as exc:
            raise DegenerateEdgeError(f"edge {i}: {exc}", index=i) from exc
    return maps


def monodromy(path: PeriodicPath, params: DarbouxParams, tol: float = DEFAULT_TOL) -> MobiusMap:
    """Composition of the edge maps over one period, first edge applied first."""
    result = MobiusMap.identity(path.mode)
    for m in edge_maps(path, params, tol):
        result = m @ result
    return result


def fixed_point_multiplier(m: MobiusMap, t: ProjectiveParam) -> float:
    """Derivative of ``m`` at its fixed point ``t``: ``det / mu^2`` for the eigenvalue mu."""
    a, b, c, d = (float(v) for v in m.entries())
    p, q = float(t.p), float(t.q)
    if abs(q) >= abs(p):
        mu = (c * p + d * q) / q
    else:
        mu = (a * p + b * q) / p
    return float(m.det) / (mu * mu)


@dataclass(frozen=True)
class ClosureAnalysis:
    monodromy: MobiusMap
    fixed_points: FixedPoints
    vectors: tuple[DarbouxVector, ...]
    multipliers: tuple[float, ...]


def closure_analysis(path: PeriodicPath, params: DarbouxParams, tol: float = DEFAULT_TOL) -> ClosureAnalysis:
    """Monodromy, its fixed points and the corresponding closure vectors.

    Vectors are exact when the fixed point is rational, float otherwise.
    Raises :class:`~bikepath.errors.AllFixedError` for identity monodromy.
    """
    mono = monodromy(path, params, tol)
    fixed = mobius_fixed_points(mono, tol)
    vectors = []
    for t in fixed.points:
        p = params if t.mode == params.mode else params.to_float()
        vectors.append(DarbouxVector.from_param(t, p))
    mults = tuple(fixed_point_multiplier(mono, t) for t in fixed.points)
    return ClosureAnalysis(mono, fixed, tuple(vectors), mults)


def closure_vectors(path: PeriodicPath, params: DarbouxParams, tol: float = DEFAULT_TOL) -> list[DarbouxVector]:
    """Darboux vectors fixed by the monodromy (0, 1 or 2 of them)."""
    return list(closure_analysis(path, params, tol).vectors)


@dataclass(frozen=True)
class LinkageDecomposition:
    """The ``k`` linkages ``L_i = (V_i, V_{i+k}, V_{i+2k}, ...)`` of a path.

    Linkages keep the parent's coordinates (``normalized`` is False): ``L_i``
    vertex ``j`` is exactly ``V_{i + jk}``.
    """

    k: int
    linkages: tuple[PeriodicPath, ...]
    parent: PeriodicPath
    normalized: bool = False

    def pairs(self) -> list[tuple[PeriodicPath, PeriodicPath]]:
        """Consecutive pairs; the last pairs ``L_{k-1}`` with ``L_0`` advanced by one index."""
        out = [(self.linkages[i], self.linkages[i + 1]) for i in range(self.k - 1)]
        out.append((self.linkages[-1], self.linkages[0].rotated(1)))
        return out

    def correspondences(self, params: DarbouxParams) -> list[Correspondence]:
        return [Correspondence(a, b, params) for a, b in self.pairs()]

    def reassemble(self) -> PeriodicPath:
        """Rebuild the parent from ``V_s = L_{s mod k}[s div k]``."""
        verts = []
        for s in range(self.parent.p):
            j, i = divmod(s, self.k)
            verts.append(self.linkages[i].vertex(j))
        return PeriodicPath(tuple(verts), self.parent.m)


def decompose_linkages(path: PeriodicPath, k: int) -> LinkageDecomposition:
    if path.m != 1:
        raise InvalidInputError("linkage decomposition needs a path with shift m = 1")
    if k < 1:
        raise InvalidInputError("k must be at least 1")
    g = gcd(path.p, k)
    period, shift = path.p // g, k // g
    linkages = tuple(
        PeriodicPath(tuple(path.vertex(i + j * k) for j in range(period)), shift) for i in range(k)
    )
    return LinkageDecomposition(k, linkages, path)


def verify_correspondence(c: Correspondence, tol: float = DEFAULT_TOL) -> Report:
    """Check every quad, including the wrap quad, for leg length and parallel sides."""
    src, dst, ell2 = c.source, c.target, c.params.ell2
    worst_leg = ell2 * 0
    worst_par = ell2 * 0
    bad = []
    for i in range(src.p):
        p0, p1 = src.vertex(i), src.vertex(i + 1)
        q0, q1 = dst.vertex(i), dst.vertex(i + 1)
        leg = (q0 - p0).norm2()
        leg_ok = _leg_ok(leg, ell2, tol)
        worst_leg = max(worst_leg, abs(leg - ell2))
        par = parallel_check(q1 - p0, p1 - q0, tol)
        worst_par = max(worst_par, par.violation)
        if not (leg_ok and par.parallel):
            bad.append(i)
    return Report(
        "correspondence",
        not bad,
        max(worst_leg, worst_par),
        details={
            "failing_quads": bad,
            "max_leg_violation": worst_leg,
            "max_parallel_violation": worst_par,
        },
    )
