"""Projective parameters and 2x2 Moebius maps on the real projective line."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import AllFixedError, DegenerateFitError, InvalidInputError, InvalidMapError
from .geometry import DEFAULT_TOL, FLOAT, RATIONAL, Scalar, common_mode, exact_sqrt, to_scalar


@dataclass(frozen=True, slots=True, eq=False)
class ProjectiveParam:
    """Homogeneous coordinate ``[p : q]`` of ``t = p / q``; ``[1 : 0]`` is infinity."""

    p: Scalar
    q: Scalar

    def __post_init__(self):
        if type(self.p) is int:
            object.__setattr__(self, "p", Fraction(self.p))
        if type(self.q) is int:
            object.__setattr__(self, "q", Fraction(self.q))
        common_mode((self.p, self.q))
        if self.p == 0 and self.q == 0:
            raise InvalidInputError("[0 : 0] is not a point of the projective line")

    @classmethod
    def of(cls, t, mode: str = RATIONAL) -> "ProjectiveParam":
        """``[t : 1]``, or infinity for ``t`` in (``None``, ``"inf"``)."""
        if t is None or (isinstance(t, str) and t.strip().lower() in ("inf", "infinity", "oo")):
            one = Fraction(1) if mode == RATIONAL else 1.0
            return cls(one, one * 0)
        if isinstance(t, float) and math.isinf(t):
            return cls(1.0, 0.0)
        value = to_scalar(t, mode)
        return cls(value, value * 0 + 1)

    @property
    def mode(self) -> str:
        return FLOAT if isinstance(self.p, float) else RATIONAL

    @property
    def is_infinite(self) -> bool:
        if self.mode == FLOAT:
            return abs(self.q) <= DEFAULT_TOL * abs(self.p)
        return self.q == 0

    def value(self) -> Scalar | None:
        """Affine value ``p / q``; ``None`` at infinity."""
        if self.q == 0:
            return None
        return self.p / self.q

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectiveParam):
            return NotImplemented
        lhs, rhs = self.p * other.q, other.p * self.q
        if self.mode == FLOAT or other.mode == FLOAT:
            scale = math.hypot(self.p, self.q) * math.hypot(other.p, other.q)
            return abs(lhs - rhs) <= DEFAULT_TOL * scale
        return lhs == rhs

    def __hash__(self):
        if self.mode == RATIONAL:
            return hash(None if self.q == 0 else self.p / self.q)
        return 0

    def __repr__(self) -> str:
        return f"[{self.p} : {self.q}]"


INFINITY = ProjectiveParam(Fraction(1), Fraction(0))


@dataclass(frozen=True, slots=True, eq=False)
class MobiusMap:
    """Matrix ``[[a, b], [c, d]]`` acting by ``[p : q] -> [ap + bq : cp + dq]``."""

    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    def __post_init__(self):
        for name in "abcd":
            if type(getattr(self, name)) is int:
                object.__setattr__(self, name, Fraction(getattr(self, name)))
        common_mode((self.a, self.b, self.c, self.d))

    @classmethod
    def identity(cls, mode: str = RATIONAL) -> "MobiusMap":
        one = Fraction(1) if mode == RATIONAL else 1.0
        return cls(one, one * 0, one * 0, one)

    @property
    def mode(self) -> str:
        return FLOAT if isinstance(self.a, float) else RATIONAL

    @property
    def det(self) -> Scalar:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> Scalar:
        return self.a + self.d

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def is_singular(self, tol: float = DEFAULT_TOL) -> bool:
        if self.mode == RATIONAL:
            return self.det == 0
        scale = max(abs(v) for v in self.entries()) ** 2
        return scale == 0 or abs(self.det) <= tol * scale

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return MobiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h).normalized()

    def adjugate(self) -> "MobiusMap":
        """Inverse up to scale."""
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def normalized(self) -> "MobiusMap":
        """Rescale: coprime integer entries (rational) or max |entry| = 1 (float)."""
        entries = self.entries()
        if self.mode == RATIONAL:
            lcm = 1
            for v in entries:
                lcm = lcm * v.denominator // gcd(lcm, v.denominator)
            ints = [int(v * lcm) for v in entries]
            g = 0
            for v in ints:
                g = gcd(g, v)
            if g == 0:
                return self
            # first nonzero entry positive, so equal maps compare equal entrywise
            sign = -1 if next(v for v in ints if v != 0) < 0 else 1
            return MobiusMap(*(Fraction(sign * v // g) for v in ints))
        top = max(abs(v) for v in entries)
        if top == 0.0:
            return self
        return MobiusMap(*(v / top for v in entries))

    def proportional_to(self, other: "MobiusMap", tol: float = DEFAULT_TOL) -> bool:
        """Equality as projective maps, by cross-multiplication of every entry pair."""
        mine, theirs = self.entries(), other.entries()
        exact = self.mode == RATIONAL and other.mode == RATIONAL
        scale = max(abs(v) for v in mine) * max(abs(v) for v in theirs)
        for i in range(4):
            for j in range(i + 1, 4):
                diff = mine[i] * theirs[j] - mine[j] * theirs[i]
                if exact:
                    if diff != 0:
                        return False
                elif abs(diff) > tol * scale:
                    return False
        return any(v != 0 for v in mine) and any(v != 0 for v in theirs)

    def __repr__(self) -> str:
        return f"MobiusMap([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


def _require_invertible(m: MobiusMap) -> None:
    if m.is_singular():
        raise InvalidMapError(f"singular Moebius matrix {m!r}")


def mobius_apply(m: MobiusMap, t: ProjectiveParam) -> ProjectiveParam:
    _require_invertible(m)
    return ProjectiveParam(m.a * t.p + m.b * t.q, m.c * t.p + m.d * t.q)


def mobius_compose(m: MobiusMap, n: MobiusMap) -> MobiusMap:
    """The map ``t -> m(n(t))``."""
    return m @ n


def _from_standard_triple(t0: ProjectiveParam, t1: ProjectiveParam, tinf: ProjectiveParam) -> MobiusMap:
    # columns are scaled images of infinity and 0 so that [1 : 1] lands on t1
    alpha = t1.p * t0.q - t0.p * t1.q
    beta = tinf.p * t1.q - t1.p * tinf.q
    m = MobiusMap(alpha * tinf.p, beta * t0.p, alpha * tinf.q, beta * t0.q)
    if m.is_singular():
        raise DegenerateFitError("three-point fit needs pairwise distinct points")
    return m


def mobius_fit(pairs: Sequence[tuple[ProjectiveParam, ProjectiveParam]]) -> MobiusMap:
    """The unique map (up to scale) sending ``t_i -> u_i`` for three pairs."""
    if len(pairs) != 3:
        raise InvalidInputError("mobius_fit takes exactly three (source, image) pairs")
    (t1, u1), (t2, u2), (t3, u3) = pairs
    for xs, what in (((t1, t2, t3), "parameters"), ((u1, u2, u3), "images")):
        if xs[0] == xs[1] or xs[0] == xs[2] or xs[1] == xs[2]:
            raise DegenerateFitError(f"coincident {what} in three-point fit")
    src = _from_standard_triple(t1, t2, t3)
    dst = _from_standard_triple(u1, u2, u3)
    return dst @ src.adjugate()


@dataclass(frozen=True)
class FixedPoints:
    """Real fixed points of a Moebius map.

    ``coefficients`` are the exact ``(c, d - a, -b)`` of
    ``c t^2 + (d - a) t - b = 0``. ``exact`` is true when the roots are
    rational (rational mode and a square discriminant).
    """

    points: tuple[ProjectiveParam, ...]
    discriminant: Scalar
    discriminant_sign: int
    coefficients: tuple
    exact: bool

    @property
    def kind(self) -> str:
        return {1: "hyperbolic", 0: "parabolic", -1: "elliptic"}[self.discriminant_sign]


def is_scalar_identity(m: MobiusMap, tol: float = DEFAULT_TOL) -> bool:
    if m.mode == RATIONAL:
        return m.b == 0 and m.c == 0 and m.a == m.d
    scale = max(abs(v) for v in m.entries())
    return abs(m.b) <= tol * scale and abs(m.c) <= tol * scale and abs(m.a - m.d) <= tol * scale


def mobius_fixed_points(m: MobiusMap, tol: float = DEFAULT_TOL) -> FixedPoints:
    """Solve ``[p : q]`` with ``c p^2 + (d - a) p q - b q^2 = 0``.

    Raises :class:`AllFixedError` for a multiple of the identity.
    """
    _require_invertible(m)
    if is_scalar_identity(m, tol):
        raise AllFixedError("identity map: every point is fixed")
    m = m.normalized()
    a, b, c, d = m.entries()
    coeffs = (c, d - a, -b)
    disc = (d - a) ** 2 + 4 * b * c
    if m.mode == RATIONAL:
        sign = (disc > 0) - (disc < 0)
    else:
        scale = (d - a) ** 2 + abs(4 * b * c)
        sign = 0 if abs(disc) <= tol * scale else (1 if disc > 0 else -1)
    if sign < 0:
        return FixedPoints((), disc, -1, coeffs, m.mode == RATIONAL)

    root = None
    exact = False
    if m.mode == RATIONAL:
        root = exact_sqrt(disc) if sign > 0 else Fraction(0)
        exact = root is not None
    if root is None:
        root = math.sqrt(float(disc)) if sign > 0 else 0.0
    if not exact:
        a, b, c, d = (float(v) for v in (a, b, c, d))

    # roots of c t^2 + (d - a) t - b in homogeneous form; the pairing
    # [2b : (d - a) + s] / [(a - d) + s : 2c] is picked to avoid cancellation
    signs = (1, -1) if sign > 0 else (1,)
    points = []
    for s in signs:
        r = s * root
        first = ((a - d) + r, 2 * c)
        second = (2 * b, (d - a) + r)
        n1 = abs(first[0]) + abs(first[1])
        n2 = abs(second[0]) + abs(second[1])
        pq = first if n1 >= n2 else second
        points.append(ProjectiveParam(*pq))
    if sign == 0:
        disc = disc * 0
    return FixedPoints(tuple(points), disc, sign, coeffs, exact)


def mobius_conjugacy_invariant(m: MobiusMap) -> Scalar:
    """``trace^2 / det``, unchanged by conjugation and by rescaling."""
    _require_invertible(m)
    return (m.a + m.d) ** 2 / m.det
