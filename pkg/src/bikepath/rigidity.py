"""Numerical search for bicycle (n, k)-paths.

The constraints of an ``(n, k)``-path are written as a square polynomial
system in ``x_1..x_{n-1}, y_1..y_{n-1}`` (``V_0`` pinned at the origin and
``V_n = V_0 + e1`` substituted). A Levenberg-Marquardt solver is started from
seeded random perturbations of the regular path and every converged solution
is classified against the regular path and the sign-sequence family.

This is a falsification instrument: it can surface a counterexample to the
classification of ``(n, dn +/- 1)``-paths, it cannot prove there is none.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidInputError
from .geometry import Point
from .paths import (
    OUTSIDE_FAMILY,
    REGULAR,
    SIGN_SEQUENCE,
    FamilyClass,
    PeriodicPath,
    classify_as_family,
)

NON_CONVERGED = "non-converged"


@dataclass(frozen=True)
class ConstraintSystem:
    n: int
    k: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInputError("the search needs n >= 2")
        if self.k % self.n == 0:
            raise InvalidInputError("k must not be a multiple of n")
        base = np.arange(self.n)
        # vertex pairs (i, i+1) and (i, i+k): base index and period offset of each end
        for name, step in (("_edge", 1), ("_diag", self.k)):
            ends = base + step
            object.__setattr__(self, name, (base, ends % self.n, ends // self.n))

    @property
    def size(self) -> int:
        return 2 * (self.n - 1)

    @property
    def classified(self) -> bool:
        """Whether ``k = d n +/- 1`` with ``d != 0``, the case with a known answer."""
        return any((self.k - s) % self.n == 0 and (self.k - s) != 0 for s in (1, -1))

    def split(self, coords) -> tuple[np.ndarray, np.ndarray]:
        z = np.asarray(coords, dtype=float)
        if z.shape != (self.size,):
            raise InvalidInputError(f"expected {self.size} coordinates, got {z.shape}")
        X = np.concatenate(([0.0], z[: self.n - 1]))
        Y = np.concatenate(([0.0], z[self.n - 1 :]))
        return X, Y

    # The solver works in offsets u_j = x_j - j/n. The regular increment of
    # a pair is then the same for every row and cancels exactly in
    # D_i - D_0, so the residual has no rounding floor near the family.

    def to_offsets(self, coords) -> np.ndarray:
        z = np.array(coords, dtype=float)
        z[: self.n - 1] -= np.arange(1, self.n) / self.n
        return z

    def from_offsets(self, z) -> np.ndarray:
        out = np.array(z, dtype=float)
        out[: self.n - 1] += np.arange(1, self.n) / self.n
        return out

    def _offset_residual(self, z) -> np.ndarray:
        U, Y = self.split(z)
        out = []
        for step, (a, b, off) in ((1, self._edge), (self.k, self._diag)):
            du, dy = U[b] - U[a], Y[b] - Y[a]
            dx_sum = 2.0 * step / self.n + du[1:] + du[0]
            out.append((du[1:] - du[0]) * dx_sum + (dy[1:] - dy[0]) * (dy[1:] + dy[0]))
        return np.concatenate(out)

    def _offset_jacobian(self, z) -> np.ndarray:
        U, Y = self.split(z)
        n = self.n
        J = np.zeros((self.size, self.size))
        row0 = 0
        for step, (a, b, _) in ((1, self._edge), (self.k, self._diag)):
            dx = step / n + U[b] - U[a]
            dy = Y[b] - Y[a]
            for i in range(1, n):
                row = row0 + i - 1
                for idx, sign_i, sign_0 in ((b, 2.0, -2.0), (a, -2.0, 2.0)):
                    for pair, s in ((i, sign_i), (0, sign_0)):
                        v = idx[pair]
                        if v == 0:
                            continue
                        J[row, v - 1] += s * dx[pair]
                        J[row, n - 1 + v - 1] += s * dy[pair]
            row0 += n - 1
        return J

    def residual_array(self, coords) -> np.ndarray:
        """Float residual at ``(x_1..x_{n-1}, y_1..y_{n-1})``."""
        return self._offset_residual(self.to_offsets(coords))

    def jacobian(self, coords) -> np.ndarray:
        """Analytic Jacobian of :meth:`residual_array`."""
        return self._offset_jacobian(self.to_offsets(coords))

    def _offset_path(self, z) -> PeriodicPath:
        return self.path(self.from_offsets(z))

    def path(self, coords) -> PeriodicPath:
        X, Y = self.split(coords)
        return PeriodicPath(tuple(Point(float(x), float(y)) for x, y in zip(X, Y)), 1)

    def coords_of(self, path: PeriodicPath) -> list:
        """Unknown vector ``(x_1..x_{n-1}, y_1..y_{n-1})`` of a path with ``V_0 = 0``."""
        if path.p != self.n or path.m != 1:
            raise InvalidInputError("path does not match the system")
        vs = path.vertices[1:]
        return [v.x for v in vs] + [v.y for v in vs]

    def regular_coords(self) -> np.ndarray:
        return np.concatenate((np.arange(1, self.n) / self.n, np.zeros(self.n - 1)))


def residual(system: ConstraintSystem, coords: Sequence) -> list:
    """``|V_iV_{i+1}|^2 - |V_0V_1|^2`` then ``|V_iV_{i+k}|^2 - |V_0V_k|^2``, i = 1..n-1.

    Works on any number type, so Fraction coordinates give an exact residual.
    """
    n = system.n
    if len(coords) != system.size:
        raise InvalidInputError(f"expected {system.size} coordinates, got {len(coords)}")
    zero = coords[0] * 0
    xs = [zero] + list(coords[: n - 1])
    ys = [zero] + list(coords[n - 1 :])

    def sq(i, j):
        qi, ri = divmod(i, n)
        qj, rj = divmod(j, n)
        dx = xs[rj] + qj - xs[ri] - qi
        dy = ys[rj] - ys[ri]
        return dx * dx + dy * dy

    out = [sq(i, i + 1) - sq(0, 1) for i in range(1, n)]
    out += [sq(i, i + system.k) - sq(0, system.k) for i in range(1, n)]
    return out


@dataclass(frozen=True)
class SolveConfig:
    residual_tol: float = 1e-12
    step_tol: float = 1e-14
    max_iter: int = 500
    tau: float = 1e-3
    # once the residual is below residual_tol, keep taking (accepted) steps
    # until the step itself is below this, bounding the distance to the root
    polish_step_tol: float = 1e-10
    classify_tol: float = 1e-8


@dataclass(frozen=True)
class SolveReport:
    seed: int | None
    iterations: int
    residual_norm: float
    coords: tuple[float, ...]
    classification: str
    family: FamilyClass | None = None
    status: str = "converged"

    @property
    def converged(self) -> bool:
        return self.classification != NON_CONVERGED

    def to_dict(self) -> dict:
        out = {
            "seed": self.seed,
            "iterations": self.iterations,
            "residual_norm": self.residual_norm,
            "classification": self.classification,
            "status": self.status,
            "coords": list(self.coords),
        }
        if self.family is not None and self.family.sign_sequence is not None:
            out["chi"] = list(self.family.chi)
            out["r"] = float(self.family.r)
        if self.family is not None:
            out["family_distance"] = float(self.family.distance)
        return out


def _norm(v: np.ndarray) -> float:
    return float(np.sqrt(np.dot(v, v)))


def solve_from_start(
    system: ConstraintSystem, start: Sequence[float], config: SolveConfig = SolveConfig(), seed: int | None = None
) -> SolveReport:
    """Damped Gauss-Newton (Levenberg-Marquardt, Nielsen damping update).

    Solves ``(J^T J + mu diag(J^T J)) h = -J^T r`` and adapts ``mu`` by the gain
    ratio. Deterministic for a given start and config.
    """
    x = np.array(start, dtype=float)
    if x.shape != (system.size,) or not np.all(np.isfinite(x)):
        raise InvalidInputError("start must be a finite vector of length 2(n-1)")
    x = system.to_offsets(x)
    r = system._offset_residual(x)
    J = system._offset_jacobian(x)
    rn = _norm(r)
    mu = None
    nu = 2.0
    it = 0
    last_step = math.inf
    status = "max-iterations"
    while it < config.max_iter:
        if rn <= config.residual_tol and (it == 0 or last_step <= config.polish_step_tol):
            status = "residual"
            break
        A = J.T @ J
        g = J.T @ r
        diag = np.diag(A).copy()
        top = float(diag.max()) if diag.size else 0.0
        if top == 0.0:
            status = "flat"
            break
        diag = np.maximum(diag, top * 1e-30)
        if mu is None:
            mu = config.tau
        try:
            h = np.linalg.solve(A + mu * np.diag(diag), -g)
        except np.linalg.LinAlgError:
            h = np.linalg.lstsq(A + mu * np.diag(diag), -g, rcond=None)[0]
        it += 1
        step = _norm(h)
        if not np.isfinite(step):
            status = "diverged"
            break
        if step <= config.step_tol:
            status = "step"
            break
        x_new = x + h
        r_new = system._offset_residual(x_new)
        rn_new = _norm(r_new)
        if not np.isfinite(rn_new):
            status = "diverged"
            break
        predicted = float(h @ (mu * diag * h - g))
        rho = (rn * rn - rn_new * rn_new) / predicted if predicted > 0 else -1.0
        if rho > 0:
            x, r, rn = x_new, r_new, rn_new
            J = system._offset_jacobian(x)
            mu *= max(1.0 / 3.0, 1.0 - (2.0 * rho - 1.0) ** 3)
            nu = 2.0
            last_step = step
        else:
            mu *= nu
            nu *= 2.0
            last_step = math.inf
    if status == "max-iterations" and rn <= config.residual_tol:
        status = "residual"
    coords = tuple(float(v) for v in system.from_offsets(x))
    if status == "diverged" or not np.all(np.isfinite(x)) or rn > config.residual_tol:
        return SolveReport(seed, it, rn if np.isfinite(rn) else math.inf, coords, NON_CONVERGED, None, status)
    family = classify_as_family(system.path(coords), config.classify_tol)
    return SolveReport(seed, it, rn, coords, family.kind, family, status)


@dataclass(frozen=True)
class SearchResult:
    system: ConstraintSystem
    reports: tuple[SolveReport, ...]
    seed: int
    noise: float

    @property
    def summary(self) -> dict:
        counts = {REGULAR: 0, SIGN_SEQUENCE: 0, OUTSIDE_FAMILY: 0, NON_CONVERGED: 0}
        for rep in self.reports:
            counts[rep.classification] += 1
        outside = [i for i, rep in enumerate(self.reports) if rep.classification == OUTSIDE_FAMILY]
        out = {
            "n": self.system.n,
            "k": self.system.k,
            "trials": len(self.reports),
            "seed": self.seed,
            "noise": self.noise,
            "converged": len(self.reports) - counts[NON_CONVERGED],
            "regular": counts[REGULAR],
            "sign_sequence": counts[SIGN_SEQUENCE],
            "outside_family": counts[OUTSIDE_FAMILY],
            "non_converged": counts[NON_CONVERGED],
            "worst_residual": max(rep.residual_norm for rep in self.reports),
            "classified_case": self.system.classified,
            "outside_family_trials": outside,
        }
        if outside:
            out["flag"] = (
                "POTENTIAL COUNTEREXAMPLE to the (n, dn+/-1) classification"
                if self.system.classified
                else "paths outside the family (no classification is claimed for this k)"
            )
        return out

    def summary_json(self) -> str:
        return json.dumps(self.summary, sort_keys=True)

    def jsonl(self) -> str:
        return "".join(json.dumps({"trial": i, **rep.to_dict()}, sort_keys=True) + "\n"
                       for i, rep in enumerate(self.reports))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Generator for one trial, independent of how many trials run or in what order."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def random_search(
    n: int, k: int, trials: int, seed: int = 0, noise: float = 0.05, config: SolveConfig = SolveConfig()
) -> SearchResult:
    """Solve from ``trials`` seeded perturbations (uniform in ``[-noise, noise]``) of the regular path."""
    if trials < 1:
        raise InvalidInputError("trials must be at least 1")
    system = ConstraintSystem(n, k)
    base = system.regular_coords()
    reports = []
    for t in range(trials):
        rng = trial_rng(seed, t)
        start = base + rng.uniform(-noise, noise, size=base.shape)
        reports.append(solve_from_start(system, start, config, seed=t))
    return SearchResult(system, tuple(reports), seed, noise)
