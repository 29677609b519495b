"""Pass/fail reports returned by validators and invariant checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .geometry import Scalar, format_scalar


@dataclass(frozen=True)
class Report:
    """Outcome of one check.

    ``max_violation`` is the worst deviation seen (exact in rational mode), so
    a failing float check says by how much it failed.
    """

    name: str
    passed: bool
    max_violation: Scalar = 0
    degenerate: bool = False
    value: Scalar | None = None
    details: dict[str, Any] = field(default_factory=dict)
    parts: tuple["Report", ...] = ()

    @property
    def status(self) -> str:
        if self.degenerate:
            return "degenerate"
        return "pass" if self.passed else "fail"

    def part(self, name: str) -> "Report":
        for p in self.parts:
            if p.name == name:
                return p
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "name": self.name,
            "status": self.status,
            "passed": self.passed,
            "max_violation": _jsonable(self.max_violation),
        }
        if self.value is not None:
            out["value"] = _jsonable(self.value)
        if self.details:
            out["details"] = _jsonable(self.details)
        if self.parts:
            out["parts"] = [p.to_dict() for p in self.parts]
        return out

    def summary(self) -> str:
        text = f"{self.name}: {self.status} (max violation {format_scalar(self.max_violation)})"
        for p in self.parts:
            text += f"\n  {p.name}: {p.status} (max violation {format_scalar(p.max_violation)})"
        return text


def _jsonable(value):
    from fractions import Fraction

    if isinstance(value, Fraction):
        return format_scalar(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "as_tuple"):
        return [_jsonable(v) for v in value.as_tuple()]
    return value
