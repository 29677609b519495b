"""JSON documents for paths, correspondences, linkages and monodromy reports.

Rationals are written as canonical strings (``"p/q"`` or ``"p"``) and floats as
JSON numbers, which the json module emits in shortest round-trip form, so
``path_from_doc(path_to_doc(path)) == path`` bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .darboux import (
    ClosureAnalysis,
    Correspondence,
    DarbouxParams,
    LinkageDecomposition,
    closure_analysis,
)
from .errors import AllFixedError, InvalidInputError
from .geometry import FLOAT, RATIONAL, Point, Scalar, format_scalar, to_scalar
from .mobius import MobiusMap, mobius_conjugacy_invariant
from .paths import PeriodicPath

PATH_FORMAT = "bikepath-v1"
CORRESPONDENCE_FORMAT = "bikepath-correspondence-v1"
LINKAGES_FORMAT = "bikepath-linkages-v1"


def scalar_to_json(value: Scalar):
    if isinstance(value, float):
        return value
    return format_scalar(value)


def scalar_from_json(value, mode: str) -> Scalar:
    if mode == RATIONAL:
        if not isinstance(value, (str, int)) or isinstance(value, bool):
            raise InvalidInputError(f"rational scalars must be strings, got {value!r}")
        return to_scalar(value, RATIONAL)
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise InvalidInputError(f"bad float scalar {value!r}")
    return to_scalar(value, FLOAT)


@dataclass(frozen=True)
class PathDocument:
    path: PeriodicPath
    k: int | None = None
    provenance: dict[str, Any] | None = None


def path_to_doc(path: PeriodicPath, k: int | None = None, provenance: dict | None = None) -> dict:
    doc: dict[str, Any] = {
        "format": PATH_FORMAT,
        "p": path.p,
        "m": path.m,
        "scalar": path.mode,
        "vertices": [[scalar_to_json(v.x), scalar_to_json(v.y)] for v in path.vertices],
    }
    if k is not None:
        doc["k"] = k
    if provenance:
        doc["provenance"] = provenance
    return doc


def document_from_doc(doc: dict) -> PathDocument:
    if not isinstance(doc, dict) or doc.get("format") != PATH_FORMAT:
        raise InvalidInputError(f"not a {PATH_FORMAT} document")
    mode = doc.get("scalar", RATIONAL)
    if mode not in (RATIONAL, FLOAT):
        raise InvalidInputError(f"unknown scalar mode {mode!r}")
    try:
        verts = tuple(Point(scalar_from_json(x, mode), scalar_from_json(y, mode)) for x, y in doc["vertices"])
        path = PeriodicPath(verts, int(doc.get("m", 1)))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed path document: {exc}") from exc
    if "p" in doc and doc["p"] != path.p:
        raise InvalidInputError(f"document declares p = {doc['p']} but lists {path.p} vertices")
    return PathDocument(path, doc.get("k"), doc.get("provenance"))


def path_from_doc(doc: dict) -> PeriodicPath:
    return document_from_doc(doc).path


def correspondence_to_doc(c: Correspondence) -> dict:
    doc = {
        "format": CORRESPONDENCE_FORMAT,
        "source": path_to_doc(c.source),
        "target": path_to_doc(c.target),
        "ell2": scalar_to_json(c.params.ell2),
        "closed": c.closed,
    }
    if c.params.ell is not None:
        doc["ell"] = scalar_to_json(c.params.ell)
    if c.target_end is not None:
        doc["target_end"] = [scalar_to_json(c.target_end.x), scalar_to_json(c.target_end.y)]
    return doc


def correspondence_from_doc(doc: dict) -> Correspondence:
    if not isinstance(doc, dict) or doc.get("format", CORRESPONDENCE_FORMAT) != CORRESPONDENCE_FORMAT:
        raise InvalidInputError(f"not a {CORRESPONDENCE_FORMAT} document")
    try:
        source = path_from_doc(doc["source"])
        target = path_from_doc(doc["target"])
        mode = source.mode
        ell2 = scalar_from_json(doc["ell2"], mode)
        ell = scalar_from_json(doc["ell"], mode) if "ell" in doc else None
        end = None
        if "target_end" in doc:
            ex, ey = doc["target_end"]
            end = Point(scalar_from_json(ex, mode), scalar_from_json(ey, mode))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed correspondence document: {exc}") from exc
    return Correspondence(source, target, DarbouxParams(ell2, ell), end)


def linkages_to_doc(dec: LinkageDecomposition, reports=None) -> dict:
    doc = {
        "format": LINKAGES_FORMAT,
        "k": dec.k,
        "normalized": dec.normalized,
        "parent": path_to_doc(dec.parent),
        "linkages": [path_to_doc(L) for L in dec.linkages],
    }
    if reports is not None:
        doc["correspondences"] = [r.to_dict() for r in reports]
    return doc


def linkages_from_doc(doc: dict) -> LinkageDecomposition:
    if not isinstance(doc, dict) or doc.get("format") != LINKAGES_FORMAT:
        raise InvalidInputError(f"not a {LINKAGES_FORMAT} document")
    return LinkageDecomposition(
        int(doc["k"]),
        tuple(path_from_doc(d) for d in doc["linkages"]),
        path_from_doc(doc["parent"]),
        bool(doc.get("normalized", False)),
    )


def _matrix_json(m: MobiusMap) -> list:
    return [[scalar_to_json(m.a), scalar_to_json(m.b)], [scalar_to_json(m.c), scalar_to_json(m.d)]]


def monodromy_report(path: PeriodicPath, params: DarbouxParams) -> dict:
    """Matrix, det, trace, trace^2/det and fixed points of the monodromy at ``params``."""
    try:
        analysis: ClosureAnalysis | None = closure_analysis(path, params)
    except AllFixedError:
        analysis = None
    if analysis is None:
        from .darboux import monodromy

        mono = monodromy(path, params)
        fixed = None
    else:
        mono = analysis.monodromy
        fixed = analysis.fixed_points
    doc: dict[str, Any] = {
        "matrix": _matrix_json(mono),
        "det": scalar_to_json(mono.det),
        "trace": scalar_to_json(mono.trace),
        "invariant": scalar_to_json(mobius_conjugacy_invariant(mono)),
        "ell2": scalar_to_json(params.ell2),
    }
    if fixed is None:
        doc["kind"] = "identity"
        doc["fixed_points"] = "all"
        return doc
    doc["kind"] = fixed.kind
    doc["discriminant"] = scalar_to_json(fixed.discriminant)
    doc["coefficients"] = [scalar_to_json(v) for v in fixed.coefficients]
    doc["exact"] = fixed.exact
    doc["fixed_points"] = [
        {
            "t": [scalar_to_json(t.p), scalar_to_json(t.q)],
            "vector": [scalar_to_json(v.v.x), scalar_to_json(v.v.y)],
            "multiplier": mult,
        }
        for t, v, mult in zip(fixed.points, analysis.vectors, analysis.multipliers)
    ]
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def loads(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"invalid JSON: {exc}") from exc
