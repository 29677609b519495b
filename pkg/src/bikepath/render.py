"""Deterministic SVG figures of paths, linkage decompositions and correspondences."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .darboux import Correspondence, LinkageDecomposition
from .errors import InvalidInputError
from .paths import PeriodicPath

LINKAGE_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


@dataclass(frozen=True)
class RenderSpec:
    periods: int = 2
    width: int = 640
    path_stroke: str = "#222222"
    target_stroke: str = "#1f77b4"
    quad_fill: str = "#ffbb78"
    linkage_colors: tuple[str, ...] = LINKAGE_COLORS
    labels: bool = False
    # baseline y = -c for area shading; None draws no baseline
    baseline: float | None = None
    margin: int = 24

    def __post_init__(self):
        if self.periods < 1:
            raise InvalidInputError("periods must be at least 1")
        if self.width < 64:
            raise InvalidInputError("canvas width must be at least 64 px")


def _fmt(v: float) -> str:
    text = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


class _Canvas:
    def __init__(self, points: Sequence[tuple[float, float]], spec: RenderSpec):
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        self.xmin, xmax = min(xs), max(xs)
        ymin, self.ymax = min(ys), max(ys)
        span_x = max(xmax - self.xmin, 1e-9)
        span_y = max(self.ymax - ymin, 0.0)
        self.margin = spec.margin
        self.scale = (spec.width - 2 * spec.margin) / span_x
        self.width = spec.width
        self.height = int(round(span_y * self.scale)) + 2 * spec.margin
        self.items: list[str] = []

    def xy(self, p) -> str:
        sx = self.margin + (p[0] - self.xmin) * self.scale
        sy = self.margin + (self.ymax - p[1]) * self.scale
        return f"{_fmt(sx)},{_fmt(sy)}"

    def polyline(self, pts, stroke: str, width: float = 1.5, dash: str | None = None, cls: str = "path"):
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(
            f'<polyline class="{cls}" points="{" ".join(self.xy(p) for p in pts)}" fill="none" '
            f'stroke="{stroke}" stroke-width="{width}"{extra}/>'
        )

    def polygon(self, pts, fill: str, opacity: float = 0.35, stroke: str = "none", cls: str = "quad"):
        self.items.append(
            f'<polygon class="{cls}" points="{" ".join(self.xy(p) for p in pts)}" fill="{fill}" '
            f'fill-opacity="{opacity}" stroke="{stroke}" stroke-width="0.75"/>'
        )

    def dots(self, pts, fill: str, r: float = 2.5):
        for p in pts:
            sx, sy = self.xy(p).split(",")
            self.items.append(f'<circle cx="{sx}" cy="{sy}" r="{r}" fill="{fill}"/>')

    def label(self, p, text: str):
        sx, sy = self.xy(p).split(",")
        self.items.append(f'<text x="{sx}" y="{sy}" dx="4" dy="-4" font-size="10" font-family="sans-serif">{text}</text>')

    def render(self) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}">\n'
            f"<!-- y axis flipped: screen_x = {self.margin} + (x - {_fmt(self.xmin)}) * {_fmt(self.scale)}, "
            f"screen_y = {self.margin} + ({_fmt(self.ymax)} - y) * {_fmt(self.scale)} -->\n"
            f'<rect width="{self.width}" height="{self.height}" fill="#ffffff"/>\n'
        )
        return head + "\n".join(self.items) + "\n</svg>\n"


def _points(path: PeriodicPath, periods: int) -> list[tuple[float, float]]:
    return [(float(v.x), float(v.y)) for v in (path.vertex(i) for i in range(periods * path.p + 1))]


def _baseline_layer(canvas: _Canvas, pts, c: float):
    foot0, foot1 = (pts[0][0], -c), (pts[-1][0], -c)
    canvas.polygon([foot0] + list(pts) + [foot1], "#9edae5", 0.4, cls="area")
    canvas.polyline([foot0, foot1], "#555555", 1.0, dash="4 3", cls="baseline")


def render_svg(obj, spec: RenderSpec = RenderSpec()) -> str:
    """SVG text for a path, a correspondence or a linkage decomposition."""
    if isinstance(obj, PeriodicPath):
        return _render_path(obj, spec)
    if isinstance(obj, Correspondence):
        return _render_correspondence(obj, spec)
    if isinstance(obj, LinkageDecomposition):
        return _render_linkages(obj, spec)
    raise InvalidInputError(f"cannot render {type(obj).__name__}")


def _extent(point_lists, spec: RenderSpec):
    allpts = [p for pts in point_lists for p in pts]
    if not allpts:
        raise InvalidInputError("nothing to render")
    if spec.baseline is not None:
        allpts = allpts + [(allpts[0][0], -spec.baseline)]
    return allpts


def _render_path(path: PeriodicPath, spec: RenderSpec) -> str:
    pts = _points(path, spec.periods)
    canvas = _Canvas(_extent([pts], spec), spec)
    if spec.baseline is not None:
        _baseline_layer(canvas, pts, spec.baseline)
    canvas.polyline(pts, spec.path_stroke)
    canvas.dots(pts, spec.path_stroke)
    if spec.labels:
        for i, p in enumerate(pts[: path.p + 1]):
            canvas.label(p, f"V{i}")
    return canvas.render()


def _render_correspondence(c: Correspondence, spec: RenderSpec) -> str:
    src = _points(c.source, spec.periods)
    dst = _points(c.target, spec.periods)
    canvas = _Canvas(_extent([src, dst], spec), spec)
    if spec.baseline is not None:
        _baseline_layer(canvas, src, spec.baseline)
        _baseline_layer(canvas, dst, spec.baseline)
    for i in range(len(src) - 1):
        canvas.polygon([src[i], dst[i], src[i + 1], dst[i + 1]], spec.quad_fill, stroke="#e07b00")
    for i in range(len(src)):
        canvas.polyline([src[i], dst[i]], "#7f7f7f", 1.0, cls="leg")
    canvas.polyline(src, spec.path_stroke)
    canvas.polyline(dst, spec.target_stroke)
    canvas.dots(src, spec.path_stroke)
    canvas.dots(dst, spec.target_stroke)
    if spec.labels:
        for i in range(c.source.p + 1):
            canvas.label(src[i], f"P{i}")
            canvas.label(dst[i], f"Q{i}")
    return canvas.render()


def _render_linkages(dec: LinkageDecomposition, spec: RenderSpec) -> str:
    parent = _points(dec.parent, spec.periods)
    layers = []
    span = parent[-1][0]
    for L in dec.linkages:
        pts = [(float(v.x), float(v.y)) for v in (L.vertex(j) for j in range(-1, spec.periods * L.p + 2))]
        layers.append([p for p in pts if parent[0][0] - 1e-12 <= p[0] <= span + 1e-12])
    canvas = _Canvas(_extent([parent] + layers, spec), spec)
    canvas.polyline(parent, "#bbbbbb", 1.0, dash="3 3", cls="parent")
    for i, pts in enumerate(layers):
        color = spec.linkage_colors[i % len(spec.linkage_colors)]
        canvas.polyline(pts, color, 1.75, cls="linkage")
        canvas.dots(pts, color, 2.0)
    if spec.labels:
        for i, p in enumerate(parent[: dec.parent.p + 1]):
            canvas.label(p, f"V{i}")
    return canvas.render()
