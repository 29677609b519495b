"""Inputs of the golden SVG files; ``python tests/figures.py`` rewrites them."""

from fractions import Fraction as F
from pathlib import Path

from bikepath.darboux import DarbouxParams, closure_vectors, darboux_transform, decompose_linkages
from bikepath.paths import SignSequence, make_regular, make_sign_sequence_path
from bikepath.render import RenderSpec, render_svg

GOLDEN = Path(__file__).parent / "golden"


def figures():
    alt = make_sign_sequence_path(6, SignSequence.parse("+-+-+-", F(1, 2)))
    stair = make_sign_sequence_path(6, SignSequence.parse("+++---", F(1, 2)))
    zig = make_sign_sequence_path(4, SignSequence.parse("+-+-", 1))
    params = DarbouxParams.from_ell(1)
    (v0,) = closure_vectors(zig, params)
    corr = darboux_transform(zig, v0, params).correspondence
    return {
        "regular4.svg": render_svg(make_regular(4)),
        "staircase65.svg": render_svg(stair, RenderSpec(labels=True)),
        "linkages65.svg": render_svg(decompose_linkages(alt, 5)),
        "correspondence43.svg": render_svg(corr, RenderSpec(baseline=3.0, labels=True)),
    }


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for name, svg in figures().items():
        (GOLDEN / name).write_text(svg, encoding="utf-8")
        print(name, len(svg))
