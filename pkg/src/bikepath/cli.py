"""Command-line front end.

Documents travel on standard streams, so commands chain::

    bikepath generate signseq --n 4 --chi +-+- --r 1 | bikepath validate --k 3 \\
        | bikepath darboux --ell 1 --closure first | bikepath compare-area

Exit codes: 0 success/pass, 1 validation failure, 2 usage error, 3 degenerate input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import io as bio
from .darboux import (
    DarbouxParams,
    DarbouxVector,
    closure_analysis,
    darboux_transform,
    decompose_linkages,
    verify_correspondence,
)
from .errors import AllFixedError, BikePathError, DegenerateError
from .geometry import FLOAT, RATIONAL, format_scalar, to_scalar
from .invariants import AreaBaseline, area_under_path, check_area_preservation, default_baseline, sweep_invariant
from .mobius import ProjectiveParam
from .paths import SignSequence, check_trapezoidal, make_regular, make_sign_sequence_path, validate_path
from .render import RenderSpec, render_svg
from .rigidity import SolveConfig, random_search

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _read_doc(source: str) -> dict:
    if source == "-":
        text = sys.stdin.read()
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    return bio.loads(text)


def _write(text: str) -> None:
    sys.stdout.write(text)


def _note(text: str) -> None:
    print(text, file=sys.stderr)


def _status_exit(report) -> int:
    if report.degenerate:
        return EXIT_DEGENERATE
    return EXIT_OK if report.passed else EXIT_FAIL


def _input_path(args):
    doc = bio.document_from_doc(_read_doc(args.input))
    path = doc.path
    if getattr(args, "float", False) and path.mode == RATIONAL:
        path = path.to_float()
    return doc, path


def cmd_generate(args) -> int:
    mode = FLOAT if args.float else RATIONAL
    if args.family == "regular":
        path = make_regular(args.n, mode)
        prov = {"generator": "regular"}
    else:
        if args.chi is None:
            raise _Usage("generate signseq needs --chi")
        seq = SignSequence.parse(args.chi, args.r, mode)
        path = make_sign_sequence_path(args.n, seq)
        prov = {"generator": "signseq", "chi": seq.signs(), "r": bio.scalar_to_json(seq.r)}
    _write(bio.dumps(bio.path_to_doc(path, args.k, prov)))
    return EXIT_OK


def _passthrough(args, doc, report) -> int:
    if args.json:
        _write(json.dumps(report.to_dict(), indent=2) + "\n")
    else:
        _note(report.summary())
        _write(bio.dumps(bio.path_to_doc(doc.path, args.k, doc.provenance)))
    return _status_exit(report)


def _k_of(args, doc) -> int:
    k = args.k if args.k is not None else doc.k
    if k is None:
        raise _Usage("--k is required (the document carries no k)")
    args.k = k
    return k


def cmd_validate(args) -> int:
    doc, path = _input_path(args)
    return _passthrough(args, doc, validate_path(path, _k_of(args, doc), args.tol))


def cmd_trapezoidal(args) -> int:
    doc, path = _input_path(args)
    return _passthrough(args, doc, check_trapezoidal(path, _k_of(args, doc), args.tol))


def _params(path, ell_text: str) -> DarbouxParams:
    return DarbouxParams.from_ell(ell_text, path.mode)


def cmd_darboux(args) -> int:
    doc, path = _input_path(args)
    params = _params(path, args.ell)
    if args.closure is not None:
        try:
            analysis = closure_analysis(path, params)
        except AllFixedError:
            raise DegenerateError("monodromy is the identity: every vector closes; pass --t0")
        if not analysis.vectors:
            raise DegenerateError(f"no real closure vector at ell = {args.ell} ({analysis.fixed_points.kind} monodromy)")
        index = 0 if args.closure == "first" else 1
        if index >= len(analysis.vectors):
            raise DegenerateError("only one closure vector (parabolic monodromy)")
        v0 = analysis.vectors[index]
        if v0.mode != path.mode:
            _note("closure vector is irrational; continuing in float mode")
            path, params = path.to_float(), params.to_float()
    else:
        if args.t0 is None:
            raise _Usage("darboux needs --t0 or --closure")
        v0 = DarbouxVector.from_param(ProjectiveParam.of(args.t0, path.mode), params)
    result = darboux_transform(path, v0, params)
    gap = format_scalar(result.closure_gap)
    _note(f"darboux: closed={result.closed} (|v_p - v_0| = {gap})")
    _write(bio.dumps(bio.correspondence_to_doc(result.correspondence)))
    return EXIT_OK


def cmd_monodromy(args) -> int:
    doc, path = _input_path(args)
    _write(json.dumps(bio.monodromy_report(path, _params(path, args.ell)), indent=2) + "\n")
    return EXIT_OK


def cmd_sweep(args) -> int:
    doc, path = _input_path(args)
    lo = to_scalar(args.ell_min, path.mode)
    hi = to_scalar(args.ell_max, path.mode)
    if args.steps < 1 or hi < lo or (args.steps > 1 and hi == lo):
        raise _Usage("need steps >= 1 and ell-min < ell-max")
    if args.steps == 1:
        grid = [lo]
    else:
        grid = [lo + (hi - lo) * i / (args.steps - 1) for i in range(args.steps)]
    _write(sweep_invariant(path, grid).to_csv())
    return EXIT_OK


def _baseline(text: str | None, paths):
    if text is None or text == "auto":
        return default_baseline(*paths)
    return AreaBaseline(to_scalar(text, paths[0].mode))


def cmd_area(args) -> int:
    doc, path = _input_path(args)
    base = _baseline(args.c, [path])
    area = area_under_path(path, base)
    _write(json.dumps({"area": bio.scalar_to_json(area), "c": bio.scalar_to_json(base.c)}) + "\n")
    return EXIT_OK


def cmd_compare_area(args) -> int:
    if args.source or args.target:
        if not (args.source and args.target and args.ell):
            raise _Usage("compare-area with --source needs --target and --ell")
        from .darboux import Correspondence

        src = bio.path_from_doc(_read_doc(args.source))
        dst = bio.path_from_doc(_read_doc(args.target))
        corr = Correspondence(src, dst, _params(src, args.ell))
    else:
        corr = bio.correspondence_from_doc(_read_doc(args.input))
    corr_report = verify_correspondence(corr)
    base = None if args.c in (None, "auto") else AreaBaseline(to_scalar(args.c, corr.source.mode))
    report = check_area_preservation(corr, base)
    out = report.to_dict()
    out["correspondence"] = corr_report.to_dict()
    _write(json.dumps(out, indent=2) + "\n")
    return EXIT_OK if report.passed and corr_report.passed else EXIT_FAIL


def cmd_linkages(args) -> int:
    doc, path = _input_path(args)
    dec = decompose_linkages(path, args.k)
    edge2 = path.edges()[0].norm2()
    params = DarbouxParams(edge2)
    reports = [verify_correspondence(c) for c in dec.correspondences(params)]
    _write(bio.dumps(bio.linkages_to_doc(dec, reports)))
    if args.verify and not all(r.passed for r in reports):
        return EXIT_FAIL
    return EXIT_OK


def cmd_rigidity(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("BIKEPATH_SEED", "0"))
    result = random_search(args.n, args.k, args.trials, seed, args.noise, SolveConfig())
    if args.jsonl:
        with open(args.jsonl, "w", encoding="utf-8") as fh:
            fh.write(result.jsonl())
    summary = result.summary
    _write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    if summary["outside_family"] and summary["classified_case"]:
        _note(summary["flag"])
        return EXIT_FAIL
    return EXIT_OK


def cmd_render(args) -> int:
    doc = _read_doc(args.input)
    fmt = doc.get("format") if isinstance(doc, dict) else None
    if fmt == bio.PATH_FORMAT:
        obj = bio.path_from_doc(doc)
    elif fmt == bio.CORRESPONDENCE_FORMAT:
        obj = bio.correspondence_from_doc(doc)
    elif fmt == bio.LINKAGES_FORMAT:
        obj = bio.linkages_from_doc(doc)
    else:
        raise _Usage(f"cannot render a document of format {fmt!r}")
    baseline = None if args.baseline is None else float(Fraction(args.baseline))
    spec = RenderSpec(periods=args.periods, width=args.width, labels=args.labels, baseline=baseline)
    svg = render_svg(obj, spec)
    if args.output in (None, "-"):
        _write(svg)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bikepath", description="Periodic bicycle paths and Darboux transformations")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p, floats=True):
        p.add_argument("input", nargs="?", default="-", help="path document (default: stdin)")
        if floats:
            p.add_argument("--float", action="store_true", help="compute in binary64 instead of exact rationals")
        return p

    g = sub.add_parser("generate", help="emit a regular or sign-sequence path document")
    g.add_argument("family", choices=("regular", "signseq"))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--chi", help="sign string such as +-+-")
    g.add_argument("--r", default="1", help="amplitude, e.g. 1/2")
    g.add_argument("--k", type=int, help="record a diagonal step in the document")
    g.add_argument("--float", action="store_true")
    g.set_defaults(func=cmd_generate)

    for name, func, text in (
        ("validate", cmd_validate, "check the (n, k)-path conditions"),
        ("trapezoidal", cmd_trapezoidal, "check the trapezoidal condition"),
    ):
        p = with_input(sub.add_parser(name, help=text))
        p.add_argument("--k", type=int)
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--json", action="store_true", help="print the report instead of passing the document on")
        p.set_defaults(func=func)

    d = with_input(sub.add_parser("darboux", help="Darboux transform of a path"))
    d.add_argument("--ell", required=True)
    d.add_argument("--t0", help="circle parameter of v_0 (or 'inf')")
    d.add_argument("--closure", choices=("first", "second"), help="use a monodromy fixed point for v_0")
    d.set_defaults(func=cmd_darboux)

    m = with_input(sub.add_parser("monodromy", help="monodromy matrix, invariant and fixed points"))
    m.add_argument("--ell", required=True)
    m.set_defaults(func=cmd_monodromy)

    s = with_input(sub.add_parser("sweep", help="CSV of the monodromy invariant over an ell grid"))
    s.add_argument("--ell-min", required=True)
    s.add_argument("--ell-max", required=True)
    s.add_argument("--steps", type=int, default=50)
    s.set_defaults(func=cmd_sweep)

    a = with_input(sub.add_parser("area", help="area between one period and the baseline y = -c"))
    a.add_argument("--c", default="auto")
    a.set_defaults(func=cmd_area)

    c = sub.add_parser("compare-area", help="area preservation report for a correspondence")
    c.add_argument("input", nargs="?", default="-", help="correspondence document (default: stdin)")
    c.add_argument("--source")
    c.add_argument("--target")
    c.add_argument("--ell")
    c.add_argument("--c", default="auto")
    c.set_defaults(func=cmd_compare_area)

    lk = with_input(sub.add_parser("linkages", help="decompose an (n, k)-path into linkages"), floats=True)
    lk.add_argument("--k", type=int, required=True)
    lk.add_argument("--verify", action="store_true", help="exit 1 unless all consecutive pairs correspond")
    lk.set_defaults(func=cmd_linkages)

    r = sub.add_parser("rigidity", help="seeded random search for (n, k)-paths")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--trials", type=int, default=200)
    r.add_argument("--seed", type=int, default=None, help="default: $BIKEPATH_SEED or 0")
    r.add_argument("--noise", type=float, default=0.05)
    r.add_argument("--jsonl", help="write per-trial records to this file")
    r.set_defaults(func=cmd_rigidity)

    rd = sub.add_parser("render", help="SVG figure of a path, correspondence or linkage document")
    rd.add_argument("input", nargs="?", default="-")
    rd.add_argument("-o", "--output")
    rd.add_argument("--periods", type=int, default=2)
    rd.add_argument("--width", type=int, default=640)
    rd.add_argument("--labels", action="store_true")
    rd.add_argument("--baseline", help="draw y = -c with area shading")
    rd.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        _note(f"bikepath: error: {exc}")
        return EXIT_USAGE
    except DegenerateError as exc:
        _note(f"bikepath: degenerate input: {exc}")
        return EXIT_DEGENERATE
    except (BikePathError, OSError) as exc:
        _note(f"bikepath: error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
