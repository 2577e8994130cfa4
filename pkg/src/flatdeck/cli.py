"""Command-line front end: validation, decomposition, classification,
deformation, homology, portions, corpus emission, and SVG rendering.

Reports are JSON documents on stdout with stable field order.  Every scalar
is printed exactly (``p/q`` or ``p/q+r/s√d``); decimal approximations appear
only inside SVG files.  Exit codes: 0 success, 1 validation failure,
2 inconclusive (budget), 3 usage error.  Inconclusive outcomes are reported
distinctly from negative results such as "not periodic".
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import corpus
from .deform import (
    DeformationSpec,
    NotCertifiedError,
    cylinder_deform,
    portion,
    require_periodic,
)
from .diagram import canonical_presentation, classify_h4hyp, diagram_of, involution_check
from .field import Scalar, format_scalar, parse_scalar
from .homology import ChainComplex, core_class, free_cylinders, intersection_form, relative_basis
from .surface import area, load_surface, save_surface, stratum, validate
from .trace import Decomposition, Inconclusive, NotPeriodic, decompose, scan

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


class Inconclusion(Exception):
    def __init__(self, report):
        self.report = report


def _emit(report):
    json.dump(report, sys.stdout, indent=1)
    sys.stdout.write("\n")


def _sc(s):
    return format_scalar(s)


def _parse_dir(text):
    p, q = text.split(",")
    return (int(p), int(q))


def _budget(args, surface):
    if getattr(args, "budget", None) is not None:
        return parse_scalar(args.budget)
    env = os.environ.get("FLATDECK_BUDGET")
    if env:
        return parse_scalar(env)
    return None


def _decompose_or_report(surface, direction, budget, report):
    res = decompose(surface, direction, budget)
    if isinstance(res, Inconclusive):
        report["result"] = {
            "status": "inconclusive",
            "reason": res.reason,
            "traced": _sc(res.traced),
        }
        raise Inconclusion(report)
    return res


def _dec_table(dec):
    cyls = []
    for i, c in enumerate(dec.cylinders):
        cyls.append(
            {
                "index": i,
                "width": _sc(c.width),
                "height": _sc(c.height),
                "modulus": _sc(c.modulus),
                "twist": _sc(c.twist),
                "top": list(c.top_word),
                "bottom": list(c.bottom_word),
                "simple": c.simple,
            }
        )
    return {
        "status": "periodic",
        "saddle_connections": [
            {
                "index": sc.index,
                "holonomy": [_sc(sc.holonomy.x), _sc(sc.holonomy.y)],
                "length": _sc(sc.length),
            }
            for sc in dec.saddle_connections
        ],
        "cylinders": cyls,
    }


def _load(args, report):
    s = load_surface(args.file)
    rep = validate(s)
    if not rep.ok:
        report["result"] = {
            "status": "invalid",
            "issues": [
                {"code": i.code, "message": i.message, "where": list(i.where)}
                for i in rep.issues
            ],
        }
        _emit(report)
        sys.exit(EXIT_INVALID)
    return s


def cmd_validate(args):
    report = {"command": "validate", "file": args.file}
    s = load_surface(args.file)
    rep = validate(s)
    report["result"] = {
        "status": "valid" if rep.ok else "invalid",
        "issues": [
            {"code": i.code, "message": i.message, "where": list(i.where)}
            for i in rep.issues
        ],
    }
    _emit(report)
    return EXIT_OK if rep.ok else EXIT_INVALID


def cmd_info(args):
    report = {"command": "info", "file": args.file}
    s = _load(args, report)
    sig = stratum(s)
    _cx, basis = relative_basis(s)
    report["result"] = {
        "field_d": s.d,
        "polygons": len(s.polygons),
        "stratum": list(sig.orders),
        "genus": sig.genus,
        "marked_points": sig.marked,
        "area": _sc(area(s)),
        "period_rank": len(basis),
    }
    _emit(report)
    return EXIT_OK


def cmd_decompose(args):
    report = {"command": "decompose", "file": args.file, "direction": list(_parse_dir(args.dir))}
    s = _load(args, report)
    res = decompose(s, _parse_dir(args.dir), _budget(args, s))
    if isinstance(res, Inconclusive):
        report["result"] = {
            "status": "inconclusive",
            "reason": res.reason,
            "traced": _sc(res.traced),
        }
        _emit(report)
        return EXIT_INCONCLUSIVE
    if isinstance(res, NotPeriodic):
        report["result"] = {"status": "not-periodic", "witness": res.witness}
        _emit(report)
        return EXIT_OK
    report["result"] = _dec_table(res)
    _emit(report)
    return EXIT_OK


def cmd_classify(args):
    report = {"command": "classify", "file": args.file, "direction": list(_parse_dir(args.dir))}
    s = _load(args, report)
    sig = stratum(s)
    if sig.marked:
        report["result"] = {"status": "refused", "reason": "surface has marked points"}
        _emit(report)
        return EXIT_INVALID
    try:
        dec = _decompose_or_report(s, _parse_dir(args.dir), _budget(args, s), report)
    except Inconclusion as stop:
        _emit(stop.report)
        return EXIT_INCONCLUSIVE
    diag = diagram_of(dec)
    tag = classify_h4hyp(diag)
    inv = involution_check(dec)
    report["result"] = {
        "status": "classified" if tag else "unrecognized",
        "model": tag.value if tag else None,
        "diagram": diag.to_text().splitlines(),
        "involution": {
            "found": inv.found,
            "fixed_letters": list(inv.fixed_letters),
        },
    }
    _emit(report)
    return EXIT_OK


def cmd_scan(args):
    report = {"command": "scan", "file": args.file, "max_slope": args.max_slope}
    s = _load(args, report)
    found = scan(s, args.max_slope, _budget(args, s), jobs=args.jobs)
    rows = []
    for direction, dec in found:
        diag = diagram_of(dec)
        tag = classify_h4hyp(diag) if len(dec.saddle_connections) == 5 else None
        rows.append(
            {
                "direction": list(direction.pq),
                "cylinders": len(dec.cylinders),
                "saddle_connections": len(dec.saddle_connections),
                "model": tag.value if tag else None,
            }
        )
    report["result"] = {"periodic_directions": rows}
    _emit(report)
    return EXIT_OK


def cmd_deform(args):
    report = {"command": "deform", "file": args.file, "direction": list(_parse_dir(args.dir))}
    s = _load(args, report)
    spec = DeformationSpec(
        _parse_dir(args.dir),
        tuple(int(x) for x in args.cyl.split(",")),
        shear=parse_scalar(args.shear),
        stretch=parse_scalar(args.stretch),
    )
    try:
        out = cylinder_deform(s, spec, _budget(args, s))
    except NotCertifiedError as e:
        if isinstance(e.outcome, Inconclusive):
            report["result"] = {"status": "inconclusive", "reason": e.outcome.reason}
            _emit(report)
            return EXIT_INCONCLUSIVE
        report["result"] = {"status": "not-periodic"}
        _emit(report)
        return EXIT_OK
    save_surface(out, args.output)
    report["result"] = {
        "status": "deformed",
        "cylinders": [int(x) for x in args.cyl.split(",")],
        "shear": _sc(spec.shear),
        "stretch": _sc(spec.stretch),
        "output": args.output,
    }
    _emit(report)
    return EXIT_OK


def cmd_homology(args):
    report = {"command": "homology", "file": args.file}
    s = _load(args, report)
    cx, basis = relative_basis(s)
    abs_basis, mat = intersection_form(cx)
    report["result"] = {
        "relative_rank": len(basis),
        "absolute_rank": len(abs_basis),
        "periods": [[_sc(b.period().x), _sc(b.period().y)] for b in basis],
        "intersection_matrix": [[int(v) for v in row] for row in mat],
    }
    _emit(report)
    return EXIT_OK


def cmd_portion(args):
    report = {
        "command": "portion",
        "file": args.file,
        "direction": list(_parse_dir(args.dir)),
        "against": list(_parse_dir(args.against)),
    }
    s = _load(args, report)
    budget = _budget(args, s)
    try:
        dec_a = _decompose_or_report(s, _parse_dir(args.dir), budget, report)
        dec_b = _decompose_or_report(s, _parse_dir(args.against), budget, report)
    except Inconclusion as stop:
        _emit(stop.report)
        return EXIT_INCONCLUSIVE
    indices = tuple(int(x) for x in args.set.split(",")) if args.set else ()
    value = portion(dec_a, args.cyl, dec_b, indices)
    report["result"] = {
        "cylinder": args.cyl,
        "collection": list(indices),
        "portion": _sc(value),
    }
    _emit(report)
    return EXIT_OK


def cmd_corpus(args):
    report = {"command": "corpus", "name": args.name}
    sc = corpus.SCENARIOS.get(args.name)
    if sc is None:
        report["result"] = {
            "status": "unknown-scenario",
            "known": sorted(corpus.SCENARIOS),
        }
        _emit(report)
        return EXIT_USAGE
    s = sc.build(args.seed)
    save_surface(s, args.output)
    report["result"] = {
        "status": "written",
        "output": args.output,
        "field_d": s.d,
        "polygons": len(s.polygons),
    }
    _emit(report)
    return EXIT_OK


def cmd_render(args):
    report = {"command": "render", "file": args.file, "direction": list(_parse_dir(args.dir))}
    s = _load(args, report)
    try:
        dec = _decompose_or_report(s, _parse_dir(args.dir), _budget(args, s), report)
    except Inconclusion as stop:
        _emit(stop.report)
        return EXIT_INCONCLUSIVE
    svg = render_svg(dec)
    with open(args.output, "w") as fh:
        fh.write(svg)
    report["result"] = {"status": "written", "output": args.output}
    _emit(report)
    return EXIT_OK


def render_svg(dec: Decomposition) -> str:
    """Stacked rectangle presentation with canonical boundary labels.

    Coordinates are decimal approximations; everything else in the package
    stays exact.
    """
    diag, params = canonical_presentation(dec)
    scale = 60.0
    pad = 30.0
    rows = []
    y = pad
    max_w = 0.0
    for i, (top, bottom) in enumerate(diag.cylinders):
        w = float(sum((params.lengths[x] for x in top), Scalar(0)))
        h = float(params.heights[i])
        rows.append((i, top, bottom, w, h, y))
        y += h * scale + pad
        max_w = max(max_w, w)
    width = max_w * scale + 2 * pad
    height = y
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="%.0f" height="%.0f" viewBox="0 0 %.0f %.0f">' % (width, height, width, height),
        '<style>text{font-family:sans-serif;font-size:12px;} '
        'rect{fill:#eef;stroke:#336;} line{stroke:#336;}</style>',
    ]
    for (i, top, bottom, w, h, y0) in rows:
        parts.append(
            '<rect x="%.2f" y="%.2f" width="%.2f" height="%.2f"/>'
            % (pad, y0, w * scale, h * scale)
        )
        x = 0.0
        for letter in top:
            seg = float(params.lengths[letter])
            parts.append(
                '<text x="%.2f" y="%.2f" text-anchor="middle">%d</text>'
                % (pad + (x + seg / 2) * scale, y0 - 4, letter)
            )
            x += seg
            parts.append(
                '<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f"/>'
                % (pad + x * scale, y0, pad + x * scale, y0 + 5)
            )
        x = float(params.twists[i])
        for letter in bottom:
            seg = float(params.lengths[letter])
            mid = (x + seg / 2) % w
            parts.append(
                '<text x="%.2f" y="%.2f" text-anchor="middle">%d</text>'
                % (pad + mid * scale, y0 + h * scale + 14, letter)
            )
            x += seg
        parts.append(
            '<text x="%.2f" y="%.2f">cylinder %d</text>'
            % (pad + w * scale + 6, y0 + h * scale / 2, i)
        )
    parts.append("</svg>")
    return "\n".join(parts)


def build_parser():
    parser = _Parser(prog="flatdeck", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, budget=True):
        p.add_argument("file")
        if budget:
            p.add_argument("--budget", help="trace budget in direction-frame units")

    p = sub.add_parser("validate", help="check the surface invariants")
    common(p, budget=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("info", help="stratum, genus, area, period rank")
    common(p, budget=False)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("decompose", help="cylinder decomposition in one direction")
    common(p)
    p.add_argument("--dir", required=True, metavar="P,Q")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("classify", help="match the diagram against the five models")
    common(p)
    p.add_argument("--dir", required=True, metavar="P,Q")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("scan", help="all periodic integer directions up to a slope bound")
    common(p)
    p.add_argument("--max-slope", type=int, required=True)
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("deform", help="shear/stretch selected cylinders")
    common(p)
    p.add_argument("--dir", required=True, metavar="P,Q")
    p.add_argument("--cyl", required=True, metavar="I[,J...]")
    p.add_argument("--shear", default="0")
    p.add_argument("--stretch", default="1")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("homology", help="ranks, periods and the intersection form")
    common(p, budget=False)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("portion", help="area portion of a cylinder in a transverse set")
    common(p)
    p.add_argument("--dir", required=True, metavar="P,Q")
    p.add_argument("--cyl", type=int, required=True)
    p.add_argument("--against", required=True, metavar="P,Q")
    p.add_argument("--set", default="", metavar="K[,L...]")
    p.set_defaults(func=cmd_portion)

    p = sub.add_parser("corpus", help="emit a named corpus surface")
    p.add_argument("name")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("render", help="draw the rectangle presentation as SVG")
    common(p)
    p.add_argument("--dir", required=True, metavar="P,Q")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
