"""Command line entry point: ``bundlecross <command> ...``.

Exit codes: 0 success, 1 validation failure, 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from bundlecross.bounds import bounds_report
from bundlecross.io import ParseError, drawing_from_json, drawing_to_json, dumps, parse_instance, parse_metro
from bundlecross.layout import layout_instance
from bundlecross.metro import (
    MetroError,
    bcm_lower_bound,
    line_orders_to_json,
    metro_oracle,
    order_lines_greedy,
    validate_line_orders,
)
from bundlecross.model import DrawingError, to_matching, validate_bundling
from bundlecross.oracle import OracleCapError, exact_bc
from bundlecross.svg import RenderError, render_svg

log = logging.getLogger("bundlecross")

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _report(inst, result, simplified, with_witness: bool) -> dict:
    report = bounds_report(inst.n, inst.edges, simplified.m, result.bundle_count).as_dict()
    report["bundles"] = result.bundle_count
    report["algorithm"] = result.algorithm
    if with_witness:
        report["witness"] = drawing_to_json(result.drawing, result.plan)
    return report


def cmd_layout(args) -> int:
    inst = parse_instance(_read(args.file))
    algorithm = "outerplanar" if args.outerplanar == "greedy" else "two_slope"
    result, simplified, _ = layout_instance(inst, algorithm)
    if result.algorithm == "fallback":
        log.warning("layout fell back to the two-slope construction")
    _emit(dumps(_report(inst, result, simplified, True)), args.json)
    if args.svg:
        Path(args.svg).write_text(render_svg(result.drawing, result.plan, _mode(result.drawing, args.mode)))
    return EXIT_OK


def _mode(drawing, mode: str) -> str:
    if mode == "rectangle" and drawing.geometry is None:
        log.warning("drawing has no construction coordinates, rendering in disk mode")
        return "disk"
    return mode


def cmd_bounds(args) -> int:
    inst = parse_instance(_read(args.file))
    result, simplified, _ = layout_instance(inst, "two_slope")
    _emit(dumps(_report(inst, result, simplified, False)), args.json)
    return EXIT_OK


def cmd_exact(args) -> int:
    inst = parse_instance(_read(args.file))
    try:
        res = exact_bc(to_matching(inst), cap=args.max_edges, max_k=args.max_k)
    except OracleCapError as exc:
        raise UsageError(str(exc)) from None
    doc = {
        "optimum": res.optimum,
        "embeddings": res.stats.embeddings,
        "partitions": res.stats.partitions,
        "witness": drawing_to_json(res.drawing, res.plan),
    }
    _emit(dumps(doc), args.json)
    return EXIT_OK


def _load_drawing(path: str):
    try:
        return drawing_from_json(json.loads(_read(path)))
    except (json.JSONDecodeError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_validate(args) -> int:
    drawing, plan = _load_drawing(args.drawing)
    try:
        report = validate_bundling(drawing, plan)
    except DrawingError as exc:
        print(f"invalid: {exc}")
        return EXIT_INVALID
    if report.ok:
        print(f"ok: {len(plan.bundles)} bundles")
        return EXIT_OK
    for v in report.violations:
        print(f"violation: {v}")
    return EXIT_INVALID


def cmd_render(args) -> int:
    drawing, plan = _load_drawing(args.drawing)
    Path(args.svg).write_text(render_svg(drawing, plan, _mode(drawing, args.mode)))
    return EXIT_OK


def cmd_metro(args) -> int:
    mi = parse_metro(_read(args.file))
    try:
        orders = order_lines_greedy(mi)
    except MetroError as exc:
        print(f"invalid: {exc}")
        return EXIT_INVALID
    doc = line_orders_to_json(orders)
    doc["crossings"] = orders.crossings
    doc["lower_bound"] = bcm_lower_bound(mi)
    doc["valid"] = validate_line_orders(mi, orders).ok
    if args.oracle:
        try:
            doc["optimum"] = metro_oracle(mi)
        except MetroError as exc:
            raise UsageError(str(exc)) from None
    _emit(dumps(doc), args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bundlecross", description="Bundled crossings for circular layouts.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("layout", help="lay out an instance and report its bundles")
    p.add_argument("file")
    p.add_argument("--outerplanar", choices=("greedy", "none"), default="none")
    p.add_argument("--svg")
    p.add_argument("--json")
    p.add_argument("--mode", choices=("rectangle", "disk"), default="rectangle")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("bounds", help="lower bounds and certificates")
    p.add_argument("file")
    p.add_argument("--json")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("exact", help="exact optimum for tiny instances")
    p.add_argument("file")
    p.add_argument("--max-edges", type=int, default=6)
    p.add_argument("--max-k", type=int)
    p.add_argument("--json")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("validate", help="check a drawing and its bundles")
    p.add_argument("drawing")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("metro", help="block-crossing orders for metro lines on a tree")
    p.add_argument("file")
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--json")
    p.set_defaults(func=cmd_metro)

    p = sub.add_parser("render", help="draw a drawing document as SVG")
    p.add_argument("drawing")
    p.add_argument("--svg", required=True)
    p.add_argument("--mode", choices=("rectangle", "disk"), default="rectangle")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (ParseError, UsageError, RenderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
