"""Deterministic SVG output for drawings and their bundles."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Literal
from xml.sax.saxutils import escape

from bundlecross.geometry import barycentric_disk, convex_hull, crossing_points, height_of, to_disk
from bundlecross.model import BundlingPlan, CombinatorialDrawing

UNIT = 40
MARGIN = 40
PAD = Fraction(1, 6)  # crossing padding in slot units, keeps single-point hulls visible
PALETTE = ("#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999")

Mode = Literal["rectangle", "disk"]


class RenderError(ValueError):
    pass


def _num(x) -> str:
    s = f"{float(x):.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _points(pts) -> str:
    return " ".join(f"{_num(x)},{_num(y)}" for x, y in pts)


def _padded_hull(points, pad) -> list:
    corners = [(x + dx, y + dy) for x, y in points for dx in (-pad, pad) for dy in (-pad, pad)]
    return convex_hull(corners)


def _labels(drawing: CombinatorialDrawing) -> list[str]:
    inst = drawing.instance
    return [str(inst.origin_map[v]) for v in inst.base.order]


def _document(width, height, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">'
    )
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *body, "</svg>"]) + "\n"


def _bundle_points(drawing: CombinatorialDrawing, plan: BundlingPlan, where) -> list[list]:
    return [[where[c] for c in sorted(b.member_crossings)] for b in plan.bundles]


def render_rectangle(drawing: CombinatorialDrawing, plan: BundlingPlan) -> str:
    """The construction's own picture: slots on a baseline, edges upwards."""
    if drawing.geometry is None:
        raise RenderError("drawing has no geometry")
    n = drawing.instance.n
    top = height_of(drawing.geometry)
    width = UNIT * max(n - 1, 0) + 2 * MARGIN
    height = UNIT * top + 2 * MARGIN

    def tx(p):
        return MARGIN + UNIT * Fraction(p[0]), MARGIN + UNIT * (top - Fraction(p[1]))

    where = crossing_points(drawing)
    body = []
    for k, pts in enumerate(_bundle_points(drawing, plan, where)):
        hull = [tx(p) for p in _padded_hull(pts, PAD)]
        body.append(
            f'<polygon class="bundle" points="{_points(hull)}" fill="{PALETTE[k % len(PALETTE)]}" '
            'fill-opacity="0.35" stroke="none"/>'
        )
    for e, line in enumerate(drawing.geometry):
        body.append(
            f'<polyline class="edge" data-edge="{e}" points="{_points(tx(p) for p in line)}" '
            'fill="none" stroke="black" stroke-width="1.5"/>'
        )
    for p, label in enumerate(_labels(drawing)):
        x, y = tx((p, 0))
        body.append(f'<circle class="vertex" cx="{_num(x)}" cy="{_num(y)}" r="4" fill="black"/>')
        body.append(
            f'<text x="{_num(x)}" y="{_num(y + 18)}" font-size="12" text-anchor="middle">{escape(label)}</text>'
        )
    return _document(width, height, body)


def _subdivide(line, pieces: int = 8):
    out = [line[0]]
    for a, b in zip(line, line[1:]):
        for t in range(1, pieces + 1):
            s = Fraction(t, pieces)
            out.append((Fraction(a[0]) + s * (Fraction(b[0]) - Fraction(a[0])),
                        Fraction(a[1]) + s * (Fraction(b[1]) - Fraction(a[1]))))
    return out


def render_disk(drawing: CombinatorialDrawing, plan: BundlingPlan) -> str:
    """Slots on a circle.  Construction coordinates are bent onto the disk;
    drawings without them get a barycentric embedding with straight pieces."""
    n = drawing.instance.n
    radius = max(UNIT * n / (2 * math.pi), 2 * UNIT)
    size = 2 * (radius + MARGIN)

    def tx(p):
        return size / 2 + radius * p[0], size / 2 + radius * p[1]

    if drawing.geometry is not None:
        top = height_of(drawing.geometry)
        where = {c: to_disk(p, n, top) for c, p in crossing_points(drawing).items()}
        lines = [[to_disk(p, n, top) for p in _subdivide(line)] for line in drawing.geometry]
    else:
        _, where, lines = barycentric_disk(drawing)
    pad = PAD * 2 * math.pi / max(n, 3)
    body = [
        f'<circle class="boundary" cx="{_num(size / 2)}" cy="{_num(size / 2)}" r="{_num(radius)}" '
        'fill="none" stroke="#cccccc"/>'
    ]
    for k, pts in enumerate(_bundle_points(drawing, plan, where)):
        hull = [tx(p) for p in _padded_hull(pts, float(pad))]
        body.append(
            f'<polygon class="bundle" points="{_points(hull)}" fill="{PALETTE[k % len(PALETTE)]}" '
            'fill-opacity="0.35" stroke="none"/>'
        )
    for e, line in enumerate(lines):
        body.append(
            f'<polyline class="edge" data-edge="{e}" points="{_points(tx(p) for p in line)}" '
            'fill="none" stroke="black" stroke-width="1.5"/>'
        )
    for p, label in enumerate(_labels(drawing)):
        x, y = tx(to_disk((p, 0), n, 0))
        lx, ly = tx(tuple(1.12 * c for c in to_disk((p, 0), n, 0)))
        body.append(f'<circle class="vertex" cx="{_num(x)}" cy="{_num(y)}" r="4" fill="black"/>')
        body.append(
            f'<text x="{_num(lx)}" y="{_num(ly + 4)}" font-size="12" text-anchor="middle">{escape(label)}</text>'
        )
    return _document(size, size, body)


def render_svg(drawing: CombinatorialDrawing, plan: BundlingPlan, mode: Mode = "rectangle") -> str:
    if mode == "rectangle":
        return render_rectangle(drawing, plan)
    if mode == "disk":
        return render_disk(drawing, plan)
    raise RenderError(f"unknown mode {mode!r}")
