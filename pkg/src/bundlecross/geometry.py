"""Coordinates for drawings: polyline intersections, hulls, and a barycentric
fallback for drawings that come without construction coordinates.

All geometry lives in baseline coordinates: slot p sits at (p, 0) and the
drawing extends upwards.  The disk picture is obtained by the map in
``to_disk``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from bundlecross.model import CombinatorialDrawing, CrossingId, build_planarization

Point = tuple


def segment_intersection(p1, p2, q1, q2):
    """Exact intersection point of two closed segments, or None.  Collinear
    overlaps return None; layouts never produce them."""
    (x1, y1), (x2, y2), (x3, y3), (x4, y4) = (
        tuple(Fraction(c) for c in pt) for pt in (p1, p2, q1, q2)
    )
    den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
    if den == 0:
        return None
    t = ((x1 - x3) * (y3 - y4) - (y1 - y3) * (x3 - x4)) / den
    u = ((x1 - x3) * (y1 - y2) - (y1 - y3) * (x1 - x2)) / den
    if 0 <= t <= 1 and 0 <= u <= 1:
        return (x1 + t * (x2 - x1), y1 + t * (y2 - y1))
    return None


def polyline_crossing(a: Sequence[Point], b: Sequence[Point]):
    """First interior intersection of two polylines (endpoints excluded)."""
    ends = {tuple(Fraction(c) for c in a[0]), tuple(Fraction(c) for c in a[-1]),
            tuple(Fraction(c) for c in b[0]), tuple(Fraction(c) for c in b[-1])}
    for i in range(len(a) - 1):
        for j in range(len(b) - 1):
            pt = segment_intersection(a[i], a[i + 1], b[j], b[j + 1])
            if pt is not None and pt not in ends:
                return pt
    return None


def crossing_points(drawing: CombinatorialDrawing) -> dict[CrossingId, Point]:
    if drawing.geometry is None:
        raise ValueError("drawing has no geometry")
    out = {}
    for c in sorted(drawing.crossings):
        pt = polyline_crossing(drawing.geometry[c[0]], drawing.geometry[c[1]])
        if pt is None:
            raise ValueError(f"geometry does not realise crossing {c}")
        out[c] = pt
    return out


def convex_hull(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def height_of(geometry) -> Fraction:
    return max((Fraction(y) for line in geometry for _, y in line), default=Fraction(0))


def to_disk(point, n: int, top) -> tuple[float, float]:
    """Baseline coordinates to the unit disk: x becomes the angle, height
    shrinks the radius.  ``top`` is the largest height in the drawing."""
    x, y = float(point[0]), float(point[1])
    theta = 2 * math.pi * x / max(n, 1) - math.pi / 2
    r = 1 - 0.9 * y / (float(top) + 1)
    return r * math.cos(theta), -r * math.sin(theta)


def barycentric_disk(drawing: CombinatorialDrawing):
    """Disk coordinates for any realisable drawing: slots fixed on the unit
    circle and every crossing at the mean of its four neighbours.

    Returns (slot points, crossing points, per-edge polylines).
    """
    pl = build_planarization(drawing)
    inst = drawing.instance.base
    n = max(inst.n, 1)
    slot = {p: to_disk((p, 0), n, 0) for p in range(inst.n)}
    crossings = sorted(drawing.crossings)
    index = {c: i for i, c in enumerate(crossings)}
    k = len(crossings)
    coords = np.zeros((k, 2))
    if k:
        mat = 4.0 * np.eye(k)
        rhs = np.zeros((k, 2))
        for c in crossings:
            i = index[c]
            for dart in pl.rot[("x", c)]:
                kind, ref = pl.head(dart)
                if kind == "x":
                    mat[i, index[ref]] -= 1.0
                else:
                    rhs[i] += slot[ref]
        coords = np.linalg.solve(mat, rhs)
    points = {c: (float(coords[index[c]][0]), float(coords[index[c]][1])) for c in crossings}
    lines = []
    for e, seq in enumerate(drawing.along_edge):
        a, b = inst.span(e)
        lines.append([slot[a]] + [points[c] for c in seq] + [slot[b]])
    return slot, points, lines
