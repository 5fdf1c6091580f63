"""Constructive layouts for a fixed circular order.

Both layouts cut the circle open into a baseline with slot p at x = p.  An
edge (a, b), a < b, rises at x = a, runs at some height h and drops at x = b.
For two interleaving edges the crossing lies on a vertical piece of the
taller one, so assigning every crossing to the vertical it sits on and
grouping each vertical into one bundle always gives a valid plan.

* two-slope: the rise is replaced by a slope-1 segment; this is the same
  drawing as taking h = n - a (earlier start is taller), so only the final
  drop ever carries crossings.
* outerplanar: edges of a non-interleaving family E* are kept below every
  other edge they interleave, so their verticals stay crossing-free and each
  remaining edge owns at most two bundles.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

from bundlecross.model import (
    BundledCrossing,
    BundlingPlan,
    CircularInstance,
    CombinatorialDrawing,
    MatchingInstance,
    _spans_interleave,
    crossing_id,
    to_matching,
    validate_bundling,
)
from bundlecross.simplify import CrossingFree, RemovalLog, extend_drawing, reinsert, simplify

log = logging.getLogger(__name__)

Algorithm = Literal["two_slope", "outerplanar", "fallback"]


@dataclass(frozen=True)
class LayoutResult:
    drawing: CombinatorialDrawing
    plan: BundlingPlan
    algorithm: Algorithm = "two_slope"
    estar: tuple[int, ...] = ()

    @property
    def bundle_count(self) -> int:
        return len(self.plan.bundles)


def _orthogonal(
    inst: MatchingInstance, heights: dict[int, Fraction | int]
) -> tuple[tuple[tuple, ...], list[tuple[int, list[int], list[int]]]]:
    """Crossing sequences and per-edge (rise partners, drop partners)."""
    spans = [inst.span(i) for i in range(inst.m)]
    along = []
    runs = []
    for e, (a, b) in enumerate(spans):
        h = heights[e]
        rise, flat, drop = [], [], []
        for f, (c, d) in enumerate(spans):
            if f == e or not _spans_interleave((a, b), (c, d)):
                continue
            if heights[f] < h:
                (rise if c < a else drop).append(f)
            else:
                flat.append((c if a < c < b else d, f))
        rise.sort(key=lambda f: heights[f])
        drop.sort(key=lambda f: heights[f], reverse=True)
        flat.sort()
        seq = [f for f in rise] + [f for _, f in flat] + drop
        along.append(tuple(crossing_id(e, f) for f in seq))
        runs.append((e, rise, drop))
    return tuple(along), runs


def _plan_from_runs(runs, use_rise: bool = True) -> BundlingPlan:
    bundles = []
    for e, rise, drop in sorted(runs):
        for part in ((rise, drop) if use_rise else (drop,)):
            if part:
                bundles.append(BundledCrossing.grid([e], part))
    return BundlingPlan.from_bundles(bundles)


def _box_geometry(inst: MatchingInstance, heights) -> tuple:
    geo = []
    for e in range(inst.m):
        a, b = inst.span(e)
        h = heights[e]
        geo.append(((a, 0), (a, h), (b, h), (b, 0)))
    return tuple(geo)


def two_slope_heights(inst: MatchingInstance) -> dict[int, int]:
    return {e: inst.n - inst.span(e)[0] for e in range(inst.m)}


def two_slope_layout(inst: MatchingInstance) -> LayoutResult:
    """At most max(0, m - 1) bundles: one per edge, made of the crossings on
    its final vertical drop."""
    along, runs = _orthogonal(inst, two_slope_heights(inst))
    geometry = []
    for e in range(inst.m):
        a, b = inst.span(e)
        geometry.append(((a, 0), (b, b - a), (b, 0)))
    drawing = CombinatorialDrawing(inst, along, tuple(geometry))
    return LayoutResult(drawing, _plan_from_runs(runs, use_rise=False), "two_slope")


def greedy_outerplanar_subset(inst: MatchingInstance) -> tuple[int, ...]:
    """Scan edges by index and keep each one that interleaves none kept so far."""
    kept: list[int] = []
    for e in range(inst.m):
        if not any(_spans_interleave(inst.span(e), inst.span(f)) for f in kept):
            kept.append(e)
    return tuple(kept)


class NotOuterplanar(ValueError):
    pass


def outerplanar_heights(inst: MatchingInstance, estar: Iterable[int]) -> dict[int, int] | None:
    """Distinct heights with nested edges below their hosts and every E* edge
    below each non-E* edge it interleaves; None if no such order exists."""
    estar = set(estar)
    spans = [inst.span(i) for i in range(inst.m)]
    below: dict[int, set[int]] = {e: set() for e in range(inst.m)}
    for e, (a, b) in enumerate(spans):
        for f, (c, d) in enumerate(spans):
            if f == e:
                continue
            if a < c and d < b:
                below[e].add(f)
            elif _spans_interleave((a, b), (c, d)) and f in estar and e not in estar:
                below[e].add(f)
    pending = {e: len(fs) for e, fs in below.items()}
    above: dict[int, list[int]] = {e: [] for e in range(inst.m)}
    for e, fs in below.items():
        for f in fs:
            above[f].append(e)
    heap = [(spans[e][1] - spans[e][0], e) for e, k in pending.items() if k == 0]
    heapq.heapify(heap)
    heights: dict[int, int] = {}
    while heap:
        _, e = heapq.heappop(heap)
        heights[e] = len(heights) + 1
        for g in above[e]:
            pending[g] -= 1
            if pending[g] == 0:
                heapq.heappush(heap, (spans[g][1] - spans[g][0], g))
    return heights if len(heights) == inst.m else None


def _check_estar(inst: MatchingInstance, estar: tuple[int, ...]) -> None:
    for i, e in enumerate(estar):
        if not 0 <= e < inst.m:
            raise ValueError(f"edge index {e} out of range")
        for f in estar[i + 1:]:
            if _spans_interleave(inst.span(e), inst.span(f)):
                raise NotOuterplanar("not outerplanar for this order")


def outerplanar_layout(inst: MatchingInstance, estar: Iterable[int] | None = None) -> LayoutResult:
    """At most 2 (m - |E*|) bundles; falls back to the two-slope layout if the
    construction ever fails validation."""
    estar = greedy_outerplanar_subset(inst) if estar is None else tuple(sorted(set(estar)))
    _check_estar(inst, estar)
    heights = outerplanar_heights(inst, estar)
    if heights is not None:
        along, runs = _orthogonal(inst, heights)
        drawing = CombinatorialDrawing(inst, along, _box_geometry(inst, heights))
        result = LayoutResult(drawing, _plan_from_runs(runs), "outerplanar", estar)
        if validate_bundling(drawing, result.plan).ok:
            return result
    log.warning("outerplanar construction failed, using the two-slope layout")
    fallback = two_slope_layout(inst)
    return LayoutResult(fallback.drawing, fallback.plan, "fallback", estar)


# ---------------------------------------------------------------------------
# Full pipeline: matching expansion, simplification, layout, reinsertion
# ---------------------------------------------------------------------------


def extend_heights(heights: dict[int, Fraction], log_: RemovalLog) -> dict[int, Fraction]:
    """Heights for the logged input instance keeping every lifted edge's
    relative order and placing reinserted edges next to their partners."""
    inst = log_.original
    out = {log_.kept[e]: Fraction(h) for e, h in heights.items()}
    for rec in reversed(log_.records):
        values = sorted(out.values())
        if isinstance(rec, CrossingFree):
            a, b = inst.span(rec.edge)
            inner = [h for f, h in out.items() if a < inst.span(f)[0] and inst.span(f)[1] < b]
            outer = [h for f, h in out.items() if inst.span(f)[0] < a and b < inst.span(f)[1]]
            lo = max(inner) if inner else (values[0] - 1 if values else Fraction(0))
            hi = min(outer) if outer else (values[-1] + 1 if values else Fraction(2))
            out[rec.edge] = (lo + hi) / 2
            continue
        (p1, q1), (p2, q2) = inst.span(rec.kept), inst.span(rec.removed)
        h = out[rec.kept]
        if p1 < p2 and q2 < q1:
            lower = [v for v in values if v < h]
            out[rec.removed] = (h + (lower[-1] if lower else h - 1)) / 2
        else:
            higher = [v for v in values if v > h]
            out[rec.removed] = (h + (higher[0] if higher else h + 1)) / 2
    return out


def layout_instance(
    inst: CircularInstance | MatchingInstance,
    algorithm: Literal["two_slope", "outerplanar"] = "two_slope",
    estar: Iterable[int] | None = None,
) -> tuple[LayoutResult, MatchingInstance, RemovalLog]:
    """Lay out the simplified instance and lift drawing and plan back.

    ``estar`` (outerplanar only) indexes edges of the simplified instance;
    the greedy subset is used when omitted.
    """
    matching = inst if isinstance(inst, MatchingInstance) else to_matching(inst)
    simplified, removal = simplify(matching)
    if algorithm == "two_slope":
        inner = two_slope_layout(simplified)
        model = two_slope_layout(matching).drawing
    else:
        inner = outerplanar_layout(simplified, estar)
        if inner.algorithm == "fallback":
            model = two_slope_layout(matching).drawing
        else:
            heights = outerplanar_heights(simplified, inner.estar)
            full = extend_heights(heights, removal)
            along, _ = _orthogonal(matching, full)
            model = CombinatorialDrawing(matching, along, _box_geometry(matching, full))
    drawing = extend_drawing(inner.drawing, removal)
    if drawing.along_edge == model.along_edge:
        drawing = model
    plan = reinsert(inner.plan, removal)
    estar_full = tuple(removal.kept[e] for e in inner.estar)
    result = LayoutResult(drawing, plan, inner.algorithm, estar_full)
    if not validate_bundling(drawing, plan).ok:
        log.warning("lifted plan failed validation, using the two-slope layout")
        direct = two_slope_layout(matching)
        result = LayoutResult(direct.drawing, direct.plan, "fallback", estar_full)
    return result, simplified, removal
