"""Bundled crossings in circular layouts: layouts, bounds, an exact oracle
for tiny instances, and block crossings of metro lines on trees."""

from bundlecross.model import (
    BundledCrossing,
    BundlingPlan,
    CircularInstance,
    CombinatorialDrawing,
    DrawingError,
    FaceCensus,
    MatchingInstance,
    forced_crossing_pairs,
    interleaves,
    planarize,
    to_matching,
    validate_bundling,
)

__all__ = [
    "BundledCrossing",
    "BundlingPlan",
    "CircularInstance",
    "CombinatorialDrawing",
    "DrawingError",
    "FaceCensus",
    "MatchingInstance",
    "forced_crossing_pairs",
    "interleaves",
    "planarize",
    "to_matching",
    "validate_bundling",
]
