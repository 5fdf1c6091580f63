from __future__ import annotations

import random

import pytest
from conftest import circular_instances, matchings, mutual, random_matching
from hypothesis import given

from bundlecross.geometry import crossing_points, segment_intersection
from bundlecross.layout import (
    NotOuterplanar,
    greedy_outerplanar_subset,
    layout_instance,
    outerplanar_layout,
    two_slope_layout,
)
from bundlecross.model import (
    BundledCrossing,
    CircularInstance,
    MatchingInstance,
    forced_crossing_pairs,
    to_matching,
    validate_bundling,
)
from bundlecross.bounds import lower_bound_fixed
from bundlecross.simplify import simplify


def test_two_slope_three_chords():
    r = two_slope_layout(mutual(3))
    assert r.plan.bundles == (BundledCrossing.grid([0], [1, 2]), BundledCrossing.grid([1], [2]))


def test_two_slope_no_crossings():
    r = two_slope_layout(MatchingInstance.from_edges(4, [(0, 1), (2, 3)]))
    assert r.bundle_count == 0 and not r.drawing.crossings


def test_two_slope_tight_example():
    r = two_slope_layout(mutual(5))
    assert r.bundle_count == 4
    assert validate_bundling(r.drawing, r.plan).ok


def test_two_slope_geometry():
    r = two_slope_layout(MatchingInstance.from_edges(6, [(0, 3), (1, 4)]))
    assert r.drawing.geometry[0] == ((0, 0), (3, 3), (3, 0))
    assert crossing_points(r.drawing) == {(0, 1): (3, 2)}


@given(matchings(16))
def test_two_slope_crossings_are_slant_vertical(inst):
    r = two_slope_layout(inst)
    where = crossing_points(r.drawing)
    assert set(where) == forced_crossing_pairs(inst)
    for (a, b), (x, _) in where.items():
        # every crossing sits on the drop of one of its two edges
        assert x in (inst.span(a)[1], inst.span(b)[1])
    for e, line in enumerate(r.drawing.geometry):
        for f, other in enumerate(r.drawing.geometry):
            if e < f:
                # slants are parallel, drops stand at distinct x
                assert segment_intersection(line[0], line[1], other[0], other[1]) is None
                assert segment_intersection(line[1], line[2], other[1], other[2]) is None


@given(matchings(24))
def test_two_slope_bound(inst):
    r = two_slope_layout(inst)
    assert r.bundle_count <= max(0, inst.m - 1)


@given(matchings(20))
def test_sixteen_certificate_on_simplified(inst):
    simplified, _ = simplify(inst)
    count = two_slope_layout(simplified).bundle_count
    assert count <= 16 * lower_bound_fixed(simplified.m)


class TestOuterplanar:
    def test_all_edges_in_estar(self):
        inst = MatchingInstance.from_edges(6, [(0, 5), (1, 2), (3, 4)])
        r = outerplanar_layout(inst, estar=[0, 1, 2])
        assert r.bundle_count == 0 and r.algorithm == "outerplanar"

    def test_entry_and_exit_bundles(self):
        inst = MatchingInstance.from_edges(8, [(0, 3), (4, 7), (2, 5)])
        r = outerplanar_layout(inst, estar=[0, 1])
        assert r.bundle_count <= 2
        assert validate_bundling(r.drawing, r.plan).ok
        assert set(r.plan.bundles) == {BundledCrossing.grid([2], [0]), BundledCrossing.grid([2], [1])}

    def test_empty_estar(self):
        inst = mutual(4)
        r = outerplanar_layout(inst, estar=[])
        assert r.bundle_count <= 2 * inst.m
        assert validate_bundling(r.drawing, r.plan).ok

    def test_rejects_interleaving_estar(self):
        with pytest.raises(NotOuterplanar, match="not outerplanar"):
            outerplanar_layout(mutual(2), estar=[0, 1])

    def test_greedy_subset_examples(self):
        assert len(greedy_outerplanar_subset(mutual(3))) == 1
        inst = MatchingInstance.from_edges(6, [(0, 5), (1, 2), (3, 4)])
        assert greedy_outerplanar_subset(inst) == (0, 1, 2)
        shared = to_matching(CircularInstance.from_edges(8, [(0, 3), (1, 2), (4, 7), (2, 5)]))
        assert greedy_outerplanar_subset(shared) == (0, 1, 2)

    @given(matchings(20))
    def test_bound_and_validity(self, inst):
        r = outerplanar_layout(inst)
        assert validate_bundling(r.drawing, r.plan).ok
        if r.algorithm == "fallback":
            assert r.bundle_count <= max(0, inst.m - 1)
        else:
            assert r.bundle_count <= 2 * (inst.m - len(r.estar))


@given(circular_instances(9))
def test_pipeline_on_general_graphs(inst):
    for algorithm in ("two_slope", "outerplanar"):
        r, simplified, log = layout_instance(inst, algorithm)
        assert validate_bundling(r.drawing, r.plan).ok
        assert r.drawing.crossings == forced_crossing_pairs(to_matching(inst))
        assert r.algorithm != "fallback"


def test_pipeline_geometry_matches_when_present():
    rng = random.Random(5)
    with_geometry = 0
    for _ in range(150):
        inst = random_matching(rng, rng.randint(2, 16))
        r, _, _ = layout_instance(inst, rng.choice(["two_slope", "outerplanar"]))
        if r.drawing.geometry is not None:
            with_geometry += 1
            assert set(crossing_points(r.drawing)) == r.drawing.crossings
    assert with_geometry > 100
