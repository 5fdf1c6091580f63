from __future__ import annotations

import random

import pytest
from conftest import matchings, random_matching
from hypothesis import given
from hypothesis import strategies as st

from bundlecross.layout import two_slope_layout
from bundlecross.model import (
    BundledCrossing,
    BundlingPlan,
    MatchingInstance,
    forced_crossing_pairs,
    validate_bundling,
)
from bundlecross.simplify import (
    CrossingFree,
    LogMismatch,
    Parallel,
    RemovalLog,
    extend_drawing,
    reinsert,
    simplify,
)


def test_parallel_then_uncrossed():
    simplified, log = simplify(MatchingInstance.from_edges(4, [(0, 3), (1, 2)]))
    assert simplified.m == 0
    assert log.records == (Parallel(1, 0), CrossingFree(0))


def test_crossing_pair_unchanged():
    inst = MatchingInstance.from_edges(4, [(0, 2), (1, 3)])
    simplified, log = simplify(inst)
    assert simplified.edges == inst.edges and len(log) == 0


def test_empty():
    simplified, log = simplify(MatchingInstance.from_edges(0, []))
    assert simplified.m == 0 and len(log) == 0


def test_reinsert_identity_on_empty_log():
    inst = MatchingInstance.from_edges(4, [(0, 2), (1, 3)])
    _, log = simplify(inst)
    plan = BundlingPlan.from_bundles([BundledCrossing.grid([0], [1])])
    assert reinsert(plan, log).bundles == plan.bundles


def test_reinsert_parallel_joins_partner_side():
    # chord 2 runs next to chord 0, so it joins 0's side
    inst = MatchingInstance.from_edges(6, [(0, 4), (2, 5), (1, 3)])
    simplified, log = simplify(inst)
    assert Parallel(2, 0) in log.records
    lifted = reinsert(BundlingPlan.from_bundles([BundledCrossing.grid([0], [1])]), log)
    (b,) = lifted.bundles
    assert b.bundle1 == {0, 2} and b.bundle2 == {1}
    d = extend_drawing(two_slope_layout(simplified).drawing, log)
    assert validate_bundling(d, lifted).ok


def test_reinsert_rejects_foreign_plan():
    _, log = simplify(MatchingInstance.from_edges(4, [(0, 2), (1, 3)]))
    with pytest.raises(LogMismatch, match="log mismatch"):
        reinsert(BundlingPlan.from_bundles([BundledCrossing.grid([0], [5])]), log)


def test_scan_order_fixture():
    # two chords parallel to chord 0 on either side; either scan removes both
    inst = MatchingInstance.from_edges(10, [(1, 6), (0, 7), (2, 5), (3, 8), (4, 9)])
    results = {simplify(inst, scan).__getitem__(0).m for scan in ([0, 1, 2, 3, 4], [4, 3, 2, 1, 0])}
    assert len(results) == 1


@given(matchings(20))
def test_idempotent(inst):
    once, _ = simplify(inst)
    twice, log = simplify(once)
    assert len(log) == 0 and twice.edges == once.edges


@given(matchings(20))
def test_log_replays_and_shrinks(inst):
    simplified, log = simplify(inst)
    assert log.replay() == set(range(inst.m))
    assert simplified.m <= inst.m
    assert simplified.n == 2 * simplified.m
    lift = dict(enumerate(log.kept))
    kept_pairs = {tuple(sorted((lift[a], lift[b]))) for a, b in forced_crossing_pairs(simplified)}
    assert kept_pairs == {c for c in forced_crossing_pairs(inst) if set(c) <= set(log.kept)}


@given(matchings(20))
def test_simplified_has_no_parallel_or_free_chords(inst):
    simplified, log = simplify(inst)
    pairs = forced_crossing_pairs(simplified)
    assert all(any(e in c for c in pairs) for e in range(simplified.m))


@given(matchings(20))
def test_reinsert_preserves_count_and_validity(inst):
    simplified, log = simplify(inst)
    inner = two_slope_layout(simplified)
    lifted = reinsert(inner.plan, log)
    drawing = extend_drawing(inner.drawing, log)
    assert len(lifted.bundles) == len(inner.plan.bundles)
    assert drawing.crossings == forced_crossing_pairs(inst)
    assert validate_bundling(drawing, lifted).ok


def test_random_pipeline_many_seeds():
    rng = random.Random(11)
    for _ in range(200):
        inst = random_matching(rng, rng.randint(0, 20))
        simplified, log = simplify(inst)
        inner = two_slope_layout(simplified)
        assert validate_bundling(extend_drawing(inner.drawing, log), reinsert(inner.plan, log)).ok
