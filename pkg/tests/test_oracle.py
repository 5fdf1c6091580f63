from __future__ import annotations

import random

import pytest
from conftest import mutual, random_matching
from hypothesis import given, settings
from hypothesis import strategies as st

from bundlecross.bounds import lower_bound_fixed
from bundlecross.layout import layout_instance
from bundlecross.model import (
    CircularInstance,
    MatchingInstance,
    is_realizable,
    planarize,
    to_matching,
    validate_bundling,
)
from bundlecross.oracle import (
    OracleCapError,
    decide_bc,
    enumerate_embeddings,
    exact_bc,
    min_bundles,
    min_partition_unrestricted,
)
from bundlecross.simplify import simplify


class TestEnumerate:
    def test_two_chords(self):
        (d,) = enumerate_embeddings(MatchingInstance.from_edges(4, [(0, 2), (1, 3)]))
        assert d.along_edge == (((0, 1),), ((0, 1),))

    def test_no_crossings(self):
        (d,) = enumerate_embeddings(MatchingInstance.from_edges(4, [(0, 1), (2, 3)]))
        assert d.along_edge == ((), ())

    @pytest.mark.parametrize("m, count", [(1, 1), (2, 1), (3, 2), (4, 8), (5, 62)])
    def test_mutual_counts(self, m, count):
        # regression values from the first run of the enumerator
        drawings = list(enumerate_embeddings(mutual(m)))
        assert len(drawings) == count
        assert all(is_realizable(d) for d in drawings)
        keys = [d.along_edge for d in drawings]
        assert keys == sorted(set(keys))

    def test_cap(self):
        with pytest.raises(OracleCapError, match="instance too large for oracle"):
            list(enumerate_embeddings(mutual(7)))

    def test_brute_force_agrees(self):
        # every realizable choice of crossing orders, found by filtering all
        # permutations, is enumerated exactly once
        from itertools import permutations, product

        from bundlecross.model import CombinatorialDrawing, forced_crossing_pairs

        rng = random.Random(2)
        for _ in range(25):
            inst = random_matching(rng, 8, 4)
            pairs = forced_crossing_pairs(inst)
            per_edge = [sorted(c for c in pairs if e in c) for e in range(inst.m)]
            realizable = set()
            for choice in product(*(list(permutations(cs)) for cs in per_edge)):
                d = CombinatorialDrawing(inst, choice)
                if is_realizable(d):
                    realizable.add(d.along_edge)
            assert realizable == {d.along_edge for d in enumerate_embeddings(inst)}


class TestDecide:
    def test_two_chords(self):
        inst = MatchingInstance.from_edges(4, [(0, 2), (1, 3)])
        assert decide_bc(inst, 1)[0] and not decide_bc(inst, 0)[0]

    def test_three_chords(self, three_chords):
        assert not decide_bc(three_chords, 1)[0]
        ok, (drawing, plan) = decide_bc(three_chords, 2)
        assert ok and validate_bundling(drawing, plan).ok

    def test_negative_k(self):
        with pytest.raises(ValueError):
            decide_bc(mutual(2), -1)

    def test_density_rejects_without_search(self):
        # 17 mutually crossing chords need more than one bundle: rejected
        # before the cap is even looked at
        assert decide_bc(mutual(17), 1) == (False, None)


class TestExact:
    def test_examples(self, three_chords):
        assert exact_bc(MatchingInstance.from_edges(4, [(0, 2), (1, 3)])).optimum == 1
        assert exact_bc(three_chords).optimum == 2
        assert exact_bc(MatchingInstance.from_edges(4, [(0, 3), (1, 2)])).optimum == 0

    def test_witness_is_lifted(self):
        inst = MatchingInstance.from_edges(8, [(0, 5), (1, 4), (2, 6), (3, 7)])
        res = exact_bc(inst)
        assert res.drawing.instance == inst
        assert validate_bundling(res.drawing, res.plan).ok
        assert len(res.plan.bundles) == res.optimum

    def test_max_k(self, three_chords):
        with pytest.raises(OracleCapError):
            exact_bc(three_chords, max_k=1)
        assert exact_bc(three_chords, max_k=2).optimum == 2

    def test_pruned_search_matches_unrestricted(self):
        rng = random.Random(4)
        checked = 0
        for _ in range(60):
            inst = random_matching(rng, 8, rng.randint(2, 4))
            for d in enumerate_embeddings(inst):
                if len(d.crossings) <= 4:
                    assert min_bundles(d)[0] == min_partition_unrestricted(d)
                    checked += 1
        assert checked > 50

    def test_triangle_count_bound(self):
        # a bundle covers at most four triangular faces
        rng = random.Random(8)
        for _ in range(40):
            simplified, _ = simplify(random_matching(rng, 10, 5))
            if simplified.m < 2:
                continue
            for d in enumerate_embeddings(simplified):
                assert 4 * min_bundles(d)[0] >= planarize(d).f3


@settings(max_examples=40)
@given(st.integers(0, 10), st.randoms(use_true_random=False))
def test_sandwich_and_symmetry(n, rng):
    inst = random_matching(rng, n, min(n // 2, 4))
    res = exact_bc(inst)
    layout, simplified, _ = layout_instance(inst)
    assert lower_bound_fixed(simplified.m) <= res.optimum <= layout.bundle_count
    r = rng.randrange(max(n, 1))
    rotated = CircularInstance(n, tuple((i + r) % n for i in range(n)), inst.edges)
    mirrored = CircularInstance(n, tuple(reversed(range(n))), inst.edges)
    assert exact_bc(to_matching(rotated)).optimum == res.optimum
    assert exact_bc(to_matching(mirrored)).optimum == res.optimum
