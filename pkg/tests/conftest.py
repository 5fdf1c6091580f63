from __future__ import annotations

import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bundlecross.metro import MetroInstance
from bundlecross.model import CircularInstance, MatchingInstance

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_matching(rng: random.Random, n: int, m: int | None = None) -> MatchingInstance:
    slots = list(range(n))
    rng.shuffle(slots)
    m = rng.randint(0, n // 2) if m is None else m
    return MatchingInstance.from_edges(n, [(slots[2 * i], slots[2 * i + 1]) for i in range(m)])


@st.composite
def matchings(draw, max_n: int = 24, min_m: int = 0) -> MatchingInstance:
    n = draw(st.integers(2 * min_m, max_n))
    slots = draw(st.permutations(range(n)))
    m = draw(st.integers(min_m, n // 2))
    return MatchingInstance.from_edges(n, [(slots[2 * i], slots[2 * i + 1]) for i in range(m)])


@st.composite
def circular_instances(draw, max_n: int = 9) -> CircularInstance:
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    order = draw(st.permutations(range(n)))
    return CircularInstance(n, tuple(order), tuple(edges))


def all_matchings_up_to_rotation(max_n: int, max_m: int):
    """Every matching with at most max_m chords on n <= max_n slots, one per
    rotation class."""
    def pairings(items):
        if not items:
            yield []
            return
        a = items[0]
        for i in range(1, len(items)):
            rest = items[1:i] + items[i + 1:]
            for p in pairings(rest):
                yield [(a, items[i])] + p

    from itertools import combinations

    for n in range(0, max_n + 1):
        seen = set()
        for m in range(0, min(max_m, n // 2) + 1):
            for used in combinations(range(n), 2 * m):
                for p in pairings(list(used)):
                    key = min(
                        tuple(sorted(tuple(sorted(((u + r) % n, (v + r) % n))) for u, v in p))
                        for r in range(max(n, 1))
                    )
                    if key not in seen:
                        seen.add(key)
                        yield MatchingInstance.from_edges(n, key)


def mutual(m: int) -> MatchingInstance:
    """m pairwise interleaving chords (i, i + m)."""
    return MatchingInstance.from_edges(2 * m, [(i, i + m) for i in range(m)])


@pytest.fixture
def three_chords() -> MatchingInstance:
    return mutual(3)


def two_line_metro() -> MetroInstance:
    """Edge 0-1 with leaves 2, 3 at 0 and 4, 5 at 1; lines 2-4 and 3-5."""
    return MetroInstance(6, ((0, 1), (0, 2), (0, 3), (1, 4), (1, 5)), ((2, 4), (3, 5)))


def caterpillar_metro(k: int) -> MetroInstance:
    """k lines across one central edge, pairwise forced to cross."""
    left = [(0, 2 + i) for i in range(k)]
    right = [(1, 2 + k + i) for i in range(k)]
    return MetroInstance(2 + 2 * k, ((0, 1), *left, *right), tuple((2 + i, 2 + k + i) for i in range(k)))
