"""Exact bundled crossing number for tiny instances with fixed circular order.

Drawings are enumerated by inserting the chords one by one: a new chord
walks from its first endpoint through faces of the current planarization,
crossing every chord it interleaves exactly once, and must end in the face
at its second endpoint.  Removing the last chord of a drawing recovers a
unique smaller drawing and a unique face path, so every realisable drawing
is produced exactly once.  For each drawing the crossings are partitioned by
a branch and bound over bundles that pass the single-bundle checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from bundlecross.bounds import lower_bound_fixed
from bundlecross.model import (
    BundledCrossing,
    BundlingPlan,
    CombinatorialDrawing,
    CrossingId,
    MatchingInstance,
    Planarization,
    _spans_interleave,
    bundle_violations,
    build_planarization,
    crossing_id,
    validate_bundling,
)
from bundlecross.simplify import extend_drawing, reinsert, simplify

DEFAULT_CAP = 6


class OracleCapError(ValueError):
    pass


@dataclass
class SearchStats:
    embeddings: int = 0
    partitions: int = 0


@dataclass(frozen=True)
class OracleResult:
    optimum: int
    drawing: CombinatorialDrawing
    plan: BundlingPlan
    stats: SearchStats = field(default_factory=SearchStats)


def _check_cap(inst: MatchingInstance, cap: int) -> None:
    if inst.m > cap:
        raise OracleCapError("instance too large for oracle")


def _sub_instance(inst: MatchingInstance, k: int) -> MatchingInstance:
    return MatchingInstance(
        type(inst.base)(inst.base.n, inst.base.order, inst.base.edges[:k]), inst.origin_map
    )


def _insertions(inst: MatchingInstance, seqs: list[list[CrossingId]], k: int) -> Iterator[list[list[CrossingId]]]:
    """All ways to add chord k to the drawing of chords 0..k-1."""
    sub = _sub_instance(inst, k)
    pl = Planarization(CombinatorialDrawing(sub, tuple(tuple(s) for s in seqs)))
    lo, hi = inst.span(k)
    start = pl.face_of[(("b", lo), 1)]
    target = pl.face_of[(("b", hi), 1)]
    need = {f for f in range(k) if _spans_interleave(inst.span(k), inst.span(f))}

    def walk(face: int, remaining: frozenset, path: list[tuple[int, int]]):
        if not remaining:
            if face == target:
                yield list(path)
            return
        for key, r in pl.faces[face]:
            if key[0] != "s" or key[1] not in remaining:
                continue
            _, f, j = key
            path.append((f, j))
            yield from walk(pl.face_of[(key, 1 - r)], remaining - {f}, path)
            path.pop()

    for path in walk(start, frozenset(need), []):
        new = [list(s) for s in seqs]
        for f, j in path:
            new[f].insert(j, crossing_id(f, k))
        new.append([crossing_id(k, f) for f, _ in path])
        yield new


def enumerate_embeddings(inst: MatchingInstance, cap: int = DEFAULT_CAP) -> Iterator[CombinatorialDrawing]:
    """Every realisable drawing of the matching, in lexicographic order of the
    crossing sequences."""
    _check_cap(inst, cap)
    if inst.n < 2:
        yield CombinatorialDrawing(inst, tuple(() for _ in range(inst.m)))
        return
    found: list[tuple] = []

    def grow(seqs: list[list[CrossingId]], k: int) -> None:
        if k == inst.m:
            found.append(tuple(tuple(s) for s in seqs))
            return
        for nxt in _insertions(inst, seqs, k):
            grow(nxt, k + 1)

    grow([], 0)
    for along in sorted(found):
        yield CombinatorialDrawing(inst, along)


def candidate_bundles(drawing: CombinatorialDrawing, faces: set | None = None) -> list[BundledCrossing]:
    """Every single bundle that is a full grid and passes the consecutiveness,
    order and separation checks.  Each unordered pair {E1, E2} appears once,
    with the smallest edge in E1."""
    if faces is None:
        faces = build_planarization(drawing).face_key_sets()
    crossings = drawing.crossings
    edges = sorted({e for c in crossings for e in c})
    out = []

    def assign(i: int, e1: list[int], e2: list[int]) -> None:
        if i == len(edges):
            if e1 and e2:
                b = BundledCrossing.grid(e1, e2)
                if not bundle_violations(drawing, b, faces):
                    out.append(b)
            return
        e = edges[i]
        assign(i + 1, e1, e2)
        if all(crossing_id(e, f) in crossings for f in e2):
            if e1 or not e2:
                assign(i + 1, e1 + [e], e2)
        if e1 and all(crossing_id(e, f) in crossings for f in e1):
            assign(i + 1, e1, e2 + [e])

    assign(0, [], [])
    out.sort(key=lambda b: sorted(b.member_crossings))
    return out


def _cover(
    crossings: frozenset,
    candidates: list[BundledCrossing],
    limit: int,
    stats: SearchStats,
) -> list[BundledCrossing] | None:
    """First exact cover in search order using at most ``limit`` bundles."""
    by_crossing: dict[CrossingId, list[BundledCrossing]] = {c: [] for c in crossings}
    for b in candidates:
        for c in b.member_crossings:
            by_crossing[c].append(b)
    biggest = max((len(b.member_crossings) for b in candidates), default=1)

    def search(uncovered: frozenset, chosen: list[BundledCrossing]):
        stats.partitions += 1
        if not uncovered:
            return list(chosen)
        if len(chosen) + math.ceil(len(uncovered) / biggest) > limit:
            return None
        c = min(uncovered)
        for b in by_crossing[c]:
            if b.member_crossings <= uncovered:
                chosen.append(b)
                got = search(uncovered - b.member_crossings, chosen)
                chosen.pop()
                if got is not None:
                    return got
        return None

    return search(frozenset(crossings), [])


def min_bundles(drawing: CombinatorialDrawing, stats: SearchStats | None = None) -> tuple[int, BundlingPlan]:
    """Fewest bundles for one fixed drawing, with the first optimal plan."""
    stats = stats or SearchStats()
    cands = candidate_bundles(drawing)
    for k in range(len(drawing.crossings) + 1):
        got = _cover(drawing.crossings, cands, k, stats)
        if got is not None:
            return k, BundlingPlan.from_bundles(got)
    raise AssertionError("single crossings always form bundles")


def _decide_direct(inst: MatchingInstance, k: int, cap: int, stats: SearchStats):
    for drawing in enumerate_embeddings(inst, cap):
        stats.embeddings += 1
        got = _cover(drawing.crossings, candidate_bundles(drawing), k, stats)
        if got is not None:
            return drawing, BundlingPlan.from_bundles(got)
    return None


def decide_bc(
    inst: MatchingInstance, k: int, cap: int = DEFAULT_CAP, stats: SearchStats | None = None
) -> tuple[bool, tuple[CombinatorialDrawing, BundlingPlan] | None]:
    """Is there a drawing whose crossings split into at most k bundles?

    The instance is simplified first; more than 16k surviving edges rejects at
    once.  A witness is lifted back to the input instance.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    stats = stats if stats is not None else SearchStats()
    simplified, removal = simplify(inst)
    if lower_bound_fixed(simplified.m) > k:
        return False, None
    _check_cap(simplified, cap)
    got = _decide_direct(simplified, k, cap, stats)
    if got is None:
        return False, None
    drawing, plan = got
    return True, (extend_drawing(drawing, removal), reinsert(plan, removal))


def exact_bc(
    inst: MatchingInstance,
    cap: int = DEFAULT_CAP,
    simplify_first: bool = True,
    max_k: int | None = None,
) -> OracleResult:
    """Least k for which :func:`decide_bc` succeeds, with its witness.

    With ``max_k`` set, raises ``OracleCapError`` when no k up to it works.
    """
    stats = SearchStats()
    if simplify_first:
        simplified, removal = simplify(inst)
    else:
        simplified, removal = inst, None
    _check_cap(simplified, cap)
    drawings = list(enumerate_embeddings(simplified, cap))
    stats.embeddings = len(drawings)
    cands = [candidate_bundles(d) for d in drawings]
    top = len(max((d.crossings for d in drawings), key=len, default=()))
    start = lower_bound_fixed(simplified.m) if simplify_first else 0
    for k in range(start, top + 1 if max_k is None else min(top, max_k) + 1):
        for drawing, cs in zip(drawings, cands):
            got = _cover(drawing.crossings, cs, k, stats)
            if got is not None:
                plan = BundlingPlan.from_bundles(got)
                if removal is not None:
                    drawing, plan = extend_drawing(drawing, removal), reinsert(plan, removal)
                return OracleResult(k, drawing, plan, stats)
    if max_k is not None:
        raise OracleCapError(f"no plan with at most {max_k} bundles")
    raise AssertionError("unreachable: single crossings always form bundles")


def min_partition_unrestricted(drawing: CombinatorialDrawing) -> int:
    """Fewest bundles over all set partitions of the crossings, each block
    accepted if some split of its edges makes it a valid plan.  Exponential;
    meant as an independent check of the pruned search on a few crossings."""
    crossings = sorted(drawing.crossings)
    best = len(crossings)

    def blocks_as_bundles(block: list[CrossingId]) -> list[BundledCrossing]:
        edges = sorted({e for c in block for e in c})
        out = []
        for colours in product((0, 1), repeat=len(edges)):
            e1 = [e for e, s in zip(edges, colours) if s == 0]
            e2 = [e for e, s in zip(edges, colours) if s == 1]
            b = BundledCrossing.grid(e1, e2)
            if e1 and e2 and b.member_crossings == frozenset(block):
                out.append(b)
        return out

    def partitions(items):
        if not items:
            yield []
            return
        head, rest = items[0], items[1:]
        for part in partitions(rest):
            for i in range(len(part)):
                yield part[:i] + [[head] + part[i]] + part[i + 1:]
            yield [[head]] + part

    for part in partitions(crossings):
        if len(part) >= best:
            continue
        options = [blocks_as_bundles(block) for block in part]
        if any(not o for o in options):
            continue
        for choice in product(*options):
            if validate_bundling(drawing, BundlingPlan.from_bundles(choice)).ok:
                best = len(part)
                break
    return best
