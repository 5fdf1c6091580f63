"""Removal of parallel and uncrossed chords, and their reinsertion."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from bundlecross.model import (
    BundledCrossing,
    BundlingPlan,
    CircularInstance,
    CombinatorialDrawing,
    CrossingId,
    MatchingInstance,
    _spans_interleave,
    crossing_id,
)


@dataclass(frozen=True)
class CrossingFree:
    edge: int


@dataclass(frozen=True)
class Parallel:
    removed: int
    kept: int


@dataclass(frozen=True)
class RemovalLog:
    """Removal records in removal order, indices refer to the input instance.

    ``kept`` maps each edge index of the simplified instance to its input index
    and ``slots`` maps each simplified vertex to its input vertex.
    """

    original: MatchingInstance
    records: tuple[CrossingFree | Parallel, ...] = ()
    kept: tuple[int, ...] = ()
    slots: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def replay(self) -> set[int]:
        """Edge indices present after undoing every removal."""
        present = set(self.kept)
        for rec in reversed(self.records):
            present.add(rec.edge if isinstance(rec, CrossingFree) else rec.removed)
        return present


def _is_parallel(spans: dict[int, tuple[int, int]], a: int, b: int, ring: Sequence[int]) -> bool:
    """Non-interleaving chords whose endpoints are pairwise circular
    neighbours in the residual ring of endpoint positions."""
    if _spans_interleave(spans[a], spans[b]):
        return False
    where = {p: i for i, p in enumerate(ring)}
    k = len(ring)

    def adjacent(p: int, q: int) -> bool:
        d = (where[p] - where[q]) % k
        return d == 1 or d == k - 1

    (p1, q1), (p2, q2) = spans[a], spans[b]
    return (adjacent(p1, p2) and adjacent(q1, q2)) or (adjacent(p1, q2) and adjacent(q1, p2))


def simplify(
    inst: MatchingInstance, scan: Sequence[int] | None = None
) -> tuple[MatchingInstance, RemovalLog]:
    """Remove parallel chords, then uncrossed chords, until neither applies.

    Each round removes the later member of the first parallel pair found,
    scanning pairs in ``scan`` order (ascending indices by default); if there
    is none, the first chord that interleaves no other one.  Adjacency is
    judged on the endpoints of chords still present.  Unused slots are
    dropped from the result.
    """
    scan = list(range(inst.m)) if scan is None else list(scan)
    spans = {i: inst.span(i) for i in range(inst.m)}
    present = list(scan)
    records: list[CrossingFree | Parallel] = []
    while present:
        ring = sorted(p for i in present for p in spans[i])
        removed = None
        for x in range(len(present)):
            for y in range(x + 1, len(present)):
                a, b = present[x], present[y]
                if _is_parallel(spans, a, b, ring):
                    removed = Parallel(b, a)
                    break
            if removed:
                break
        if removed is None:
            for a in present:
                if not any(_spans_interleave(spans[a], spans[b]) for b in present if b != a):
                    removed = CrossingFree(a)
                    break
        if removed is None:
            break
        records.append(removed)
        present.remove(removed.edge if isinstance(removed, CrossingFree) else removed.removed)

    kept = tuple(sorted(present))
    base = inst.base
    used = sorted(p for i in kept for p in spans[i])
    new_pos = {p: k for k, p in enumerate(used)}
    slots = tuple(base.order[p] for p in used)
    edges = tuple((new_pos[spans[i][0]], new_pos[spans[i][1]]) for i in kept)
    new_base = CircularInstance(len(used), tuple(range(len(used))), edges)
    simplified = MatchingInstance(new_base, tuple(inst.origin_map[v] for v in slots))
    return simplified, RemovalLog(inst, tuple(records), kept, slots)


class LogMismatch(ValueError):
    pass


def reinsert(plan: BundlingPlan, log: RemovalLog) -> BundlingPlan:
    """Lift a plan for the simplified instance to the logged input instance.

    A parallel chord joins every bundle of its kept partner on the partner's
    side; uncrossed chords join nothing.  The bundle count is unchanged.
    """
    m_simplified = len(log.kept)
    for b in plan.bundles:
        if any(e >= m_simplified or e < 0 for e in b.bundle1 | b.bundle2):
            raise LogMismatch("log mismatch")
    lift = dict(enumerate(log.kept))
    sides = [
        [{lift[e] for e in b.bundle1}, {lift[e] for e in b.bundle2}]
        for b in plan.bundles
    ]
    for rec in reversed(log.records):
        if isinstance(rec, CrossingFree):
            continue
        for s1, s2 in sides:
            if rec.kept in s1:
                s1.add(rec.removed)
            elif rec.kept in s2:
                s2.add(rec.removed)
    return BundlingPlan.from_bundles(BundledCrossing.grid(s1, s2) for s1, s2 in sides)


def extend_drawing(drawing: CombinatorialDrawing, log: RemovalLog) -> CombinatorialDrawing:
    """Lift a drawing of the simplified instance to the logged input instance.

    Parallel chords are routed right next to their partner and uncrossed
    chords stay uncrossed.  Geometry is not carried over.
    """
    if drawing.instance.m != len(log.kept):
        raise LogMismatch("log mismatch")
    inst = log.original
    lift = dict(enumerate(log.kept))
    seqs: dict[int, list[CrossingId]] = {
        lift[e]: [crossing_id(lift[a], lift[b]) for a, b in seq]
        for e, seq in enumerate(drawing.along_edge)
    }
    present = set(log.kept)
    for rec in reversed(log.records):
        if isinstance(rec, CrossingFree):
            seqs[rec.edge] = []
            present.add(rec.edge)
            continue
        kept, new = rec.kept, rec.removed
        p1, q1 = inst.span(kept)
        p2, q2 = inst.span(new)
        ring = sorted(p for i in present | {new} for p in inst.span(i))
        # which arc of the kept chord holds the new chord
        inside = p1 < p2 < q1
        partners = [c[0] if c[1] == kept else c[1] for c in seqs[kept]]
        for f in partners:
            pf, _ = inst.span(f)
            f_starts_inside = p1 < pf < q1
            seq = seqs[f]
            k = seq.index(crossing_id(f, kept))
            new_first = f_starts_inside == inside
            seq.insert(k if new_first else k + 1, crossing_id(f, new))
        same_direction = _same_direction(ring, (p1, q1), (p2, q2))
        order = partners if same_direction else partners[::-1]
        seqs[new] = [crossing_id(new, f) for f in order]
        present.add(new)
    along = tuple(tuple(seqs[e]) for e in range(inst.m))
    return CombinatorialDrawing(inst, along)


def _same_direction(ring: list[int], kept: tuple[int, int], new: tuple[int, int]) -> bool:
    """True iff the low endpoints of two parallel chords are ring neighbours."""
    where = {p: i for i, p in enumerate(ring)}
    d = (where[kept[0]] - where[new[0]]) % len(ring)
    return d in (1, len(ring) - 1)
