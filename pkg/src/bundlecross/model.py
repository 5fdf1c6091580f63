"""Instances, drawings, bundling plans, planarization and the bundle validator.

Vertices sit on a circle in a fixed order; an edge is a chord.  A drawing is
purely combinatorial: for every chord the ordered list of crossings met when
walking from its endpoint with the smaller circular position to the other one.
Crossing ids are sorted pairs of edge indices.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

Edge = tuple[int, int]
CrossingId = tuple[int, int]


class DrawingError(ValueError):
    """The crossing sequences do not describe a simple drawing inside a disk."""


class UnknownCrossingError(ValueError):
    pass


def crossing_id(a: int, b: int) -> CrossingId:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class CircularInstance:
    n: int
    order: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(int(v) for v in self.order))
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        if self.n < 0:
            raise ValueError("negative vertex count")
        if sorted(self.order) != list(range(self.n)):
            raise ValueError("order is not a permutation")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"vertex out of range in edge ({u}, {v})")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            key = frozenset((u, v))
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], order: Sequence[int] | None = None):
        return cls(n, tuple(range(n)) if order is None else tuple(order), tuple(tuple(e) for e in edges))

    @cached_property
    def pos(self) -> dict[int, int]:
        return {v: p for p, v in enumerate(self.order)}

    @property
    def m(self) -> int:
        return len(self.edges)

    def span(self, index: int) -> tuple[int, int]:
        """Circular positions of edge ``index``, smaller first."""
        u, v = self.edges[index]
        a, b = self.pos[u], self.pos[v]
        return (a, b) if a < b else (b, a)

    def is_matching(self) -> bool:
        deg = Counter(v for e in self.edges for v in e)
        return all(c <= 1 for c in deg.values())


@dataclass(frozen=True)
class MatchingInstance:
    base: CircularInstance
    origin_map: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.base.is_matching():
            raise ValueError("instance is not a matching")
        if len(self.origin_map) != self.base.n:
            raise ValueError("origin_map must cover every slot")
        # slots of one original vertex must be consecutive around the circle
        runs = [self.origin_map[v] for v in self.base.order]
        breaks = sum(1 for i in range(len(runs)) if runs[i] != runs[i - 1])
        if len(set(runs)) > 1 and breaks != len(set(runs)):
            raise ValueError("slots of an original vertex are not consecutive")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], order: Sequence[int] | None = None):
        return cls.of(CircularInstance.from_edges(n, edges, order))

    @classmethod
    def of(cls, base: CircularInstance) -> "MatchingInstance":
        return cls(base, tuple(range(base.n)))

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.base.edges

    def span(self, index: int) -> tuple[int, int]:
        return self.base.span(index)


def interleaves(e1: Edge, e2: Edge, inst: CircularInstance) -> bool:
    """True iff the endpoints of the two chords alternate around the circle."""
    if set(e1) & set(e2):
        raise ValueError("adjacent edges")
    pos = inst.pos
    a, b = sorted((pos[e1[0]], pos[e1[1]]))
    c, d = sorted((pos[e2[0]], pos[e2[1]]))
    return (a < c < b) != (a < d < b)


def _spans_interleave(s: tuple[int, int], t: tuple[int, int]) -> bool:
    a, b = s
    c, d = t
    return (a < c < b) != (a < d < b)


def forced_crossing_pairs(inst: MatchingInstance | CircularInstance) -> set[CrossingId]:
    base = inst.base if isinstance(inst, MatchingInstance) else inst
    spans = [base.span(i) for i in range(base.m)]
    return {
        (i, j)
        for i, j in combinations(range(len(spans)), 2)
        if _spans_interleave(spans[i], spans[j])
    }


def to_matching(inst: CircularInstance) -> MatchingInstance:
    """Split every vertex of degree d into d consecutive slots.

    Edges leaving a vertex are attached as a fan so that no two of them
    interleave: the first slot takes the edge whose other endpoint is farthest
    ahead in circular order.
    """
    if inst.is_matching():
        return MatchingInstance.of(inst)
    n = inst.n
    pos = inst.pos
    incident: dict[int, list[int]] = {v: [] for v in range(n)}
    for idx, (u, v) in enumerate(inst.edges):
        incident[u].append(idx)
        incident[v].append(idx)
    slot_of: dict[tuple[int, int], int] = {}
    origin: list[int] = []
    for v in inst.order:
        p = pos[v]

        def other(idx: int, v=v) -> int:
            a, b = inst.edges[idx]
            return b if a == v else a

        fan = sorted(incident[v], key=lambda idx: (-((pos[other(idx)] - p) % n), idx))
        for idx in fan:
            slot_of[(v, idx)] = len(origin)
            origin.append(v)
    edges = tuple((slot_of[(u, i)], slot_of[(v, i)]) for i, (u, v) in enumerate(inst.edges))
    base = CircularInstance(len(origin), tuple(range(len(origin))), edges)
    return MatchingInstance(base, tuple(origin))


@dataclass(frozen=True)
class CombinatorialDrawing:
    instance: MatchingInstance
    along_edge: tuple[tuple[CrossingId, ...], ...]
    geometry: tuple[tuple[tuple, ...], ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "along_edge",
            tuple(tuple(crossing_id(*c) for c in seq) for seq in self.along_edge),
        )
        if len(self.along_edge) != self.instance.m:
            raise DrawingError("one crossing sequence per edge required")

    @cached_property
    def crossings(self) -> frozenset[CrossingId]:
        return frozenset(c for seq in self.along_edge for c in seq)

    @cached_property
    def index_in_edge(self) -> dict[tuple[int, CrossingId], int]:
        return {(e, c): k for e, seq in enumerate(self.along_edge) for k, c in enumerate(seq)}


@dataclass(frozen=True)
class BundledCrossing:
    bundle1: frozenset[int]
    bundle2: frozenset[int]
    member_crossings: frozenset[CrossingId]

    @classmethod
    def grid(cls, e1: Iterable[int], e2: Iterable[int]) -> "BundledCrossing":
        e1, e2 = frozenset(e1), frozenset(e2)
        return cls(e1, e2, frozenset(crossing_id(a, b) for a in e1 for b in e2 if a != b))


@dataclass(frozen=True)
class BundlingPlan:
    bundles: tuple[BundledCrossing, ...]
    assignment: Mapping[CrossingId, int] = field(default_factory=dict)

    @classmethod
    def from_bundles(cls, bundles: Iterable[BundledCrossing]) -> "BundlingPlan":
        bundles = tuple(bundles)
        assignment: dict[CrossingId, int] = {}
        for k, b in enumerate(bundles):
            for c in sorted(b.member_crossings):
                assignment.setdefault(c, k)
        return cls(bundles, assignment)

    def __len__(self) -> int:
        return len(self.bundles)


@dataclass(frozen=True)
class FaceCensus:
    """Interior faces of the planarization counted by degree."""

    f: dict[int, int]
    vertices: int
    edges: int
    faces: int

    @property
    def euler(self) -> int:
        return self.vertices - self.edges + self.faces

    def count(self, k: int) -> int:
        return self.f.get(k, 0)

    @property
    def f3(self) -> int:
        return self.count(3)

    def triangle_identity_holds(self) -> bool:
        return self.f3 == 4 + sum((k - 4) * c for k, c in self.f.items() if k >= 5)


# ---------------------------------------------------------------------------
# Planarization
# ---------------------------------------------------------------------------


class Planarization:
    """Planar map of a drawing: crossings become degree-4 vertices and the
    circle itself becomes the boundary cycle.

    H-edges are keyed ``("b", p)`` for the boundary piece from position p to
    p+1 and ``("s", e, k)`` for the k-th piece of chord e.  Darts are
    ``(key, 0)`` in key direction and ``(key, 1)`` reversed.
    """

    def __init__(self, drawing: CombinatorialDrawing):
        self.drawing = drawing
        inst = drawing.instance.base
        self.n = n = inst.n
        ends: dict = {}
        for p in range(n if n >= 2 else 0):
            ends[("b", p)] = (("v", p), ("v", (p + 1) % n))
        chord_at: dict[int, tuple] = {}
        for e, seq in enumerate(drawing.along_edge):
            lo, hi = inst.span(e)
            points = [("v", lo)] + [("x", c) for c in seq] + [("v", hi)]
            for k in range(len(points) - 1):
                ends[("s", e, k)] = (points[k], points[k + 1])
            chord_at[lo] = (("s", e, 0), 0)
            chord_at[hi] = (("s", e, len(seq)), 1)
        self.ends = ends

        rot: dict = {}
        for p in range(n if n >= 2 else 0):
            darts = [(("b", p), 0)]
            if p in chord_at:
                darts.append(chord_at[p])
            darts.append((("b", (p - 1) % n), 1))
            rot[("v", p)] = darts
        for p in range(n):
            if n < 2 and p in chord_at:
                raise DrawingError("non-planar drawing")
        idx = drawing.index_in_edge
        for c in drawing.crossings:
            around = []
            for e in c:
                k = idx.get((e, c))
                if k is None:
                    raise DrawingError(f"crossing {c} missing from edge {e}")
                lo, hi = inst.span(e)
                around.append((lo, (("s", e, k), 1)))
                around.append((hi, (("s", e, k + 1), 0)))
            around.sort()
            rot[("x", c)] = [d for _, d in around]
        self.rot = rot
        self._trace()

    def tail(self, dart):
        key, r = dart
        return self.ends[key][r]

    def head(self, dart):
        key, r = dart
        return self.ends[key][1 - r]

    def _trace(self) -> None:
        nxt = {}
        for v, darts in self.rot.items():
            for i, d in enumerate(darts):
                nxt[(v, d)] = darts[(i + 1) % len(darts)]
        face_of: dict = {}
        faces: list[list] = []
        for v, darts in self.rot.items():
            for d in darts:
                if d in face_of:
                    continue
                face: list = []
                cur = d
                while cur not in face_of:
                    face_of[cur] = len(faces)
                    face.append(cur)
                    key, r = cur
                    h = self.head(cur)
                    cur = nxt[(h, (key, 1 - r))]
                    if len(face) > 4 * len(self.ends) + 4:
                        raise DrawingError("non-planar drawing")
                if cur != d:
                    raise DrawingError("non-planar drawing")
                faces.append(face)
        self.faces = faces
        self.face_of = face_of
        # with this rotation convention forward boundary darts trace the outer face
        self.outer = None
        if self.n >= 2:
            i = face_of[(("b", 0), 0)]
            if len(faces[i]) == self.n and all(key[0] == "b" and r == 0 for key, r in faces[i]):
                self.outer = i

    @property
    def vertex_count(self) -> int:
        return len(self.rot)

    @property
    def edge_count(self) -> int:
        return len(self.ends)

    def is_disk_realizable(self) -> bool:
        if self.n < 2:
            return True
        return self.vertex_count - self.edge_count + len(self.faces) == 2 and self.outer is not None

    def interior_faces(self) -> list[list]:
        return [f for i, f in enumerate(self.faces) if i != self.outer]

    def face_key_sets(self) -> set[frozenset]:
        return {frozenset(key for key, _ in f) for f in self.interior_faces()}


def _check_crossings(drawing: CombinatorialDrawing, require_complete: bool) -> None:
    inst = drawing.instance
    for e, seq in enumerate(drawing.along_edge):
        if len(set(seq)) != len(seq):
            raise DrawingError(f"edge {e} meets a crossing twice")
        for c in seq:
            if e not in c or c[0] == c[1] or not (0 <= c[0] < inst.m and 0 <= c[1] < inst.m):
                raise DrawingError(f"crossing {c} listed on edge {e}")
    idx = drawing.index_in_edge
    for c in drawing.crossings:
        for e in c:
            if (e, c) not in idx:
                raise DrawingError(f"crossing {c} missing from edge {e}")
        if not _spans_interleave(inst.span(c[0]), inst.span(c[1])):
            raise DrawingError(f"unforced crossing {c}")
    if require_complete:
        missing = forced_crossing_pairs(inst) - drawing.crossings
        if missing:
            raise DrawingError(f"missing forced crossing {min(missing)}")


def build_planarization(drawing: CombinatorialDrawing, require_complete: bool = True) -> Planarization:
    _check_crossings(drawing, require_complete)
    pl = Planarization(drawing)
    if not pl.is_disk_realizable():
        raise DrawingError("non-planar drawing")
    return pl


def planarize(drawing: CombinatorialDrawing) -> FaceCensus:
    """Face census of the planarized drawing, boundary cycle included."""
    pl = build_planarization(drawing)
    f = Counter(len(face) for face in pl.interior_faces())
    return FaceCensus(dict(sorted(f.items())), pl.vertex_count, pl.edge_count, len(pl.faces))


def is_realizable(drawing: CombinatorialDrawing, require_complete: bool = True) -> bool:
    try:
        build_planarization(drawing, require_complete)
    except DrawingError:
        return False
    return True


# ---------------------------------------------------------------------------
# Validation of bundling plans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}" if self.detail else self.kind


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __bool__(self) -> bool:
        return self.ok


def _partner(c: CrossingId, e: int) -> int:
    return c[1] if c[0] == e else c[0]


def bundle_violations(
    drawing: CombinatorialDrawing,
    bundle: BundledCrossing,
    faces: set[frozenset],
    label: str = "",
) -> list[Violation]:
    """Conditions on a single bundle: full grid, consecutive runs, consistent
    order and an empty quadrilateral interior."""
    out: list[Violation] = []
    e1s, e2s = bundle.bundle1, bundle.bundle2
    if not e1s or not e2s or e1s & e2s:
        return [Violation("not a grid", f"{label}bundles must be non-empty and disjoint")]
    expected = {crossing_id(a, b) for a in e1s for b in e2s}
    if expected != set(bundle.member_crossings) or not expected <= drawing.crossings:
        return [Violation("not a grid", f"{label}crossings are not exactly E1 x E2")]

    idx = drawing.index_in_edge
    orders: dict[int, list[int]] = {}
    for e in sorted(e1s | e2s):
        ks = sorted(idx[(e, c)] for c in expected if e in c)
        if ks[-1] - ks[0] + 1 != len(ks):
            out.append(Violation("not consecutive", f"{label}along edge {e}"))
            continue
        orders[e] = [_partner(drawing.along_edge[e][k], e) for k in ks]
    if out:
        return out

    for side in (e1s, e2s):
        ref = orders[min(side)]
        for e in sorted(side):
            if orders[e] != ref and orders[e] != ref[::-1]:
                out.append(Violation("order mismatch", f"{label}along edge {e}"))
    if out:
        return out

    rows = orders[min(e2s)]  # order of E1 edges
    cols = orders[min(e1s)]  # order of E2 edges
    for a, a2 in zip(rows, rows[1:]):
        for b, b2 in zip(cols, cols[1:]):
            cell = frozenset(
                _segment_between(drawing, e, crossing_id(e, x), crossing_id(e, y))
                for e, x, y in ((a, b, b2), (a2, b, b2), (b, a, a2), (b2, a, a2))
            )
            if cell not in faces:
                out.append(Violation("not separable", f"{label}cell {a},{a2} x {b},{b2}"))
    return out


def _segment_between(drawing: CombinatorialDrawing, e: int, c1: CrossingId, c2: CrossingId):
    k1 = drawing.index_in_edge[(e, c1)]
    k2 = drawing.index_in_edge[(e, c2)]
    return ("s", e, max(k1, k2))


def validate_bundling(drawing: CombinatorialDrawing, plan: BundlingPlan) -> ValidationReport:
    report = ValidationReport()
    known = drawing.crossings
    m = drawing.instance.m
    for b in plan.bundles:
        for c in b.member_crossings:
            if len(c) != 2 or c[0] == c[1] or not all(0 <= e < m for e in c):
                raise UnknownCrossingError(f"unknown crossing {c}")
    for c in plan.assignment:
        if c not in known:
            raise UnknownCrossingError(f"unknown crossing {c}")

    try:
        pl = build_planarization(drawing)
    except DrawingError as exc:
        report.violations.append(Violation("non-planar drawing", str(exc)))
        return report

    owners: dict[CrossingId, list[int]] = {}
    for k, b in enumerate(plan.bundles):
        for c in b.member_crossings:
            owners.setdefault(c, []).append(k)
    for c in sorted(known):
        got = owners.get(c, [])
        if len(got) != 1:
            what = "uncovered" if not got else f"in bundles {got}"
            report.violations.append(Violation("not a partition", f"crossing {c} {what}"))
        elif plan.assignment and plan.assignment.get(c) != got[0]:
            report.violations.append(Violation("not a partition", f"assignment of {c} disagrees"))

    faces = pl.face_key_sets()
    for k, b in enumerate(plan.bundles):
        report.violations.extend(bundle_violations(drawing, b, faces, f"bundle {k}: "))
    return report
