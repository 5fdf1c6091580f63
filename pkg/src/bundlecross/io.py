"""Text instance formats and the JSON drawing interchange."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from bundlecross.metro import MetroInstance
from bundlecross.model import (
    BundledCrossing,
    BundlingPlan,
    CircularInstance,
    CombinatorialDrawing,
    MatchingInstance,
)


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


def _directives(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        words = raw.split("#", 1)[0].split()
        if words:
            yield number, words[0], words[1:]


def _ints(number: int, args: list[str], count: int | None = None) -> list[int]:
    if count is not None and len(args) != count:
        raise ParseError(number, f"expected {count} integers, got {len(args)}")
    try:
        return [int(a) for a in args]
    except ValueError:
        raise ParseError(number, "expected integers") from None


def parse_instance(text: str) -> CircularInstance:
    """Parse ``n``, optional ``order`` and ``edge`` directives; ``#`` starts a
    comment.  Errors name the first offending line."""
    n = None
    order = None
    edges: list[tuple[int, int]] = []
    seen: set[frozenset] = set()
    last = 1
    for number, key, args in _directives(text):
        last = number
        if key == "n":
            if n is not None:
                raise ParseError(number, "duplicate n")
            (n,) = _ints(number, args, 1)
            if n < 0:
                raise ParseError(number, "n must be nonnegative")
            continue
        if n is None:
            raise ParseError(number, "n must come first")
        if key == "order":
            if order is not None:
                raise ParseError(number, "duplicate order")
            order = _ints(number, args)
            if sorted(order) != list(range(n)):
                raise ParseError(number, "not a permutation")
        elif key == "edge":
            u, v = _ints(number, args, 2)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(number, f"vertex out of range in edge {u} {v}")
            if u == v:
                raise ParseError(number, f"loop at vertex {u}")
            if frozenset((u, v)) in seen:
                raise ParseError(number, f"duplicate edge {u} {v}")
            seen.add(frozenset((u, v)))
            edges.append((u, v))
        else:
            raise ParseError(number, f"unknown directive {key!r}")
    if n is None:
        raise ParseError(last if text.strip() else 1, "missing n")
    return CircularInstance(n, tuple(range(n)) if order is None else tuple(order), tuple(edges))


def format_instance(inst: CircularInstance) -> str:
    lines = [f"n {inst.n}"]
    if inst.order != tuple(range(inst.n)):
        lines.append("order " + " ".join(map(str, inst.order)))
    lines.extend(f"edge {u} {v}" for u, v in inst.edges)
    return "\n".join(lines) + "\n"


def parse_metro(text: str) -> MetroInstance:
    """``tree`` header, ``n``, ``treeedge u v`` in rotation order and
    ``line a b`` between leaves."""
    n = None
    edges: list[tuple[int, int]] = []
    lines: list[tuple[int, int]] = []
    header = False
    for number, key, args in _directives(text):
        if key == "tree":
            if header:
                raise ParseError(number, "duplicate tree header")
            header = True
        elif key == "n":
            if n is not None:
                raise ParseError(number, "duplicate n")
            (n,) = _ints(number, args, 1)
        elif key in ("treeedge", "line"):
            if n is None:
                raise ParseError(number, "n must come first")
            u, v = _ints(number, args, 2)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(number, f"vertex out of range: {u} {v}")
            (edges if key == "treeedge" else lines).append((u, v))
        else:
            raise ParseError(number, f"unknown directive {key!r}")
    if n is None:
        raise ParseError(1, "missing n")
    try:
        return MetroInstance(n, tuple(edges), tuple(lines))
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def to_jsonable(x: Any) -> Any:
    """Fractions become ints or "p/q" strings; tuples become lists."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    return x


def parse_number(x: int | str) -> Fraction:
    return Fraction(x) if isinstance(x, str) else Fraction(int(x))


def dumps(doc: Any) -> str:
    return json.dumps(to_jsonable(doc), sort_keys=True, indent=2) + "\n"


def drawing_to_json(drawing: CombinatorialDrawing, plan: BundlingPlan | None = None) -> dict:
    inst = drawing.instance
    doc = {
        "n": inst.n,
        "order": list(inst.base.order),
        "edges": [list(e) for e in inst.edges],
        "origin": list(inst.origin_map),
        "along_edge": [[list(c) for c in seq] for seq in drawing.along_edge],
        "bundles": [
            {"e1": sorted(b.bundle1), "e2": sorted(b.bundle2)} for b in (plan.bundles if plan else ())
        ],
    }
    if drawing.geometry is not None:
        doc["geometry"] = [[[Fraction(x), Fraction(y)] for x, y in line] for line in drawing.geometry]
    return to_jsonable(doc)


def drawing_from_json(doc: dict) -> tuple[CombinatorialDrawing, BundlingPlan]:
    """Inverse of :func:`drawing_to_json`.  A report is accepted too, in which
    case its ``witness`` is read."""
    if "witness" in doc:
        doc = doc["witness"]
        if doc is None:
            raise ValueError("report carries no witness drawing")
    try:
        n = int(doc["n"])
        base = CircularInstance(n, tuple(doc.get("order", range(n))), tuple(tuple(e) for e in doc["edges"]))
        inst = MatchingInstance(base, tuple(doc.get("origin", range(n))))
        geometry = doc.get("geometry")
        if geometry is not None:
            geometry = tuple(tuple((parse_number(x), parse_number(y)) for x, y in line) for line in geometry)
        drawing = CombinatorialDrawing(
            inst, tuple(tuple(tuple(c) for c in seq) for seq in doc["along_edge"]), geometry
        )
        plan = BundlingPlan.from_bundles(
            BundledCrossing.grid(b["e1"], b["e2"]) for b in doc.get("bundles", ())
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed drawing document: {exc}") from None
    return drawing, plan
