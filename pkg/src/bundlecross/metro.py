"""Block crossings of metro lines on a plane tree.

Every line runs between two leaves along the unique tree path.  On each tree
edge the lines keep a left-to-right order that may change only by block
moves (swapping two adjacent blocks); lines never cross inside a vertex.

Conventions.  ``treeedge`` listing order fixes the rotation at each vertex.
The orders stored for an edge (u, v), in its listed orientation, are read
left to right when walking from u to v; ``orders[0]`` holds at the u end and
``orders[-1]`` at the v end.  Sweeping around a vertex in rotation order, an
outgoing edge is passed left to right, so the lines met around v form the
concatenation of the outward orders, and v is crossing-free iff that cyclic
sequence is properly nested.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from typing import Mapping, Sequence

from bundlecross.model import CircularInstance, to_matching
from bundlecross.simplify import simplify

Move = tuple[int, int, int]
TreeEdge = tuple[int, int]


class MetroError(ValueError):
    pass


@dataclass(frozen=True)
class MetroInstance:
    n: int
    edges: tuple[TreeEdge, ...]
    lines: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        object.__setattr__(self, "lines", tuple((int(a), int(b)) for a, b in self.lines))
        if self.n < 2:
            raise MetroError("a tree needs at least two vertices")
        if len(self.edges) != self.n - 1:
            raise MetroError("not a tree: wrong number of edges")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise MetroError(f"bad tree edge ({u}, {v})")
            if frozenset((u, v)) in seen:
                raise MetroError(f"duplicate tree edge ({u}, {v})")
            seen.add(frozenset((u, v)))
        if len(self._reach(0)) != self.n:
            raise MetroError("not a tree: disconnected")
        used = set()
        for a, b in self.lines:
            for t in (a, b):
                if not 0 <= t < self.n or len(self.adjacency[t]) != 1:
                    raise MetroError(f"terminal {t} is not a leaf")
                if t in used:
                    raise MetroError(f"leaf {t} ends two lines")
                used.add(t)
            if a == b:
                raise MetroError("line with equal terminals")

    def _reach(self, start: int) -> dict[int, int]:
        parent = {start: start}
        todo = deque([start])
        while todo:
            v = todo.popleft()
            for w in self.adjacency[v]:
                if w not in parent:
                    parent[w] = v
                    todo.append(w)
        return parent

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(a) for a in adj)

    @cached_property
    def edge_key(self) -> dict[frozenset, TreeEdge]:
        return {frozenset(e): e for e in self.edges}

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        """Leaves in boundary order: start at the smallest leaf and leave each
        vertex along the edge following the arrival edge in its rotation."""
        adj = self.adjacency
        root = min(v for v in range(self.n) if len(adj[v]) == 1)
        out = [root]
        prev, cur = root, adj[root][0]
        while cur != root:
            if len(adj[cur]) == 1:
                out.append(cur)
            nxt = adj[cur][(adj[cur].index(prev) + 1) % len(adj[cur])]
            prev, cur = cur, nxt
        return tuple(out)

    @cached_property
    def leaf_rank(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.leaves)}

    def path(self, line: int) -> list[int]:
        a, b = self.lines[line]
        parent = self._paths_from(a)
        out = [b]
        while out[-1] != a:
            out.append(parent[out[-1]])
        return out[::-1]

    @cached_property
    def _parent_cache(self) -> dict[int, dict[int, int]]:
        return {}

    def _paths_from(self, a: int) -> dict[int, int]:
        if a not in self._parent_cache:
            self._parent_cache[a] = self._reach(a)
        return self._parent_cache[a]

    @cached_property
    def paths(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.path(i)) for i in range(len(self.lines)))

    @cached_property
    def edge_lines(self) -> dict[TreeEdge, tuple[int, ...]]:
        """Lines using each tree edge, by line index."""
        out: dict[TreeEdge, list[int]] = {e: [] for e in self.edges}
        for i, p in enumerate(self.paths):
            for x, y in zip(p, p[1:]):
                out[self.edge_key[frozenset((x, y))]].append(i)
        return {e: tuple(ls) for e, ls in out.items()}

    def without(self, removed: Sequence[int]) -> "MetroInstance":
        gone = set(removed)
        return MetroInstance(self.n, self.edges, tuple(l for i, l in enumerate(self.lines) if i not in gone))


@dataclass(frozen=True)
class EdgeOrders:
    orders: tuple[tuple[int, ...], ...]
    moves: tuple[Move, ...] = ()


@dataclass(frozen=True)
class LineOrders:
    edges: Mapping[TreeEdge, EdgeOrders] = field(default_factory=dict)

    @property
    def crossings(self) -> int:
        return sum(len(eo.moves) for eo in self.edges.values())


@dataclass(frozen=True)
class MetroReport:
    violations: tuple[str, ...]
    crossings: int

    @property
    def ok(self) -> bool:
        return not self.violations


def apply_block_move(order: Sequence, i: int, j: int, k: int):
    """Swap the blocks at 1-based positions i..j and j+1..k."""
    if not 1 <= i <= j < k <= len(order):
        raise ValueError(f"bad block move ({i}, {j}, {k}) for length {len(order)}")
    out = list(order[: i - 1]) + list(order[j:k]) + list(order[i - 1 : j]) + list(order[k:])
    return out if isinstance(order, list) else tuple(out)


def all_moves(length: int):
    for i in range(1, length + 1):
        for j in range(i, length):
            for k in range(j + 1, length + 1):
                yield i, j, k


def block_sort_exact(src: Sequence[int], dst: Sequence[int]) -> list[Move]:
    """Fewest block moves turning src into dst, by breadth-first search."""
    src, dst = tuple(src), tuple(dst)
    if sorted(src) != sorted(dst):
        raise ValueError("orders hold different lines")
    back: dict[tuple, tuple | None] = {src: None}
    todo = deque([src])
    while todo:
        cur = todo.popleft()
        if cur == dst:
            break
        for mv in all_moves(len(cur)):
            nxt = apply_block_move(cur, *mv)
            if nxt not in back:
                back[nxt] = (cur, mv)
                todo.append(nxt)
    moves = []
    cur = dst
    while back[cur] is not None:
        cur, mv = back[cur]
        moves.append(mv)
    return moves[::-1]


def block_sort_greedy(src: Sequence[int], dst: Sequence[int]) -> list[Move]:
    """Fill dst left to right, each time pulling the longest already-correct
    run into place with one move."""
    cur, dst = list(src), list(dst)
    if sorted(cur) != sorted(dst):
        raise ValueError("orders hold different lines")
    moves = []
    for i in range(len(dst)):
        if cur[i] == dst[i]:
            continue
        p = cur.index(dst[i])
        q = p
        while q + 1 < len(cur) and i + q + 1 - p < len(dst) and cur[q + 1] == dst[i + q + 1 - p]:
            q += 1
        mv = (i + 1, p, q + 1)
        cur = apply_block_move(cur, *mv)
        moves.append(mv)
    return moves


EXACT_SORT_LIMIT = 6


def block_sort(src: Sequence[int], dst: Sequence[int]) -> list[Move]:
    if len(src) <= EXACT_SORT_LIMIT:
        return block_sort_exact(src, dst)
    return block_sort_greedy(src, dst)


def edge_orders_from_moves(start: Sequence[int], moves: Sequence[Move]) -> EdgeOrders:
    orders = [tuple(start)]
    for mv in moves:
        orders.append(apply_block_move(orders[-1], *mv))
    return EdgeOrders(tuple(orders), tuple(tuple(m) for m in moves))


def _outward(mi: MetroInstance, v: int, w: int, eo: EdgeOrders) -> tuple[int, ...]:
    u, _ = mi.edge_key[frozenset((v, w))]
    return eo.orders[0] if u == v else tuple(reversed(eo.orders[-1]))


def _nested(seq: Sequence[int]) -> bool:
    stack: list[int] = []
    for x in seq:
        if stack and stack[-1] == x:
            stack.pop()
        elif x in stack:
            return False
        else:
            stack.append(x)
    return not stack


def validate_line_orders(mi: MetroInstance, lo: LineOrders) -> MetroReport:
    known = set(mi.edges)
    for e, eo in lo.edges.items():
        if tuple(e) not in known:
            raise MetroError(f"unknown edge {e}")
        for order in eo.orders:
            for x in order:
                if not 0 <= x < len(mi.lines):
                    raise MetroError(f"unknown line {x}")
    violations = []
    for e in mi.edges:
        want = sorted(mi.edge_lines[e])
        eo = lo.edges.get(e)
        if eo is None:
            if len(want) > 1:
                violations.append(f"missing orders for edge {e}")
            continue
        if not eo.orders or any(sorted(o) != want for o in eo.orders):
            violations.append(f"wrong lines on edge {e}")
            continue
        consistent = len(eo.orders) == len(eo.moves) + 1
        if consistent:
            for a, b, mv in zip(eo.orders, eo.orders[1:], eo.moves):
                try:
                    consistent &= tuple(apply_block_move(a, *mv)) == tuple(b)
                except ValueError:
                    consistent = False
        if not consistent:
            violations.append(f"orders inconsistent on edge {e}")
    if violations:
        return MetroReport(tuple(violations), lo.crossings)
    for v in range(mi.n):
        if len(mi.adjacency[v]) < 2:
            continue
        seq = []
        for w in mi.adjacency[v]:
            e = mi.edge_key[frozenset((v, w))]
            eo = lo.edges.get(e, EdgeOrders((mi.edge_lines[e],)))
            seq.extend(_outward(mi, v, w, eo))
        if not _nested(seq):
            violations.append(f"lines cross inside vertex {v}")
    return MetroReport(tuple(violations), lo.crossings)


# ---------------------------------------------------------------------------
# reduction to circular matchings
# ---------------------------------------------------------------------------


def lines_to_chords(mi: MetroInstance) -> CircularInstance:
    """One chord per line on the leaves; vertex k is the k-th leaf in
    boundary order."""
    rank = mi.leaf_rank
    return CircularInstance(
        len(mi.leaves), tuple(range(len(mi.leaves))), tuple((rank[a], rank[b]) for a, b in mi.lines)
    )


def _parallel_lines(mi: MetroInstance, a: int, b: int, present: Sequence[int]) -> bool:
    rank = mi.leaf_rank
    ring = sorted(rank[t] for i in present for t in mi.lines[i])
    where = {p: i for i, p in enumerate(ring)}
    k = len(ring)

    def adjacent(p: int, q: int) -> bool:
        return (where[p] - where[q]) % k in (1, k - 1)

    p1, q1 = sorted(rank[t] for t in mi.lines[a])
    p2, q2 = sorted(rank[t] for t in mi.lines[b])
    if (p1 < p2 < q1) != (p1 < q2 < q1):
        return False
    return (adjacent(p1, p2) and adjacent(q1, q2)) or (adjacent(p1, q2) and adjacent(q1, p2))


def simplify_lines(mi: MetroInstance, scan: Sequence[int] | None = None) -> tuple[MetroInstance, list[tuple[int, int]]]:
    """Drop lines parallel to another present line until none is left.

    Returns the reduced instance and the log of (removed, kept) line indices
    of the input.
    """
    present = list(range(len(mi.lines))) if scan is None else list(scan)
    log: list[tuple[int, int]] = []
    while True:
        hit = next(
            ((present[y], present[x]) for x in range(len(present)) for y in range(x + 1, len(present))
             if _parallel_lines(mi, present[x], present[y], present)),
            None,
        )
        if hit is None:
            break
        log.append(hit)
        present.remove(hit[0])
    return mi.without([r for r, _ in log]), log


def bcm_lower_bound(mi: MetroInstance) -> int:
    """ceil(l'/16) for the lines surviving full simplification of the chord
    instance, which also drops lines crossing nothing."""
    if not mi.lines:
        return 0
    reduced, _ = simplify(to_matching(lines_to_chords(mi)))
    return math.ceil(reduced.m / 16)


# ---------------------------------------------------------------------------
# greedy orders
# ---------------------------------------------------------------------------


def _vertex_outward_orders(mi: MetroInstance, v: int) -> dict[int, tuple[int, ...]]:
    """Outward orders at v on every incident edge, nested whenever possible.

    On each outward edge lines are sorted by how far clockwise their other
    edge lies, farthest first; lines sharing both edges are mirrored so they
    nest.  Lines joining four distinct edges in crossing position cannot be
    separated and are reported by the validator.
    """
    adj = mi.adjacency[v]
    d = len(adj)
    slot = {w: i for i, w in enumerate(adj)}
    rank = mi.leaf_rank
    blocks: dict[int, list[tuple]] = {w: [] for w in adj}
    for line, p in enumerate(mi.paths):
        if v not in p[1:-1]:
            continue
        t = p.index(v)
        x, y = p[t - 1], p[t + 1]
        ends = {x: mi.lines[line][0], y: mi.lines[line][1]}
        i, j = sorted((slot[x], slot[y]))
        key = rank[ends[adj[i]]]
        for w, other in ((x, y), (y, x)):
            offset = (slot[other] - slot[w]) % d
            blocks[w].append((-offset, key if slot[w] == i else -key, line))
    return {w: tuple(line for *_, line in sorted(b)) for w, b in blocks.items()}


def order_lines_greedy(mi: MetroInstance) -> LineOrders:
    """Nested outward orders at every vertex, then each edge sorted from its
    u-end order to its v-end order with block moves."""
    outward = {v: _vertex_outward_orders(mi, v) for v in range(mi.n) if len(mi.adjacency[v]) > 1}
    out = {}
    for u, v in mi.edges:
        lines = mi.edge_lines[(u, v)]
        if len(lines) < 2:
            out[(u, v)] = EdgeOrders((lines,))
            continue
        start = outward[u][v] if u in outward else lines
        end = tuple(reversed(outward[v][u])) if v in outward else lines
        out[(u, v)] = edge_orders_from_moves(start, block_sort(start, end))
    result = LineOrders(out)
    report = validate_line_orders(mi, result)
    if not report.ok:
        raise MetroError(f"no valid orders: {report.violations[0]}")
    return result


# ---------------------------------------------------------------------------
# exact oracle
# ---------------------------------------------------------------------------


def _vertex_arrangements(mi: MetroInstance, v: int) -> list[dict[int, tuple[int, ...]]]:
    adj = mi.adjacency[v]
    choices = []
    for w in adj:
        lines = mi.edge_lines[mi.edge_key[frozenset((v, w))]]
        choices.append(list(permutations(lines)))
    out = []
    for combo in product(*choices):
        if len(adj) == 1 or _nested([x for block in combo for x in block]):
            out.append(dict(zip(adj, combo)))
    return out


def metro_optimum(mi: MetroInstance, max_lines: int = 3) -> tuple[int, LineOrders]:
    """Fewest block crossings and a witness, by dynamic programming over the
    tree: every vertex picks nested outward orders and each edge pays the
    block distance between its two end orders."""
    if len(mi.lines) > max_lines:
        raise MetroError("too many lines for the metro oracle")
    arr = {v: _vertex_arrangements(mi, v) for v in range(mi.n)}
    if any(not a for a in arr.values()):
        raise MetroError("no crossing-free vertex arrangement exists")
    dist_cache: dict[tuple, list[Move]] = {}

    def edge_cost(v: int, av: dict, w: int, aw: dict) -> list[Move]:
        u, _ = mi.edge_key[frozenset((v, w))]
        start, end = (av[w], tuple(reversed(aw[v]))) if u == v else (aw[v], tuple(reversed(av[w])))
        if (start, end) not in dist_cache:
            dist_cache[start, end] = block_sort_exact(start, end)
        return dist_cache[start, end]

    root = 0
    parent = mi._reach(root)
    order = sorted(range(mi.n), key=lambda v: _depth(parent, v), reverse=True)
    children: dict[int, list[int]] = {v: [] for v in range(mi.n)}
    for v in range(mi.n):
        if v != root:
            children[parent[v]].append(v)
    best: dict[int, list[int]] = {}
    pick: dict[tuple[int, int, int], int] = {}
    for v in order:
        costs = []
        for i, av in enumerate(arr[v]):
            total = 0
            for c in children[v]:
                options = [len(edge_cost(v, av, c, ac)) + best[c][k] for k, ac in enumerate(arr[c])]
                k = min(range(len(options)), key=options.__getitem__)
                pick[v, i, c] = k
                total += options[k]
            costs.append(total)
        best[v] = costs
    top = min(range(len(best[root])), key=best[root].__getitem__)
    chosen = {root: top}
    todo = [root]
    while todo:
        v = todo.pop()
        for c in children[v]:
            chosen[c] = pick[v, chosen[v], c]
            todo.append(c)
    edges = {}
    for u, v in mi.edges:
        au, av = arr[u][chosen[u]], arr[v][chosen[v]]
        moves = edge_cost(u, au, v, av)
        edges[(u, v)] = edge_orders_from_moves(au[v], moves)
    return best[root][top], LineOrders(edges)


def _depth(parent: dict[int, int], v: int) -> int:
    d = 0
    while parent[v] != v:
        v = parent[v]
        d += 1
    return d


def metro_oracle(mi: MetroInstance, cap: int = 8) -> int:
    """Minimum total block crossings; errors with "cap" above ``cap``."""
    value, _ = metro_optimum(mi)
    if value > cap:
        raise MetroError("cap")
    return value


def line_orders_to_json(lo: LineOrders) -> dict:
    return {
        "edges": [
            {"u": u, "v": v, "orders": [list(o) for o in eo.orders], "moves": [list(m) for m in eo.moves]}
            for (u, v), eo in sorted(lo.edges.items())
        ]
    }


def line_orders_from_json(doc: dict) -> LineOrders:
    return LineOrders({
        (int(e["u"]), int(e["v"])): EdgeOrders(
            tuple(tuple(int(x) for x in o) for o in e["orders"]),
            tuple(tuple(int(x) for x in m) for m in e["moves"]),
        )
        for e in doc["edges"]
    })
