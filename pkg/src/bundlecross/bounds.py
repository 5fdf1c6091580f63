"""Closed-form lower bounds and approximation certificates.

All bounds are integers: bundle counts are integral, so fractional bounds
are rounded up, and negative ones are clamped to zero.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import NamedTuple


def _ceil(x: Fraction) -> int:
    return max(0, math.ceil(x))


def lower_bound_fixed(m_simplified: int) -> int:
    """Every drawing of a simplified instance with fixed circular order needs
    at least m/16 bundled crossings."""
    if m_simplified < 0:
        raise ValueError("edge count must be nonnegative")
    return _ceil(Fraction(m_simplified, 16))


def genus_lower_bounds(n: int, m: int) -> tuple[int, int]:
    """(general drawings, circular drawings) bounds from Euler's formula."""
    if n < 0 or m < 0:
        raise ValueError("counts must be nonnegative")
    general = _ceil(Fraction(m - (3 * n - 6), 6))
    circular = _ceil(Fraction(m - (2 * n - 3), 6))
    return general, circular


def genus_complete(n: int) -> int:
    """Orientable genus of the complete graph on n vertices."""
    if n < 3:
        raise ValueError("undefined")
    return math.ceil(Fraction((n - 3) * (n - 4), 12))


def planar_subgraph_bound(m: int, m_star: int) -> int:
    """Upper bound 4 (m - m*) for general drawings given a planar subgraph with
    m* edges.  Reported only; no drawing is constructed for it."""
    return 4 * (m - m_star)


class Certificates(NamedTuple):
    ratio_free: Fraction | None
    ratio_general: Fraction | None
    empirical_free: Fraction | None
    empirical_general: Fraction | None


def approximation_certificates(n: int, m: int, ub: int | None = None) -> Certificates:
    """Guaranteed ratios 6c/(c-2) and 6c/(c-3) for c = m/n, plus the achieved
    ratio of ``ub`` against the matching genus bound when that bound is
    positive."""
    if n == 0:
        raise ValueError("empty instance")
    c = Fraction(m, n)
    free = 6 * c / (c - 2) if m > 2 * n else None
    general = 6 * c / (c - 3) if m > 3 * n else None
    lb_general, lb_circular = genus_lower_bounds(n, m)
    emp_free = Fraction(ub, lb_circular) if ub is not None and lb_circular > 0 else None
    emp_general = Fraction(ub, lb_general) if ub is not None and lb_general > 0 else None
    return Certificates(free, general, emp_free, emp_general)


@dataclass(frozen=True)
class BoundsReport:
    m: int
    n: int
    m_simplified: int
    lb_fixed: int
    lb_general: int
    lb_circular: int
    ub: int | None
    ratio_fixed: Fraction | None
    ratio_free: Fraction | None
    ratio_general: Fraction | None
    genus_formula_kn: int | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def is_complete_graph(n: int, edges) -> bool:
    return n >= 3 and len({frozenset(e) for e in edges}) == n * (n - 1) // 2


def bounds_report(n: int, edges, m_simplified: int, ub: int | None) -> BoundsReport:
    """Bounds for a graph with ``n`` vertices and the given edges.

    ``ratio_fixed`` is the achieved ratio ub / lb_fixed; ``ratio_free`` and
    ``ratio_general`` are the guaranteed factors when the density allows.
    """
    m = len(edges)
    lb_fixed = lower_bound_fixed(m_simplified)
    lb_general, lb_circular = genus_lower_bounds(n, m)
    certs = approximation_certificates(n, m, ub) if n else Certificates(None, None, None, None)
    return BoundsReport(
        m=m,
        n=n,
        m_simplified=m_simplified,
        lb_fixed=lb_fixed,
        lb_general=lb_general,
        lb_circular=lb_circular,
        ub=ub,
        ratio_fixed=Fraction(ub, lb_fixed) if ub is not None and lb_fixed else None,
        ratio_free=certs.ratio_free,
        ratio_general=certs.ratio_general,
        genus_formula_kn=genus_complete(n) if is_complete_graph(n, edges) else None,
    )
