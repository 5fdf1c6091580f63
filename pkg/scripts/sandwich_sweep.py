"""Compare lower bound, exact optimum and both layouts on random matchings.

    python3 scripts/sandwich_sweep.py --trials 200 --max-edges 5 > sandwich.csv
"""

from __future__ import annotations

import argparse
import csv
import random
import sys
from dataclasses import dataclass, fields

from bundlecross.bounds import lower_bound_fixed
from bundlecross.layout import layout_instance
from bundlecross.model import MatchingInstance
from bundlecross.oracle import exact_bc


@dataclass
class Config:
    trials: int = 200
    max_edges: int = 5
    seed: int = 0


@dataclass
class Row:
    n: int
    m: int
    m_simplified: int
    lb_fixed: int
    exact: int
    two_slope: int
    outerplanar: int


def run(cfg: Config):
    rng = random.Random(cfg.seed)
    for _ in range(cfg.trials):
        m = rng.randint(1, cfg.max_edges)
        n = rng.randint(2 * m, 2 * m + 4)
        slots = rng.sample(range(n), 2 * m)
        inst = MatchingInstance.from_edges(n, [(slots[2 * i], slots[2 * i + 1]) for i in range(m)])
        two, simplified, _ = layout_instance(inst, "two_slope")
        outer, _, _ = layout_instance(inst, "outerplanar")
        yield Row(n, m, simplified.m, lower_bound_fixed(simplified.m), exact_bc(inst).optimum,
                  two.bundle_count, outer.bundle_count)


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(Config):
        parser.add_argument(f"--{f.name.replace('_', '-')}", type=int, default=f.default)
    cfg = Config(**vars(parser.parse_args(argv)))
    writer = csv.writer(sys.stdout)
    writer.writerow([f.name for f in fields(Row)])
    gaps = []
    for row in run(cfg):
        writer.writerow([getattr(row, f.name) for f in fields(Row)])
        gaps.append(row.two_slope - row.exact)
    print(f"# mean two-slope excess over optimum: {sum(gaps) / max(len(gaps), 1):.3f}", file=sys.stderr)


if __name__ == "__main__":
    main()
