"""Face census of two-slope drawings on simplified random matchings.

Prints, per instance size, how many triangles the drawings have relative to
the m/4 floor, and checks the triangle identity on every drawing.
"""

from __future__ import annotations

import argparse
import random
from collections import defaultdict
from dataclasses import dataclass

from bundlecross.layout import two_slope_layout
from bundlecross.model import MatchingInstance, planarize
from bundlecross.simplify import simplify


@dataclass
class Config:
    trials: int = 500
    max_n: int = 24
    seed: int = 0


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=Config.trials)
    parser.add_argument("--max-n", type=int, default=Config.max_n)
    parser.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(**vars(parser.parse_args(argv)))
    rng = random.Random(cfg.seed)
    ratios: dict[int, list[float]] = defaultdict(list)
    violations = 0
    for _ in range(cfg.trials):
        n = rng.randint(4, cfg.max_n)
        slots = rng.sample(range(n), n - n % 2)
        inst = MatchingInstance.from_edges(n, [(slots[i], slots[i + 1]) for i in range(0, len(slots), 2)])
        simplified, _ = simplify(inst)
        if simplified.m < 2:
            continue
        census = planarize(two_slope_layout(simplified).drawing)
        violations += not census.triangle_identity_holds()
        ratios[simplified.m].append(census.f3 / (simplified.m / 4))
    print("m  drawings  min f3/(m/4)  mean f3/(m/4)")
    for m in sorted(ratios):
        rs = ratios[m]
        print(f"{m:<3}{len(rs):>9}{min(rs):>14.2f}{sum(rs) / len(rs):>15.2f}")
    print(f"identity violations: {violations}")


if __name__ == "__main__":
    main()
