"""Greedy block-crossing orders against the exact metro oracle on random
trees with up to three lines."""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from bundlecross.metro import (
    MetroError,
    MetroInstance,
    bcm_lower_bound,
    metro_optimum,
    order_lines_greedy,
    validate_line_orders,
)


@dataclass
class Config:
    trials: int = 300
    max_n: int = 12
    lines: int = 3
    seed: int = 0


def random_instance(rng: random.Random, cfg: Config) -> MetroInstance:
    n = rng.randint(3, cfg.max_n)
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    rng.shuffle(edges)
    leaves = list(MetroInstance(n, tuple(edges)).leaves)
    rng.shuffle(leaves)
    k = min(cfg.lines, len(leaves) // 2)
    return MetroInstance(n, tuple(edges), tuple((leaves[2 * i], leaves[2 * i + 1]) for i in range(k)))


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name in ("trials", "max_n", "lines", "seed"):
        parser.add_argument(f"--{name.replace('_', '-')}", type=int, default=getattr(Config, name))
    cfg = Config(**vars(parser.parse_args(argv)))
    rng = random.Random(cfg.seed)
    feasible = optimal = infeasible = 0
    excess = 0
    for _ in range(cfg.trials):
        mi = random_instance(rng, cfg)
        try:
            best, _ = metro_optimum(mi)
        except MetroError:
            infeasible += 1
            continue
        lo = order_lines_greedy(mi)
        assert validate_line_orders(mi, lo).ok and lo.crossings >= best >= bcm_lower_bound(mi)
        feasible += 1
        optimal += lo.crossings == best
        excess += lo.crossings - best
    print(f"feasible {feasible}, greedy optimal on {optimal}, total excess {excess}, "
          f"infeasible (forced vertex crossings) {infeasible}")


if __name__ == "__main__":
    main()
