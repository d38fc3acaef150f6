"""Search-tree size of the branching solver against k and the degeneracy of H.

Prints one CSV row per (k, delta(H)) cell with the mean and max node count,
the largest branching factor seen, and the worst ratio of branching factor
to colors used.
"""

import argparse
import csv
import random
import sys
from collections import defaultdict
from dataclasses import dataclass

from labcon.branch import BranchConfig, solve_branch
from labcon.graph import degeneracy, greedy_coloring, num_colors
from labcon.reductions import gen_random


@dataclass
class SweepConfig:
    samples: int = 300
    min_n: int = 6
    max_n: int = 16
    max_k: int = 8
    seed: int = 0
    coloring: str = "greedy"
    order: str = "frontier"


def sweep(cfg: SweepConfig):
    rng = random.Random(cfg.seed)
    cells = defaultdict(list)
    bcfg = BranchConfig(cfg.coloring, 10**6, cfg.order)
    for _ in range(cfg.samples):
        n = rng.randint(cfg.min_n, cfg.max_n)
        k = rng.randint(1, min(cfg.max_k, n - 1))
        inst = gen_random(n, k, rng.randrange(10**9), "yes", rng.choice([0.15, 0.25, 0.4])).instance
        dh = degeneracy(inst.h)[0]
        res = solve_branch(inst, bcfg)
        colors = num_colors(greedy_coloring(inst.h))
        cells[(k, dh)].append((res.stats["nodes"], res.stats["max_branching"], colors))
    return cells


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=300)
    ap.add_argument("--max-n", type=int, default=16)
    ap.add_argument("--max-k", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--coloring", choices=("greedy", "exact"), default="greedy")
    ap.add_argument("--order", choices=("frontier", "label"), default="frontier")
    args = ap.parse_args()
    cfg = SweepConfig(samples=args.samples, max_n=args.max_n, max_k=args.max_k,
                      seed=args.seed, coloring=args.coloring, order=args.order)
    w = csv.writer(sys.stdout)
    w.writerow(["k", "delta_h", "runs", "mean_nodes", "max_nodes", "max_branching", "worst_ratio"])
    for (k, dh), runs in sorted(sweep(cfg).items()):
        nodes = [r[0] for r in runs]
        ratio = max(r[1] / r[2] for r in runs)
        w.writerow([k, dh, len(runs), f"{sum(nodes) / len(nodes):.1f}", max(nodes),
                    max(r[1] for r in runs), f"{ratio:.2f}"])


if __name__ == "__main__":
    main()
