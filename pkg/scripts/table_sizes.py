"""DP table sizes against decomposition width for random instances."""

import argparse
import csv
import random
import sys
from dataclasses import dataclass

from labcon.decomposition import heuristic_decompose, nicify
from labcon.graph import union_graph
from labcon.reductions import gen_random
from labcon.twdp import solve_twdp


@dataclass
class TableConfig:
    samples: int = 60
    max_n: int = 12
    max_k: int = 4
    seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=60)
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--max-k", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    cfg = TableConfig(**vars(ap.parse_args()))
    rng = random.Random(cfg.seed)
    w = csv.writer(sys.stdout)
    w.writerow(["n", "k", "width", "nodes", "max_table", "answer", "ms"])
    for _ in range(cfg.samples):
        n = rng.randint(4, cfg.max_n)
        k = rng.randint(1, min(cfg.max_k, n - 1))
        mode = rng.choice(["yes", "perturbed"])
        inst = gen_random(n, k, rng.randrange(10**9), mode).instance
        u = union_graph(inst)
        res = solve_twdp(inst, nicify(heuristic_decompose(u), u))
        s = res.stats
        w.writerow([n, k, s["width"], s["nodes"], s["max_table"], res.answer, f"{s['ms']:.1f}"])


if __name__ == "__main__":
    main()
