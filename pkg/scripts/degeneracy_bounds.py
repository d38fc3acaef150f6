"""How close random contractions come to the two degeneracy bounds for H = G/S.

For each sample it records delta(G), delta(H) and the slack against
delta(G) + k and delta(G) * 2n / (n - k).  Exits non-zero on a violation.
"""

import argparse
import random
import sys
from dataclasses import dataclass

from labcon.graph import degeneracy
from labcon.reductions import gen_random


@dataclass
class BoundsConfig:
    samples: int = 1000
    max_n: int = 30
    max_k: int = 10
    seed: int = 0


def run(cfg: BoundsConfig):
    rng = random.Random(cfg.seed)
    tightest_add = tightest_mul = float("inf")
    violations = 0
    growth = 0
    for _ in range(cfg.samples):
        n = rng.randint(2, cfg.max_n)
        k = rng.randint(1, min(cfg.max_k, n - 1))
        gi = gen_random(n, k, rng.randrange(10**9), "yes", rng.choice([0.1, 0.2, 0.4]))
        dg = degeneracy(gi.instance.g)[0]
        dh = degeneracy(gi.instance.h)[0]
        add = dg + k - dh
        mul = dg * 2 * n / (n - k) - dh
        tightest_add = min(tightest_add, add)
        tightest_mul = min(tightest_mul, mul)
        growth += dh > dg
        violations += add < 0 or mul < 0
    return violations, growth, tightest_add, tightest_mul


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--max-n", type=int, default=30)
    ap.add_argument("--max-k", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    cfg = BoundsConfig(**vars(ap.parse_args()))
    violations, growth, add, mul = run(cfg)
    print(f"samples={cfg.samples} violations={violations} degeneracy_grew={growth}")
    print(f"smallest slack: additive {add}, multiplicative {mul:.2f}")
    sys.exit(1 if violations else 0)


if __name__ == "__main__":
    main()
