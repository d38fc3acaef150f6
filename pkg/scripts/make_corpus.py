"""Write a mixed known-answer corpus of .lcp files (plus certificates) for ``lcp bench``."""

import argparse
import itertools
import random
from dataclasses import dataclass
from pathlib import Path

from labcon import io
from labcon.reductions import (
    CnfFormula,
    CrossMatchingInstance,
    certificate_crossmatch,
    certificate_from_assignment,
    crossmatch_bruteforce,
    gen_from_1in3sat,
    gen_from_crossmatching,
    gen_from_nae34sat,
    gen_random,
    sat_bruteforce,
)
from labcon.graph import LabeledGraph


@dataclass
class CorpusConfig:
    out: Path
    seed: int = 0
    random_count: int = 20
    max_n: int = 10
    max_k: int = 4
    sat_count: int = 10
    crossmatch_count: int = 10


def write(cfg, name, inst, cert=None):
    io.write_instance(cfg.out / f"{name}.lcp", inst)
    if cert is not None:
        io.write_certificate(cfg.out / f"{name}.cert", cert)


def build(cfg: CorpusConfig) -> int:
    cfg.out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(cfg.seed)
    count = 0
    for i in range(cfg.random_count):
        n = rng.randint(3, cfg.max_n)
        k = rng.randint(1, min(cfg.max_k, n - 1))
        mode = "yes" if i % 2 == 0 else "perturbed"
        gi = gen_random(n, k, rng.randrange(10**6), mode)
        write(cfg, f"random_{mode}_{i:03d}", gi.instance, gi.certificate if mode == "yes" else None)
        count += 1
    triples = list(itertools.combinations(range(1, 5), 3))
    for i in range(cfg.sat_count):
        m = rng.randint(1, 3)
        f = CnfFormula(4, [rng.choice(triples) for _ in range(m)])
        ok, a = sat_bruteforce(f, "oneinthree")
        write(cfg, f"onein3_{i:03d}", gen_from_1in3sat(f),
              certificate_from_assignment(f, a, "oneinthree") if ok else None)
        f = CnfFormula(3, [tuple(rng.randint(1, 3) for _ in range(3)) for _ in range(rng.randint(1, 3))])
        ok, a = sat_bruteforce(f, "nae")
        write(cfg, f"nae_{i:03d}", gen_from_nae34sat(f),
              certificate_from_assignment(f, a, "nae34") if ok else None)
        count += 2
    for i in range(cfg.crossmatch_count):
        n = rng.randint(1, 3)
        verts = list(range(2 * n))
        edges = [p for p in itertools.combinations(verts, 2) if rng.random() < 0.5]
        cm = CrossMatchingInstance(LabeledGraph(verts, edges), verts[:n], verts[n:])
        m = crossmatch_bruteforce(cm)
        write(cfg, f"crossmatch_{i:03d}", gen_from_crossmatching(cm),
              certificate_crossmatch(m) if m is not None else None)
        count += 1
    return count


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", type=Path)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--random-count", type=int, default=20)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--max-k", type=int, default=4)
    ap.add_argument("--sat-count", type=int, default=10)
    ap.add_argument("--crossmatch-count", type=int, default=10)
    args = ap.parse_args()
    cfg = CorpusConfig(**vars(args))
    print(f"wrote {build(cfg)} instances to {cfg.out}")


if __name__ == "__main__":
    main()
