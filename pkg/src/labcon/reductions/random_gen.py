"""Seeded random instances with known answers (yes mode) or oracle-labelled ones."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..graph import ContractionSequence, InstancePair, LabeledGraph, apply_sequence, contract_edge


@dataclass
class GeneratedInstance:
    instance: InstancePair
    certificate: ContractionSequence | None
    mode: str
    seed: int


def random_connected_graph(n: int, rng: random.Random, density: float = 0.3) -> LabeledGraph:
    """Random spanning tree on labels ``0..n-1`` plus independent extra edges."""
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.add((u, v))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < density:
                edges.add((u, v))
    return LabeledGraph(range(n), sorted(edges))


def random_sequence(g: LabeledGraph, k: int, rng: random.Random) -> ContractionSequence:
    pairs = []
    cur = g
    for _ in range(k):
        edges = cur.edges()
        if not edges:
            break
        u, v = rng.choice(edges)
        if rng.random() < 0.5:
            u, v = v, u
        pairs.append((u, v))
        cur = contract_edge(cur, u, v)
    return ContractionSequence(tuple(pairs))


def gen_random(n: int, k: int, seed: int, mode: str = "yes", density: float = 0.3) -> GeneratedInstance:
    """``mode='yes'`` keeps H = G/S; ``'perturbed'`` then toggles one pair of H-vertices."""
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    if mode not in ("yes", "perturbed"):
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    g = random_connected_graph(n, rng, density)
    seq = random_sequence(g, k, rng)
    h = apply_sequence(g, seq)
    if mode == "yes":
        return GeneratedInstance(InstancePair(g, h), seq, mode, seed)
    hv = sorted(h.vertices)
    edges = set(h.edges())
    if len(hv) >= 2:
        a, b = sorted(rng.sample(hv, 2))
        edges ^= {(a, b)}
    return GeneratedInstance(InstancePair(g, LabeledGraph(h.vertices, sorted(edges))), None, mode, seed)
