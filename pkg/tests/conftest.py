"""Shared fixtures, hypothesis strategies and an independent reference oracle."""

import itertools

import pytest
from hypothesis import strategies as st

from labcon.graph import InstancePair, LabeledGraph, contract_edge
from labcon.reductions import gen_random


def path(*labels):
    return LabeledGraph(labels, list(zip(labels, labels[1:])))


def complete(labels):
    return LabeledGraph(labels, list(itertools.combinations(labels, 2)))


def reachable_contractions(g: LabeledGraph, max_steps=None) -> set:
    """Every graph obtainable from ``g`` by labeled contractions, found by
    exploring sequences directly rather than witness partitions."""
    seen = {g}
    frontier = [g]
    step = 0
    while frontier and (max_steps is None or step < max_steps):
        nxt = []
        for x in frontier:
            for u, v in x.edges():
                for a, b in ((u, v), (v, u)):
                    y = contract_edge(x, a, b)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
        frontier = nxt
        step += 1
    return seen


def sequence_oracle(inst: InstancePair) -> bool:
    return inst.h in reachable_contractions(inst.g, inst.k)


@st.composite
def small_graphs(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    labels = sorted(draw(st.sets(st.integers(0, 20), min_size=n, max_size=n)))
    pairs = list(itertools.combinations(labels, 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return LabeledGraph(labels, [p for p, keep in zip(pairs, mask) if keep])


@st.composite
def small_instances(draw, max_n=7, max_k=3):
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(1, min(max_k, n - 1)))
    seed = draw(st.integers(0, 10**6))
    mode = draw(st.sampled_from(["yes", "perturbed"]))
    density = draw(st.sampled_from([0.2, 0.4, 0.7]))
    return gen_random(n, k, seed, mode, density).instance


@pytest.fixture
def path_edge():
    """G = path 1-2-3, H = the single edge (1,3)."""
    return InstancePair(path(1, 2, 3), LabeledGraph([1, 3], [(1, 3)]))
