"""Instances from Cross Matching, plus an exhaustive matching oracle."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidPartition
from ..graph import ContractionSequence, InstancePair, LabeledGraph


@dataclass(frozen=True)
class CrossMatchingInstance:
    graph: LabeledGraph
    side_a: frozenset[int]
    side_b: frozenset[int]

    def __post_init__(self):
        a, b = frozenset(self.side_a), frozenset(self.side_b)
        object.__setattr__(self, "side_a", a)
        object.__setattr__(self, "side_b", b)
        if a & b:
            raise InvalidPartition("sides A and B overlap")
        if a | b != self.graph.vertex_set:
            raise InvalidPartition("sides A and B must cover every vertex")
        if len(a) != len(b):
            raise InvalidPartition("sides A and B differ in size")


def extra_labels(cm: CrossMatchingInstance) -> tuple[int, int]:
    top = max(cm.graph.vertices, default=-1)
    return top + 1, top + 2


def gen_from_crossmatching(cm: CrossMatchingInstance) -> InstancePair:
    x1, x2 = extra_labels(cm)
    g0 = cm.graph
    gv = list(g0.vertices) + [x1, x2]
    ge = list(g0.edges())
    for b in sorted(cm.side_b):
        ge += [(x1, b), (x2, b)]
    hv = sorted(cm.side_a) + [x1, x2]
    he = [(a, c) for i, a in enumerate(hv) for c in hv[i + 1:] if {a, c} != {x1, x2}]
    return InstancePair(LabeledGraph(gv, ge), LabeledGraph(hv, he))


def perfect_matchings(cm: CrossMatchingInstance):
    """Yield A-B perfect matchings inside E(G') as sorted ``(a, b)`` lists."""
    a_side = sorted(cm.side_a)
    g = cm.graph

    def go(i, used, acc):
        if i == len(a_side):
            yield list(acc)
            return
        a = a_side[i]
        for b in sorted(g.neighbors(a)):
            if b in cm.side_b and b not in used:
                used.add(b)
                acc.append((a, b))
                yield from go(i + 1, used, acc)
                acc.pop()
                used.discard(b)

    yield from go(0, set(), [])


def crossmatch_bruteforce(cm: CrossMatchingInstance):
    """Return the first matching whose contraction is a clique, or None."""
    g = cm.graph
    for matching in perfect_matchings(cm):
        blocks = [set(pair) for pair in matching]
        ok = True
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                if not any(g.has_edge(x, y) for x in blocks[i] for y in blocks[j]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return matching
    return None


def certificate_crossmatch(matching) -> ContractionSequence:
    return ContractionSequence(tuple((a, b) for a, b in matching))
