"""Instances from Sub-Cubic Partitioned Vertex Cover, plus an exhaustive oracle.

Each ``s`` in ``S_i`` stands for one ``(k_i + 1)``-subset of ``C_i`` and is
adjacent to exactly that subset and to ``x_i``.  H' keeps the ``(s, x_i)``
edges next to ``(s, y_i)``: both ends are H-vertices joined in G, so no
contraction can remove that edge.

Labels: original vertices keep their labels; then, for each part in order,
``x_i, y_i, z_i`` followed by ``S_i`` in lexicographic subset order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import AssignmentDoesNotSatisfy, InvalidPartition
from ..graph import ContractionSequence, InstancePair, LabeledGraph


@dataclass(frozen=True)
class PvcInstance:
    graph: LabeledGraph
    partition: tuple[frozenset[int], ...]
    budgets: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(frozenset(c) for c in self.partition)
        object.__setattr__(self, "partition", parts)
        object.__setattr__(self, "budgets", tuple(int(k) for k in self.budgets))
        g = self.graph
        if len(parts) != len(self.budgets):
            raise InvalidPartition("one budget per part is required")
        if any(k < 0 for k in self.budgets):
            raise InvalidPartition("budgets must be non-negative")
        seen: set[int] = set()
        for c in parts:
            if not c:
                raise InvalidPartition("parts must be non-empty")
            if c & seen:
                raise InvalidPartition("parts overlap")
            seen |= c
        if seen != g.vertex_set:
            raise InvalidPartition("parts must cover every vertex")
        if g.max_degree() > 3:
            raise InvalidPartition("graph is not sub-cubic")
        for c in parts:
            for v in c:
                if g.neighbors(v) & c:
                    raise InvalidPartition("each part must be an independent set")
        for i, ci in enumerate(parts):
            for cj in parts[i + 1:]:
                crossing = sum(1 for v in ci for w in g.neighbors(v) if w in cj)
                if crossing != 1:
                    raise InvalidPartition("every two parts must share exactly one edge")


@dataclass
class PvcLayout:
    x: list[int]
    y: list[int]
    z: list[int]
    subsets: list[list[tuple[int, frozenset[int]]]]


def build_pvc(p: PvcInstance):
    g = p.graph
    counter = max(g.vertices, default=-1) + 1
    lay = PvcLayout([], [], [], [])
    for i, c in enumerate(p.partition):
        lay.x.append(counter)
        lay.y.append(counter + 1)
        lay.z.append(counter + 2)
        counter += 3
        subs = []
        for combo in itertools.combinations(sorted(c), p.budgets[i] + 1):
            subs.append((counter, frozenset(combo)))
            counter += 1
        lay.subsets.append(subs)

    t = len(p.partition)
    gv = list(g.vertices)
    ge = []
    hv = []
    he = []
    for i, c in enumerate(p.partition):
        x, y, z = lay.x[i], lay.y[i], lay.z[i]
        gv += [x, y, z]
        hv += [x, y, z]
        for v in sorted(c):
            ge += [(x, v), (y, v), (z, v)]
        ge += [(z, x), (z, y)]
        he += [(x, z), (y, z)]
        for s, combo in lay.subsets[i]:
            gv.append(s)
            hv.append(s)
            ge += [(s, v) for v in sorted(combo)]
            ge.append((s, x))
            he += [(s, y), (s, x)]
    index = {v: i for i, c in enumerate(p.partition) for v in c}
    for u, v in g.edges():
        i, j = index[u], index[v]
        ge += [(u, lay.x[j]), (v, lay.x[i])]
    for i in range(t):
        for j in range(t):
            if i < j:
                ge.append((lay.y[i], lay.y[j]))
            ge.append((lay.x[i], lay.y[j]))
    xy = lay.x + lay.y
    he += [(a, b) for k, a in enumerate(xy) for b in xy[k + 1:]]
    return InstancePair(LabeledGraph(gv, ge), LabeledGraph(hv, he)), lay


def gen_from_pvc(p: PvcInstance) -> InstancePair:
    return build_pvc(p)[0]


def is_partitioned_cover(p: PvcInstance, cover) -> bool:
    cover = set(cover)
    if any(not (u in cover or v in cover) for u, v in p.graph.edges()):
        return False
    return all(len(cover & c) <= k for c, k in zip(p.partition, p.budgets))


def pvc_bruteforce(p: PvcInstance):
    """Smallest-first search for a cover respecting every budget; None if absent."""
    verts = sorted(p.graph.vertices)
    for size in range(len(verts) + 1):
        for cover in itertools.combinations(verts, size):
            if is_partitioned_cover(p, cover):
                return set(cover)
    return None


def certificate_pvc(p: PvcInstance, cover) -> ContractionSequence:
    if not is_partitioned_cover(p, cover):
        raise AssignmentDoesNotSatisfy("not a vertex cover within the budgets")
    _, lay = build_pvc(p)
    pairs = []
    for i, c in enumerate(p.partition):
        for v in sorted(c):
            pairs.append((lay.x[i] if v in cover else lay.y[i], v))
    return ContractionSequence(tuple(pairs))
