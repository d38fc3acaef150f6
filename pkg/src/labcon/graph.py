"""Uniquely labeled graphs, labeled contraction, and witness structures.

Every vertex is identified by its label (a non-negative integer), so two
graphs are equal exactly when their vertex sets and edge sets coincide.
Contracting the edge ``(u, v)`` keeps ``u`` and deletes ``v``; see
:func:`contract_edge`.
"""

from __future__ import annotations

import heapq
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    InvalidInstance,
    InvalidStep,
    LabconError,
    NonEdge,
    NotAContractionToH,
    NotAPartition,
    RepresentativeMismatch,
    UnknownLabel,
)


def _check_label(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise InvalidInstance(f"labels must be non-negative integers, got {x!r}")
    return x


class LabeledGraph:
    """Immutable simple undirected graph keyed by integer labels.

    ``vertices`` keeps insertion order (file order when parsed); equality
    and hashing ignore it.
    """

    __slots__ = ("_vertices", "_adj", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        order: list[int] = []
        adj: dict[int, set[int]] = {}
        for v in vertices:
            _check_label(v)
            if v not in adj:
                adj[v] = set()
                order.append(v)
        for u, v in edges:
            if u not in adj:
                raise UnknownLabel(u)
            if v not in adj:
                raise UnknownLabel(v)
            if u == v:
                raise InvalidInstance(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        self._vertices = tuple(order)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._hash = None

    @classmethod
    def _raw(cls, vertices: tuple, adj: dict) -> "LabeledGraph":
        g = cls.__new__(cls)
        g._vertices = vertices
        g._adj = adj
        g._hash = None
        return g

    # -- queries ---------------------------------------------------------
    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self._adj)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._vertices)

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return sum(len(ns) for ns in self._adj.values()) // 2

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownLabel(v) from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def max_degree(self) -> int:
        return max((len(ns) for ns in self._adj.values()), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        ns = self._adj.get(u)
        return ns is not None and v in ns

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(min, max)`` pairs in lexicographic order."""
        return sorted((u, v) for u, ns in self._adj.items() for v in ns if u < v)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, ns in self._adj.items() for v in ns if u < v)

    def adjacency(self) -> Mapping[int, frozenset[int]]:
        return self._adj

    def induced(self, keep: Iterable[int]) -> "LabeledGraph":
        keep = set(keep)
        for v in keep:
            if v not in self._adj:
                raise UnknownLabel(v)
        order = tuple(v for v in self._vertices if v in keep)
        return LabeledGraph._raw(order, {v: self._adj[v] & keep for v in order})

    def components(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        out = []
        for s in self._vertices:
            if s in seen:
                continue
            comp = {s}
            queue = [s]
            while queue:
                x = queue.pop()
                for y in self._adj[x]:
                    if y not in comp:
                        comp.add(y)
                        queue.append(y)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def is_connected_subset(self, subset: Iterable[int]) -> bool:
        """True if ``G[subset]`` is connected (the empty set is not)."""
        subset = set(subset)
        if not subset:
            return False
        start = next(iter(subset))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self._adj[x]:
                if y in subset and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(subset)

    # -- dunder ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._adj.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LabeledGraph(vertices={sorted(self._vertices)}, edges={self.edges()})"


@dataclass(frozen=True)
class InstancePair:
    """A Labeled Contractibility input: is ``h`` a labeled contraction of ``g``?"""

    g: LabeledGraph
    h: LabeledGraph

    def __post_init__(self):
        missing = self.h.vertex_set - self.g.vertex_set
        if missing:
            raise InvalidInstance(f"V(H) is not a subset of V(G); extra labels {sorted(missing)}")

    @property
    def k(self) -> int:
        """Number of contractions any solution uses, ``|V(G)| - |V(H)|``."""
        return self.g.num_vertices - self.h.num_vertices

    def free_vertices(self) -> list[int]:
        hv = self.h.vertex_set
        return sorted(v for v in self.g.vertices if v not in hv)


@dataclass(frozen=True)
class ContractionSequence:
    """Ordered ``(keep, remove)`` pairs."""

    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((int(u), int(v)) for u, v in self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


@dataclass(frozen=True)
class WitnessStructure:
    """Map from representative (an H-vertex) to its witness set in G."""

    classes: Mapping[int, frozenset[int]] = field(default_factory=dict)

    def __post_init__(self):
        frozen = {}
        for rep, members in self.classes.items():
            members = frozenset(members)
            if rep not in members:
                raise RepresentativeMismatch(f"class of {rep} does not contain its representative")
            frozen[rep] = members
        object.__setattr__(self, "classes", dict(sorted(frozen.items())))

    @classmethod
    def from_assignment(cls, owner: Mapping[int, int]) -> "WitnessStructure":
        """Build from a vertex -> representative map (representatives map to themselves)."""
        classes: dict[int, set[int]] = {}
        for v, rep in owner.items():
            classes.setdefault(rep, set()).add(v)
        for rep in classes:
            classes[rep].add(rep)
        return cls(classes)

    def owner(self) -> dict[int, int]:
        return {v: rep for rep, members in self.classes.items() for v in members}

    def __eq__(self, other):
        if not isinstance(other, WitnessStructure):
            return NotImplemented
        return dict(self.classes) == dict(other.classes)

    def __hash__(self):
        return hash(frozenset(self.classes.items()))


@dataclass(frozen=True)
class Violation:
    kind: str  # "disconnected" | "missing-edge" | "extra-adjacency"
    classes: tuple[int, ...]

    def __str__(self) -> str:
        if self.kind == "disconnected":
            return f"class {self.classes[0]} is not connected in G"
        if self.kind == "missing-edge":
            a, b = self.classes
            return f"H-edge ({a}, {b}) is not realized: classes {a} and {b} are not adjacent in G"
        a, b = self.classes
        return f"classes {a} and {b} are adjacent in G but ({a}, {b}) is not an edge of H"


@dataclass
class ValidityReport:
    valid: bool
    violations: list = field(default_factory=list)
    width: int | None = None

    def __bool__(self) -> bool:
        return self.valid


# ---------------------------------------------------------------------------
# contraction


def contract_edge(g: LabeledGraph, u: int, v: int) -> LabeledGraph:
    """Return ``g/(u, v)``: ``v`` disappears and ``u`` inherits its neighbours."""
    adj = g._adj
    if u not in adj:
        raise UnknownLabel(u)
    if v not in adj:
        raise UnknownLabel(v)
    if v not in adj[u]:
        raise NonEdge(u, v)
    new = dict(adj)
    nv = adj[v]
    for w in nv:
        if w != u:
            new[w] = (adj[w] - {v}) | {u}
    new[u] = (adj[u] | nv) - {u, v}
    del new[v]
    return LabeledGraph._raw(tuple(x for x in g._vertices if x != v), new)


def apply_sequence(g: LabeledGraph, s: ContractionSequence | Iterable[tuple[int, int]]) -> LabeledGraph:
    pairs = s.pairs if isinstance(s, ContractionSequence) else tuple(s)
    for i, (u, v) in enumerate(pairs):
        try:
            g = contract_edge(g, u, v)
        except (NonEdge, UnknownLabel):
            raise InvalidStep(i, u, v) from None
    return g


# ---------------------------------------------------------------------------
# witness structures


def _check_partition(inst: InstancePair, w: WitnessStructure) -> dict[int, int]:
    hv = inst.h.vertex_set
    keys = set(w.classes)
    if keys != hv:
        raise RepresentativeMismatch(
            f"witness keys {sorted(keys)} differ from V(H) {sorted(hv)}"
        )
    owner: dict[int, int] = {}
    for rep, members in w.classes.items():
        for x in members:
            if x not in inst.g:
                raise NotAPartition(f"class {rep} contains {x}, which is not a vertex of G")
            if x in owner:
                raise NotAPartition(f"vertex {x} appears in classes {owner[x]} and {rep}")
            owner[x] = rep
    uncovered = inst.g.vertex_set - owner.keys()
    if uncovered:
        raise NotAPartition(f"vertices {sorted(uncovered)} are in no class")
    return owner


def class_adjacency(g: LabeledGraph, owner: Mapping[int, int]) -> set[tuple[int, int]]:
    pairs = set()
    for a, b in g.edges():
        ca, cb = owner[a], owner[b]
        if ca != cb:
            pairs.add((ca, cb) if ca < cb else (cb, ca))
    return pairs


def check_witness(inst: InstancePair, w: WitnessStructure) -> ValidityReport:
    """Validate ``w`` against ``inst``, listing every violated constraint.

    Raises :class:`RepresentativeMismatch` or :class:`NotAPartition` when ``w``
    is not even a partition of ``V(G)`` keyed by ``V(H)``.
    """
    owner = _check_partition(inst, w)
    violations = []
    for rep, members in w.classes.items():
        if not inst.g.is_connected_subset(members):
            violations.append(Violation("disconnected", (rep,)))
    realized = class_adjacency(inst.g, owner)
    required = inst.h.edge_set()
    for pair in sorted(required - realized):
        violations.append(Violation("missing-edge", pair))
    for pair in sorted(realized - required):
        violations.append(Violation("extra-adjacency", pair))
    return ValidityReport(not violations, violations)


def witness_to_sequence(
    w: WitnessStructure, g: LabeledGraph, rng: random.Random | None = None
) -> ContractionSequence:
    """Contract every witness set onto its representative, leaves first.

    With ``rng`` the spanning tree and the leaf-first order are randomized;
    otherwise BFS trees with deepest-then-smallest-label order are used.
    """
    pairs: list[tuple[int, int]] = []
    for rep, members in w.classes.items():
        parent = {rep: None}
        depth = {rep: 0}
        queue = deque([rep])
        while queue:
            x = queue.popleft()
            nbrs = [y for y in g.neighbors(x) if y in members and y not in parent]
            if rng is None:
                nbrs.sort()
            else:
                rng.shuffle(nbrs)
            for y in nbrs:
                parent[y] = x
                depth[y] = depth[x] + 1
                queue.append(y)
        if len(parent) != len(members):
            raise NotAPartition(f"class {rep} is not connected in G")
        if rng is None:
            order = sorted((x for x in members if x != rep), key=lambda x: (-depth[x], x))
        else:
            children = {x: 0 for x in members}
            for x, p in parent.items():
                if p is not None:
                    children[p] += 1
            leaves = [x for x in members if x != rep and children[x] == 0]
            order = []
            while leaves:
                x = leaves.pop(rng.randrange(len(leaves)))
                order.append(x)
                p = parent[x]
                children[p] -= 1
                if children[p] == 0 and p != rep:
                    leaves.append(p)
        pairs.extend((parent[x], x) for x in order)
    return ContractionSequence(tuple(pairs))


def sequence_to_witness(inst: InstancePair, s: ContractionSequence) -> WitnessStructure:
    result = apply_sequence(inst.g, s)
    if result != inst.h:
        raise NotAContractionToH("applying the sequence to G does not yield H")
    absorbed_by = {v: u for u, v in s.pairs}
    owner = {}
    for x in inst.g.vertices:
        y = x
        while y in absorbed_by:
            y = absorbed_by[y]
        owner[x] = y
    return WitnessStructure.from_assignment(owner)


def has_uncovered_component(inst: InstancePair) -> bool:
    """True if some component of G has no H-vertex, which forces a NO answer."""
    hv = inst.h.vertex_set
    return any(not (comp & hv) for comp in inst.g.components())


def union_graph(inst: InstancePair) -> LabeledGraph:
    adj = {v: set(inst.g.neighbors(v)) for v in inst.g.vertices}
    for a, b in inst.h.edges():
        adj[a].add(b)
        adj[b].add(a)
    return LabeledGraph._raw(inst.g.vertices, {v: frozenset(ns) for v, ns in adj.items()})


# ---------------------------------------------------------------------------
# degeneracy and coloring


def degeneracy(g: LabeledGraph) -> tuple[int, list[int]]:
    """Degeneracy and the min-degree removal order (ties by smallest label).

    Every vertex has at most ``d`` neighbours appearing after it in ``order``.
    """
    deg = {v: len(ns) for v, ns in g._adj.items()}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    removed: set[int] = set()
    order = []
    d = 0
    while heap:
        dv, v = heapq.heappop(heap)
        if v in removed or dv != deg[v]:
            continue
        d = max(d, dv)
        removed.add(v)
        order.append(v)
        for y in g._adj[v]:
            if y not in removed:
                deg[y] -= 1
                heapq.heappush(heap, (deg[y], y))
    return d, order


def greedy_coloring(g: LabeledGraph) -> dict[int, int]:
    """Proper coloring with at most ``degeneracy(g) + 1`` colors."""
    _, order = degeneracy(g)
    color: dict[int, int] = {}
    for v in reversed(order):
        used = {color[y] for y in g._adj[v] if y in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color


def optimal_coloring(g: LabeledGraph) -> dict[int, int]:
    """Minimum proper coloring by backtracking; exponential, meant for small graphs."""
    if g.num_vertices == 0:
        return {}
    greedy = greedy_coloring(g)
    best_k = max(greedy.values()) + 1
    best = greedy
    order = sorted(g.vertices, key=lambda v: (-g.degree(v), v))

    def attempt(k: int):
        color: dict[int, int] = {}

        def go(i: int) -> bool:
            if i == len(order):
                return True
            v = order[i]
            used = {color[y] for y in g._adj[v] if y in color}
            # symmetry breaking: never open more than one new color at a time
            limit = min(k, max(color.values(), default=-1) + 2)
            for c in range(limit):
                if c not in used:
                    color[v] = c
                    if go(i + 1):
                        return True
                    del color[v]
            return False

        return dict(color) if go(0) else None

    for k in range(best_k - 1, 0, -1):
        found = attempt(k)
        if found is None:
            break
        best = found
    return best


def num_colors(coloring: Mapping[int, int]) -> int:
    return len(set(coloring.values()))


__all__ = [
    "LabeledGraph",
    "InstancePair",
    "ContractionSequence",
    "WitnessStructure",
    "Violation",
    "ValidityReport",
    "contract_edge",
    "apply_sequence",
    "check_witness",
    "class_adjacency",
    "witness_to_sequence",
    "sequence_to_witness",
    "has_uncovered_component",
    "union_graph",
    "degeneracy",
    "greedy_coloring",
    "optimal_coloring",
    "num_colors",
    "LabconError",
]
