"""Branch-and-prune search over class assignments, guided by a coloring of H.

Each free vertex ``x`` picks its class among the classes of its already
placed neighbours.  A class ``h`` survives only if it is adjacent in H to
every other neighbouring class, so the surviving options form a clique of H
and their number is bounded by the number of colors in any proper coloring.
A separate "defer" child covers solutions where ``x`` joins a class through
a vertex that is not placed yet.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import BudgetExceeded
from .graph import (
    InstancePair,
    WitnessStructure,
    check_witness,
    greedy_coloring,
    has_uncovered_component,
    num_colors,
    optimal_coloring,
)
from .result import NO, YES, SolveResult

EXACT_COLORING_LIMIT = 20


@dataclass
class BranchConfig:
    coloring_mode: str = "greedy"  # greedy | exact
    node_budget: int = 10**7
    order_strategy: str = "frontier"  # frontier | label

    def __post_init__(self):
        if self.coloring_mode not in ("greedy", "exact"):
            raise ValueError(f"unknown coloring mode {self.coloring_mode!r}")
        if self.order_strategy not in ("frontier", "label"):
            raise ValueError(f"unknown order strategy {self.order_strategy!r}")


@dataclass
class BranchStats:
    nodes_explored: int = 0
    max_branching: int = 0
    depth: int = 0
    max_children: int = 0
    colors: int = 0
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "nodes": self.nodes_explored,
            "max_branching": self.max_branching,
            "depth": self.depth,
            "max_children": self.max_children,
            "colors": self.colors,
        }


def candidate_targets(x, partial, coloring, inst: InstancePair, excluded=()) -> set:
    """Classes ``x`` may still join under ``partial`` (vertex -> class).

    H-vertices are implicitly placed in their own class.  Three filters:
    same-colored H-neighbours of ``x`` rule each other out, the class must be
    reachable from ``x`` through unplaced or same-class vertices, and every
    placed neighbour's class must be the chosen class or adjacent to it in H.
    """
    g, h = inst.g, inst.h
    hset = h.vertex_set

    def cls(y):
        return y if y in hset else partial.get(y)

    cands = set(hset) - set(excluded)

    # (a) coloring: two H-neighbours of one color are non-adjacent in H
    by_color: dict[int, list[int]] = {}
    for y in g.neighbors(x):
        if y in hset:
            by_color.setdefault(coloring[y], []).append(y)
    for group in by_color.values():
        if len(group) > 1:
            cands -= set(group)

    # (c) placed neighbours must stay consistent with E(H)
    nbr_classes = {cls(y) for y in g.neighbors(x)} - {None}
    for c in nbr_classes:
        cands &= set(h.neighbors(c)) | {c}

    # (b) reachability through unplaced or same-class vertices
    out = set()
    for target in cands:
        seen = {x}
        stack = [x]
        hit = False
        while stack and not hit:
            v = stack.pop()
            for y in g.neighbors(v):
                if y == target:
                    hit = True
                    break
                if y in seen or y in hset:
                    continue
                cy = partial.get(y)
                if cy is None or cy == target:
                    seen.add(y)
                    stack.append(y)
        if hit:
            out.add(target)
    return out


def solve_branch(inst: InstancePair, cfg: BranchConfig | None = None) -> SolveResult:
    cfg = cfg or BranchConfig()
    t0 = time.perf_counter()
    stats = BranchStats()
    h = inst.h
    if cfg.coloring_mode == "exact":
        if h.num_vertices > EXACT_COLORING_LIMIT:
            raise ValueError(
                f"exact coloring is limited to |V(H)| <= {EXACT_COLORING_LIMIT}"
            )
        coloring = optimal_coloring(h)
    else:
        coloring = greedy_coloring(h)
    stats.colors = num_colors(coloring)

    def finish(answer, cert):
        d = stats.as_dict()
        d["ms"] = (time.perf_counter() - t0) * 1000
        return SolveResult(answer, cert, d)

    if has_uncovered_component(inst):
        return finish(NO, None)

    g = inst.g
    hset = h.vertex_set
    free = inst.free_vertices()
    partial: dict[int, int] = {}
    excluded: dict[int, set[int]] = {x: set() for x in free}

    def cls(y):
        return y if y in hset else partial.get(y)

    def options_for(x):
        nbr = {cls(y) for y in g.neighbors(x)} - {None}
        nbr -= excluded[x]
        if not nbr:
            return None, nbr
        cands = candidate_targets(x, partial, coloring, inst, excluded[x])
        return sorted(cands & nbr), nbr

    def pick():
        pending = [x for x in free if x not in partial]
        if cfg.order_strategy == "label":
            # plain order: every surviving class is a child, no defer child
            x = pending[0]
            return x, sorted(candidate_targets(x, partial, coloring, inst)), None
        for x in pending:
            opts, nbr = options_for(x)
            if opts is not None:
                return x, opts, nbr
        return None, None, None

    def search(depth):
        stats.nodes_explored += 1
        if stats.nodes_explored > cfg.node_budget:
            raise BudgetExceeded(cfg.node_budget, "search nodes")
        stats.depth = max(stats.depth, depth)
        if len(partial) == len(free):
            w = WitnessStructure.from_assignment({**{v: v for v in hset}, **partial})
            return w if check_witness(inst, w).valid else None
        x, opts, nbr = pick()
        if x is None:
            # no unplaced vertex can still join a neighbouring class
            return None
        stats.max_branching = max(stats.max_branching, len(opts))
        stats.max_children = max(stats.max_children, len(opts) + (nbr is not None))
        for hv in opts:
            partial[x] = hv
            found = search(depth + 1)
            if found is not None:
                return found
            del partial[x]
        if nbr is None:
            return None
        added = nbr - excluded[x]
        excluded[x] |= added
        found = search(depth + 1)
        excluded[x] -= added
        return found

    cert = search(0)
    return finish(YES if cert is not None else NO, cert)


__all__ = ["BranchConfig", "BranchStats", "candidate_targets", "solve_branch"]
