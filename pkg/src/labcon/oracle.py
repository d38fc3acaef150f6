"""Reference solvers based on exhaustive witness-partition enumeration.

``solve_bruteforce`` walks a mixed-radix counter: free vertices (those of
``V(G) \\ V(H)``) sorted by label are the digits, and sorted H-labels are the
digit values.  The first valid partition in that order is returned, so the
certificate does not depend on pruning or on the number of workers.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor

from .errors import BudgetExceeded
from .graph import (
    InstancePair,
    LabeledGraph,
    WitnessStructure,
    check_witness,
    has_uncovered_component,
    witness_to_sequence,
)
from .result import NO, YES, MaxCommonResult, SolveResult

DEFAULT_BUDGET = 10**8


class _Search:
    def __init__(self, inst: InstancePair, prune: bool, budget: int):
        self.inst = inst
        self.prune = prune
        self.budget = budget
        self.steps = 0
        self.checked = 0
        self.classes = sorted(inst.h.vertices)
        self.free = inst.free_vertices()
        g = inst.g
        self.gadj = {v: g.neighbors(v) for v in g.vertices}
        self.hadj = {v: inst.h.neighbors(v) for v in inst.h.vertices}
        self.hedges = inst.h.edges()
        self.owner = {h: h for h in self.classes}

    def _tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceeded(self.budget, "partition steps")

    def _consistent(self, x: int, h: int) -> bool:
        """Monotone checks after placing ``x`` into class ``h``."""
        owner = self.owner
        hn = self.hadj[h]
        for y in self.gadj[x]:
            c = owner.get(y)
            if c is not None and c != h and c not in hn:
                return False
        touched = {h}
        for y in self.gadj[x]:
            c = owner.get(y)
            if c is not None:
                touched.add(c)
        for c in touched:
            if not self._reachable(c):
                return False
        for a, b in self.hedges:
            if not self._edge_possible(a, b):
                return False
        return True

    def _reachable(self, c: int) -> bool:
        # every placed member of c must reach c through c-members or unplaced vertices
        owner = self.owner
        seen = {c}
        stack = [c]
        while stack:
            x = stack.pop()
            for y in self.gadj[x]:
                if y not in seen:
                    oy = owner.get(y)
                    if oy is None or oy == c:
                        seen.add(y)
                        stack.append(y)
        return all(v in seen for v, o in owner.items() if o == c)

    def _edge_possible(self, a: int, b: int) -> bool:
        # some G-edge must still be able to join class a to class b
        owner = self.owner
        for p, ns in self.gadj.items():
            op = owner.get(p)
            if op is not None and op != a:
                continue
            for q in ns:
                oq = owner.get(q)
                if oq is None or oq == b:
                    return True
        return False

    def _leaf(self) -> WitnessStructure | None:
        self.checked += 1
        w = WitnessStructure.from_assignment(self.owner)
        return w if check_witness(self.inst, w).valid else None

    def run(self, first_digit: int | None = None) -> WitnessStructure | None:
        if not self.free:
            self._tick()
            return self._leaf()
        if not self.prune:
            return self._run_plain(first_digit)
        return self._dfs(0, first_digit)

    def _dfs(self, i: int, first_digit: int | None) -> WitnessStructure | None:
        if i == len(self.free):
            return self._leaf()
        x = self.free[i]
        choices = self.classes if (i > 0 or first_digit is None) else [self.classes[first_digit]]
        for h in choices:
            self._tick()
            self.owner[x] = h
            if self._consistent(x, h):
                found = self._dfs(i + 1, first_digit)
                if found is not None:
                    return found
            del self.owner[x]
        return None

    def _run_plain(self, first_digit: int | None) -> WitnessStructure | None:
        heads = self.classes if first_digit is None else [self.classes[first_digit]]
        for head in heads:
            for rest in itertools.product(self.classes, repeat=len(self.free) - 1):
                self._tick()
                for x, h in zip(self.free, (head,) + rest):
                    self.owner[x] = h
                found = self._leaf()
                if found is not None:
                    return found
        return None


def _shard(args):
    inst, prune, budget, digit = args
    s = _Search(inst, prune, budget)
    try:
        w = s.run(digit)
    except BudgetExceeded:
        return digit, "budget", s.steps, s.checked
    return digit, w, s.steps, s.checked


def solve_bruteforce(
    inst: InstancePair,
    prune: bool = True,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> SolveResult:
    """Decide contractibility by enumerating witness partitions.

    ``prune=False`` checks only complete partitions.  With ``workers > 1``
    the first digit is sharded over processes and the smallest successful
    shard wins, which reproduces the single-process certificate.
    """
    t0 = time.perf_counter()
    stats = {"partitions": 0, "steps": 0}
    if has_uncovered_component(inst):
        stats["ms"] = (time.perf_counter() - t0) * 1000
        stats["short_circuit"] = "component without H-vertex"
        return SolveResult(NO, None, stats)
    free = inst.free_vertices()
    if workers > 1 and free and inst.h.num_vertices > 1:
        jobs = [(inst, prune, budget, d) for d in range(inst.h.num_vertices)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = sorted(pool.map(_shard, jobs), key=lambda r: r[0])
        witness = None
        for digit, w, steps, checked in outcomes:
            stats["steps"] += steps
            stats["partitions"] += checked
            if w == "budget":
                raise BudgetExceeded(budget, "partition steps")
            if w is not None and witness is None:
                witness = w
    else:
        search = _Search(inst, prune, budget)
        witness = search.run()
        stats["steps"] = search.steps
        stats["partitions"] = search.checked
    stats["ms"] = (time.perf_counter() - t0) * 1000
    if witness is None:
        return SolveResult(NO, None, stats)
    return SolveResult(YES, witness, stats)


# ---------------------------------------------------------------------------
# maximum common labeled contraction


def _connected_partitions(h: LabeledGraph):
    """Yield partitions of V(h) into connected blocks (restricted growth order)."""
    verts = sorted(h.vertices)
    blocks: list[list[int]] = []

    def go(i):
        if i == len(verts):
            if all(h.is_connected_subset(b) for b in blocks):
                yield [list(b) for b in blocks]
            return
        v = verts[i]
        for b in blocks:
            b.append(v)
            yield from go(i + 1)
            b.pop()
        blocks.append([v])
        yield from go(i + 1)
        blocks.pop()

    yield from go(0)


def contraction_candidates(h: LabeledGraph, allowed_reps: frozenset[int] | None = None):
    """Distinct labeled contractions of ``h`` with their witness structures.

    Representatives are restricted to ``allowed_reps`` when given.
    """
    seen = {}
    for blocks in _connected_partitions(h):
        options = []
        for b in blocks:
            reps = [v for v in b if allowed_reps is None or v in allowed_reps]
            if not reps:
                break
            options.append(reps)
        else:
            for reps in itertools.product(*options):
                owner = {}
                for rep, b in zip(reps, blocks):
                    for v in b:
                        owner[v] = rep
                edges = set()
                for a, b in h.edges():
                    ca, cb = owner[a], owner[b]
                    if ca != cb:
                        edges.add((min(ca, cb), max(ca, cb)))
                hp = LabeledGraph(sorted(reps), sorted(edges))
                if hp not in seen:
                    seen[hp] = WitnessStructure.from_assignment(owner)
    return list(seen.items())


def solve_maxcommon(
    g: LabeledGraph, h: LabeledGraph, k: int, budget: int = DEFAULT_BUDGET
) -> MaxCommonResult:
    """Find M with G/S1 = M = H/S2 and |S1| + |S2| <= k, if one exists."""
    if k < 0:
        raise ValueError("k must be non-negative")
    t0 = time.perf_counter()
    common = g.vertex_set & h.vertex_set
    cands = contraction_candidates(h, common)
    cands.sort(key=lambda item: (-item[0].num_vertices, sorted(item[0].vertices), item[0].edges()))
    tried = 0
    steps = 0
    for hp, wh in cands:
        cost = (g.num_vertices - hp.num_vertices) + (h.num_vertices - hp.num_vertices)
        if cost > k:
            continue
        tried += 1
        res = solve_bruteforce(InstancePair(g, hp), budget=max(1, budget - steps))
        steps += res.stats.get("steps", 0)
        if res.yes:
            stats = {"candidates": tried, "steps": steps, "ms": (time.perf_counter() - t0) * 1000}
            return MaxCommonResult(
                YES,
                hp,
                witness_to_sequence(res.certificate, g),
                witness_to_sequence(wh, h),
                stats,
            )
    stats = {"candidates": tried, "steps": steps, "ms": (time.perf_counter() - t0) * 1000}
    return MaxCommonResult(NO, None, None, None, stats)


__all__ = ["solve_bruteforce", "solve_maxcommon", "contraction_candidates", "DEFAULT_BUDGET"]
