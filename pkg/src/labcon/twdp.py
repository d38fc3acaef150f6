"""Dynamic program over a nice tree decomposition of G ∪ H.

A partial solution below a node is a forest on the processed vertices in
which every H-vertex is a root and every other vertex either has a parent
along a processed G-edge or is still a root waiting for one.  Trees rooted
at an H-vertex ``h`` are (partial) witness classes labelled ``h``; trees
rooted at a non-H vertex are *explorer pieces*, whose root must stay in the
bag until it receives a parent.

A signature records, positionally over the sorted bag:

``tokens``
    for each bag vertex the root of its tree: an H-label (the class, i.e.
    the originator) or the in-bag explorer root.  ``tokens[u] == u`` for a
    non-H vertex means ``u`` is an explorer; H-vertices always map to
    themselves.
``req``
    ``(h1, h2, sat)`` for every H-edge between two live classes, ``sat``
    telling whether the adjacency is already realized.
``adj``
    pseudo-adjacencies: processed G-edges between two different trees at
    least one of which is still an explorer piece, keyed by tree roots.

A class is live while a bag vertex belongs to it or an ``adj`` pair names
it.  A class that stops being live can never gain members or neighbours,
so its pending requirements must already be met.
"""

from __future__ import annotations

import time
from typing import Iterable

from .decomposition import (
    FORGET,
    INTRODUCE,
    INTRODUCE_EDGE,
    JOIN,
    LEAF,
    NiceTreeDecomposition,
)
from .errors import InvalidDecomposition
from .graph import (
    InstancePair,
    WitnessStructure,
    check_witness,
    has_uncovered_component,
    union_graph,
)
from .result import NO, YES, SolveResult

# signature = (tokens: tuple, req: frozenset[(h1, h2, sat)], adj: frozenset[(a, b)])
EMPTY = ((), frozenset(), frozenset())


class DPContext:
    def __init__(self, inst: InstancePair):
        self.inst = inst
        self.hset = inst.h.vertex_set
        self.hadj = {v: inst.h.neighbors(v) for v in inst.h.vertices}
        self.g = inst.g


def _pair(a, b):
    return (a, b) if a < b else (b, a)


def _normalize(tokens, req, adj, ctx: DPContext):
    """Drop requirements of dead classes; None if a dead class is unsatisfied."""
    hset = ctx.hset
    live = {t for t in tokens if t in hset}
    for a, b in adj:
        if a in hset:
            live.add(a)
        if b in hset:
            live.add(b)
    kept = []
    for entry in req:
        if entry[0] in live and entry[1] in live:
            kept.append(entry)
        elif not entry[2]:
            return None
    return frozenset(kept)


def _mark_sat(req: set, a, b):
    a, b = _pair(a, b)
    req.discard((a, b, False))
    req.add((a, b, True))


def _remap_adj(adj: Iterable, mapping: dict, req: set, ctx: DPContext):
    """Rename tree roots in ``adj``; class-class pairs are resolved into ``req``."""
    hset, hadj = ctx.hset, ctx.hadj
    out = set()
    for a, b in adj:
        a = mapping.get(a, a)
        b = mapping.get(b, b)
        if a == b:
            continue
        if a in hset and b in hset:
            if b not in hadj[a]:
                return None
            _mark_sat(req, a, b)
        else:
            out.add(_pair(a, b))
    return out


# ---------------------------------------------------------------------------
# transitions; each returns {signature: backpointer}


def transition_leaf() -> dict:
    return {EMPTY: None}


def transition_introduce_vertex(child: dict, bag: tuple, x: int, ctx: DPContext) -> dict:
    """``bag`` is the child's sorted bag; ``x`` is inserted into it."""
    pos = sum(1 for b in bag if b < x)
    is_h = x in ctx.hset
    out = {}
    for sig in child:
        tokens, req, adj = sig
        new_tokens = tokens[:pos] + (x,) + tokens[pos:]
        if is_h:
            live = {t for t in tokens if t in ctx.hset}
            for a, b in adj:
                live.update(v for v in (a, b) if v in ctx.hset)
            new_req = set(req)
            for hv in live:
                if hv in ctx.hadj[x]:
                    new_req.add((*_pair(x, hv), False))
            req = frozenset(new_req)
        out.setdefault((new_tokens, req, adj), sig)
    return out


def transition_forget(child: dict, bag: tuple, x: int, ctx: DPContext) -> dict:
    """``bag`` is the child's sorted bag containing ``x``."""
    pos = bag.index(x)
    is_h = x in ctx.hset
    out = {}
    for sig in child:
        tokens, req, adj = sig
        if not is_h and tokens[pos] == x:
            continue  # an explorer root can no longer receive a parent
        new_tokens = tokens[:pos] + tokens[pos + 1:]
        new_req = _normalize(new_tokens, req, adj, ctx)
        if new_req is None:
            continue
        out.setdefault((new_tokens, new_req, adj), sig)
    return out


def transition_introduce_edge(child: dict, bag: tuple, u: int, v: int, ctx: DPContext) -> dict:
    """Backpointers are ``(child_sig, merge)`` with ``merge = (parent, child)`` or None."""
    if not ctx.g.has_edge(u, v):
        # an edge of H only: nothing is processed in G
        return {sig: (sig, None) for sig in child}
    hset, hadj = ctx.hset, ctx.hadj
    iu, iv = bag.index(u), bag.index(v)
    out = {}
    for sig in child:
        tokens, req, adj = sig
        tu, tv = tokens[iu], tokens[iv]

        # (a) the edge joins two trees without becoming a tree edge
        if tu == tv:
            out.setdefault(sig, (sig, None))
        elif tu in hset and tv in hset:
            if tv in hadj[tu]:
                r = set(req)
                _mark_sat(r, tu, tv)
                out.setdefault((tokens, frozenset(r), adj), (sig, None))
        else:
            out.setdefault((tokens, req, adj | {_pair(tu, tv)}), (sig, None))

        # (b)/(c) the edge becomes the parent edge of an explorer root
        for child_root, parent, target in ((v, u, tu), (u, v, tv)):
            if child_root in hset:
                continue
            if tokens[bag.index(child_root)] != child_root or target == child_root:
                continue
            new_tokens = tuple(target if t == child_root else t for t in tokens)
            r = set(req)
            new_adj = _remap_adj(adj, {child_root: target}, r, ctx)
            if new_adj is None:
                continue
            new_req = _normalize(new_tokens, r, new_adj, ctx)
            if new_req is None:
                continue
            out.setdefault((new_tokens, new_req, frozenset(new_adj)), (sig, (parent, child_root)))
    return out


def _combine(bag, left, right, ctx: DPContext):
    hset = ctx.hset
    lt, rt = left[0], right[0]
    idx = {b: i for i, b in enumerate(bag)}
    resolved: dict[int, int] = {}

    def root_of(x):
        # x is a bag vertex; follow the side on which it has a parent
        path = []
        cur = x
        while True:
            if cur in resolved:
                r = resolved[cur]
                break
            if cur in hset:
                r = cur
                break
            if cur in path:
                return None  # the two sides close a cycle
            path.append(cur)
            i = idx[cur]
            a, b = lt[i], rt[i]
            if a == cur and b == cur:
                r = cur
                break
            nxt = a if a != cur else b
            if nxt in hset:
                r = nxt
                break
            cur = nxt
        for p in path:
            resolved[p] = r
        return r

    for i, x in enumerate(bag):
        if x not in hset and lt[i] != x and rt[i] != x:
            return None  # a parent on both sides
    tokens = []
    for x in bag:
        r = root_of(x)
        if r is None:
            return None
        tokens.append(r)
    tokens = tuple(tokens)
    mapping = {x: resolved.get(x, x) for x in bag if x not in hset}
    req = set()
    for entry in left[1] | right[1]:
        if entry[2]:
            req.add(entry)
    for a, b, s in left[1] | right[1]:
        if not s and (a, b, True) not in req:
            req.add((a, b, False))
    adj = set()
    for side in (left[2], right[2]):
        part = _remap_adj(side, mapping, req, ctx)
        if part is None:
            return None
        adj |= part
    new_req = _normalize(tokens, req, adj, ctx)
    if new_req is None:
        return None
    return tokens, new_req, frozenset(adj)


def transition_join(left: dict, right: dict, bag: tuple, ctx: DPContext) -> dict:
    """Backpointers are ``(left_sig, right_sig)``."""
    hset = ctx.hset

    def mask(sig):
        m = 0
        for i, (x, t) in enumerate(zip(bag, sig[0])):
            if x not in hset and t != x:
                m |= 1 << i
        return m

    groups_r: dict[int, list] = {}
    for sig in right:
        groups_r.setdefault(mask(sig), []).append(sig)
    out = {}
    for ls in left:
        ml = mask(ls)
        for mr, sigs in groups_r.items():
            if ml & mr:
                continue
            for rs in sigs:
                comb = _combine(bag, ls, rs, ctx)
                if comb is not None and comb not in out:
                    out[comb] = (ls, rs)
    return out


# ---------------------------------------------------------------------------


def signature_view(bag: tuple, sig, ctx: DPContext) -> str:
    """Readable line: per vertex its type and originator, then req and adj."""
    tokens, req, adj = sig
    parts = []
    for x, t in zip(bag, tokens):
        if t in ctx.hset:
            kind = "R"  # requester: originator known
            tau = str(t)
        elif t == x:
            kind, tau = "E", "*"  # explorer
        else:
            kind, tau = "D", "*"  # dependent on explorer t
        parts.append(f"{x}:{kind}:{tau}:{t}")
    r = " ".join(f"({a},{b},{'sat' if s else 'unsat'})" for a, b, s in sorted(req))
    a = " ".join(f"({p},{q})" for p, q in sorted(adj))
    return f"[{' '.join(parts)}] R{{{r}}} A{{{a}}}"


def solve_twdp(
    inst: InstancePair,
    ntd: NiceTreeDecomposition,
    trace=None,
    check: bool = True,
) -> SolveResult:
    """Run the DP bottom-up; YES iff the root table holds the empty signature.

    ``trace`` may be a writable text stream receiving every table.
    """
    t0 = time.perf_counter()
    if check:
        report = ntd.check(union_graph(inst))
        if not report.valid:
            raise InvalidDecomposition("; ".join(report.violations))
    stats = {"nodes": len(ntd.nodes), "width": ntd.width}
    if has_uncovered_component(inst):
        stats["max_table"] = 0
        stats["ms"] = (time.perf_counter() - t0) * 1000
        return SolveResult(NO, None, stats)

    ctx = DPContext(inst)
    tables: list[dict | None] = [None] * len(ntd.nodes)
    bags = [tuple(sorted(n.bag)) for n in ntd.nodes]
    sizes = []
    remaining_parents = [0] * len(ntd.nodes)
    for n in ntd.nodes:
        for c in n.children:
            remaining_parents[c] += 1

    for i, node in enumerate(ntd.nodes):
        if node.kind == LEAF:
            table = transition_leaf()
        elif node.kind == INTRODUCE:
            c = node.children[0]
            table = transition_introduce_vertex(tables[c], bags[c], node.vertex, ctx)
        elif node.kind == FORGET:
            c = node.children[0]
            table = transition_forget(tables[c], bags[c], node.vertex, ctx)
        elif node.kind == INTRODUCE_EDGE:
            c = node.children[0]
            table = transition_introduce_edge(tables[c], bags[c], *node.edge, ctx)
        elif node.kind == JOIN:
            a, b = node.children
            table = transition_join(tables[a], tables[b], bags[i], ctx)
        else:
            raise InvalidDecomposition(f"unknown node kind {node.kind!r}")
        tables[i] = table
        sizes.append(len(table))
        if trace is not None:
            trace.write(f"node {i} {node.describe()} bag={list(bags[i])} entries={len(table)}\n")
            for sig in sorted(table, key=repr):
                trace.write("  " + signature_view(bags[i], sig, ctx) + "\n")
        if not table:
            break

    stats["table_sizes"] = sizes
    stats["max_table"] = max(sizes, default=0)
    root_table = tables[ntd.root] or {}
    if EMPTY not in root_table:
        stats["ms"] = (time.perf_counter() - t0) * 1000
        return SolveResult(NO, None, stats)

    parent = _reconstruct(ntd, tables)
    owner = {}
    for x in inst.g.vertices:
        y = x
        while y in parent:
            y = parent[y]
        owner[x] = y
    witness = WitnessStructure.from_assignment(owner)
    if not check_witness(inst, witness).valid:
        raise AssertionError("internal error: reconstructed witness failed verification")
    stats["ms"] = (time.perf_counter() - t0) * 1000
    return SolveResult(YES, witness, stats)


def _reconstruct(ntd: NiceTreeDecomposition, tables) -> dict[int, int]:
    parent: dict[int, int] = {}
    stack = [(ntd.root, EMPTY)]
    while stack:
        i, sig = stack.pop()
        node = ntd.nodes[i]
        bp = tables[i][sig]
        if node.kind == LEAF:
            continue
        if node.kind == INTRODUCE_EDGE:
            child_sig, merge = bp
            if merge is not None:
                p, c = merge
                parent[c] = p
            stack.append((node.children[0], child_sig))
        elif node.kind == JOIN:
            stack.append((node.children[0], bp[0]))
            stack.append((node.children[1], bp[1]))
        else:
            stack.append((node.children[0], bp))
    return parent


__all__ = [
    "DPContext",
    "transition_leaf",
    "transition_introduce_vertex",
    "transition_forget",
    "transition_introduce_edge",
    "transition_join",
    "signature_view",
    "solve_twdp",
]
