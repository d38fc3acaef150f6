"""Bounded-degree instances from positive NAE-3-SAT with at most 4 occurrences per variable.

H is the path ``v_1 .. v_p`` with ``p = 2m + 2`` a power of two.  G hangs a
levelled tree below each end of the path.  Level ``l`` on the left holds the
vertices that must join ``v_l``; its first entry is ``v_l`` itself.  The
bottom level is ``[v_{p/2}, d, C_1, a_1, ..., C_m, a_m]``.  Level sizes double
from 1 until they reach ``p``; inner levels are chained left to right, and
the ``i``-th vertex of level ``l+1`` hangs below vertex ``floor(i*s_l/s_{l+1})``
of level ``l``.  With ``m = 3`` this is the eight-vertex layout with two
complete binary trees of depth three.  The right side mirrors the left.

Labels: ``v_l = l``; then left non-path vertices level by level, right
non-path vertices level by level, then one vertex per occurring variable in
index order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import AssignmentDoesNotSatisfy, NegativeLiteral, VariableOccursTooOften
from ..graph import (
    ContractionSequence,
    InstancePair,
    LabeledGraph,
    WitnessStructure,
    apply_sequence,
    witness_to_sequence,
)
from .cnf import CnfFormula, satisfies

MAX_OCCURRENCES = 4


def _is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


def pad_formula(f: CnfFormula) -> CnfFormula:
    """Add clauses until ``2m + 2`` is a power of two.

    The last clause is duplicated while that keeps every variable within
    four occurrences; otherwise a clause on three fresh variables is added.
    """
    clauses = list(f.clauses)
    n = f.num_vars
    occ = f.occurrences()
    while not clauses or not _is_power_of_two(2 * len(clauses) + 2):
        last = clauses[-1] if clauses else None
        if last is not None and all(occ.get(v, 0) < MAX_OCCURRENCES for v in set(last)):
            clauses.append(last)
            for v in set(last):
                occ[v] = occ.get(v, 0) + 1
        else:
            fresh = (n + 1, n + 2, n + 3)
            n += 3
            clauses.append(fresh)
            for v in fresh:
                occ[v] = 1
    return CnfFormula(n, tuple(clauses))


def extend_assignment(f: CnfFormula, padded: CnfFormula, assignment) -> dict:
    """Values for the fresh padding variables: first of each triple true, the rest false."""
    out = dict(assignment)
    for v in range(f.num_vars + 1, padded.num_vars + 1):
        out[v] = (v - f.num_vars - 1) % 3 == 0
    return out


def level_sizes(p: int) -> list[int]:
    depth = p // 2
    sizes = [1]
    for level in range(2, depth + 1):
        sizes.append(p if level == depth else min(2 ** (level - 1), p))
    return sizes


@dataclass
class NaeLayout:
    p: int
    left: list[list[int]] = field(default_factory=list)
    right: list[list[int]] = field(default_factory=list)
    clause: list[int] = field(default_factory=list)
    aux: list[int] = field(default_factory=list)
    clause_p: list[int] = field(default_factory=list)
    aux_p: list[int] = field(default_factory=list)
    var: dict[int, int] = field(default_factory=dict)


def build_nae(f: CnfFormula):
    """Return ``(instance, layout, padded_formula)``."""
    if not f.is_positive():
        raise NegativeLiteral("NAE generator needs positive literals")
    for var, count in f.occurrences().items():
        if count > MAX_OCCURRENCES:
            raise VariableOccursTooOften(f"variable {var} occurs in {count} clauses")
    padded = pad_formula(f)
    m = padded.num_clauses
    p = 2 * m + 2
    half = p // 2
    sizes = level_sizes(p)
    lay = NaeLayout(p)
    counter = p + 1

    def build_side(path_labels):
        nonlocal counter
        levels = []
        for level, size in enumerate(sizes):
            row = [path_labels[level]]
            for _ in range(size - 1):
                row.append(counter)
                counter += 1
            levels.append(row)
        return levels

    lay.left = build_side([l for l in range(1, half + 1)])
    lay.right = build_side([p + 1 - r for r in range(1, half + 1)])
    bottom, bottom_p = lay.left[-1], lay.right[-1]
    lay.clause = bottom[2::2]
    lay.aux = bottom[3::2]
    lay.clause_p = bottom_p[2::2]
    lay.aux_p = bottom_p[3::2]

    edges = [(l, l + 1) for l in range(1, p)]
    for levels in (lay.left, lay.right):
        for level in range(len(levels) - 1):
            upper, lower = levels[level], levels[level + 1]
            for i, x in enumerate(lower):
                edges.append((upper[i * len(upper) // len(lower)], x))
            if 0 < level:
                edges += list(zip(upper, upper[1:]))
        low = levels[-1]
        aux = low[3::2]
        edges.append((low[0], low[1]))
        edges.append((aux[0], low[0]))
        edges += list(zip(aux, aux[1:]))
    edges.append((bottom[1], bottom_p[1]))
    edges += list(zip(lay.clause, lay.clause_p))
    edges += list(zip(lay.aux, lay.aux_p))

    occurring = sorted({v for c in padded.clauses for v in c})
    for v in occurring:
        lay.var[v] = counter
        counter += 1
    for j, c in enumerate(padded.clauses):
        for v in set(c):
            u = lay.var[v]
            edges += [(u, lay.clause[j]), (u, lay.aux[j]), (u, lay.clause_p[j]), (u, lay.aux_p[j])]

    vertices = list(range(1, counter))
    g = LabeledGraph(vertices, edges)
    h = LabeledGraph(range(1, p + 1), [(l, l + 1) for l in range(1, p)])
    return InstancePair(g, h), lay, padded


def gen_from_nae34sat(f: CnfFormula) -> InstancePair:
    return build_nae(f)[0]


def certificate_nae(f: CnfFormula, assignment) -> ContractionSequence:
    """Forward certificate; ``assignment`` covers the unpadded variables."""
    inst, lay, padded = build_nae(f)
    full = extend_assignment(f, padded, assignment)
    if not satisfies(padded, full, "nae"):
        raise AssignmentDoesNotSatisfy("assignment is not a not-all-equal solution")
    first_clause = {}
    for j, c in enumerate(padded.clauses):
        for v in c:
            first_clause.setdefault(v, j)
    pairs = []
    for v, u in sorted(lay.var.items()):
        j = first_clause[v]
        keep = lay.aux[j] if full[v] else lay.aux_p[j]
        pairs.append((keep, u))
    g1 = apply_sequence(inst.g, pairs)
    owner = {}
    for levels in (lay.left, lay.right):
        for row in levels:
            for x in row:
                owner[x] = row[0]
    rest = witness_to_sequence(WitnessStructure.from_assignment(owner), g1)
    return ContractionSequence(tuple(pairs) + rest.pairs)
