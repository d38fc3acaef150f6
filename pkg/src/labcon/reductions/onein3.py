"""Contractibility instances from positive 1-in-3-SAT formulas.

Label layout (deterministic): ``gT = 0``, ``gF = 1``; variable ``i``
(1-based) owns ``u_i, v_i, v_i'`` at ``2 + 3(i-1) + {0, 1, 2}``; clause ``j``
(1-based) owns ``w_j0..w_j3`` at ``2 + 3n + 4(j-1) + {0, 1, 2, 3}``.
"""

from __future__ import annotations

from ..errors import AssignmentDoesNotSatisfy, InvalidInstance, NegativeLiteral
from ..graph import ContractionSequence, InstancePair, LabeledGraph
from .cnf import CnfFormula, satisfies

G_TRUE = 0
G_FALSE = 1


def var_labels(i: int) -> tuple[int, int, int]:
    base = 2 + 3 * (i - 1)
    return base, base + 1, base + 2


def clause_labels(f: CnfFormula, j: int) -> tuple[int, int, int, int]:
    base = 2 + 3 * f.num_vars + 4 * (j - 1)
    return base, base + 1, base + 2, base + 3


def _check(f: CnfFormula):
    for c in f.clauses:
        if any(l < 0 for l in c):
            raise NegativeLiteral(f"clause {c} has a negative literal")
        if len(set(c)) != 3:
            raise InvalidInstance(f"clause {c} repeats a literal")


def gen_from_1in3sat(f: CnfFormula) -> InstancePair:
    _check(f)
    gv = [G_TRUE, G_FALSE]
    ge = [(G_TRUE, G_FALSE)]
    hv = [G_TRUE, G_FALSE]
    he = [(G_TRUE, G_FALSE)]
    for i in range(1, f.num_vars + 1):
        u, v, vp = var_labels(i)
        gv += [u, v, vp]
        hv.append(u)
        ge += [(u, v), (u, vp)]
        for lit in (v, vp):
            ge += [(lit, G_TRUE), (lit, G_FALSE)]
        he += [(u, G_TRUE), (u, G_FALSE)]
    for j, clause in enumerate(f.clauses, start=1):
        w = clause_labels(f, j)
        gv += list(w)
        hv += list(w)
        lits = [var_labels(x)[1] for x in clause]
        ge += [(w[0], l) for l in lits]
        ge += [(w[k], G_TRUE) for k in (1, 2, 3)]
        # alternating 6-cycle w1 - l1 - w2 - l2 - w3 - l3 - w1
        ge += [
            (w[1], lits[0]), (lits[0], w[2]), (w[2], lits[1]),
            (lits[1], w[3]), (w[3], lits[2]), (lits[2], w[1]),
        ]
        for x in w:
            he += [(x, G_TRUE), (x, G_FALSE)]
    return InstancePair(LabeledGraph(gv, ge), LabeledGraph(hv, he))


def certificate_1in3(f: CnfFormula, assignment) -> ContractionSequence:
    """Literal vertex of a true variable goes to gT, its twin to gF; false the other way."""
    _check(f)
    if not satisfies(f, assignment, "oneinthree"):
        raise AssignmentDoesNotSatisfy("assignment is not a 1-in-3 solution")
    pairs = []
    for i in range(1, f.num_vars + 1):
        _, v, vp = var_labels(i)
        if assignment[i]:
            pairs += [(G_TRUE, v), (G_FALSE, vp)]
        else:
            pairs += [(G_FALSE, v), (G_TRUE, vp)]
    return ContractionSequence(tuple(pairs))
