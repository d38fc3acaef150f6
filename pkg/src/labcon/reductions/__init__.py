"""Instance generators with known answers, and the matching source-problem oracles."""

from .cnf import CnfFormula, all_solutions, sat_bruteforce, satisfies
from .crossmatch import (
    CrossMatchingInstance,
    certificate_crossmatch,
    crossmatch_bruteforce,
    gen_from_crossmatching,
)
from .nae import build_nae, certificate_nae, gen_from_nae34sat, pad_formula
from .onein3 import certificate_1in3, gen_from_1in3sat
from .pvc import PvcInstance, build_pvc, certificate_pvc, gen_from_pvc, pvc_bruteforce
from .random_gen import GeneratedInstance, gen_random


def certificate_from_assignment(f: CnfFormula, assignment, which: str):
    """Forward contraction sequence for a satisfying assignment.

    ``which`` is ``"oneinthree"`` or ``"nae34"``.
    """
    if which == "oneinthree":
        return certificate_1in3(f, assignment)
    if which == "nae34":
        return certificate_nae(f, assignment)
    raise ValueError(f"unknown construction {which!r}")


__all__ = [
    "CnfFormula",
    "CrossMatchingInstance",
    "GeneratedInstance",
    "PvcInstance",
    "all_solutions",
    "build_nae",
    "build_pvc",
    "certificate_1in3",
    "certificate_crossmatch",
    "certificate_from_assignment",
    "certificate_nae",
    "certificate_pvc",
    "crossmatch_bruteforce",
    "gen_from_1in3sat",
    "gen_from_crossmatching",
    "gen_from_nae34sat",
    "gen_from_pvc",
    "gen_random",
    "pad_formula",
    "pvc_bruteforce",
    "sat_bruteforce",
    "satisfies",
]
