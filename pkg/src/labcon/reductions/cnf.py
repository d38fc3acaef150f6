"""3-CNF formulas and an exhaustive satisfiability oracle."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidInstance, TooManyVariables

MAX_SAT_VARS = 24
SEMANTICS = ("oneinthree", "nae", "vanilla")


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.num_vars < 0:
            raise InvalidInstance("num_vars must be non-negative")
        for c in clauses:
            if len(c) != 3:
                raise InvalidInstance(f"clause {c} does not have exactly 3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise InvalidInstance(f"literal {lit} out of range 1..{self.num_vars}")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def is_positive(self) -> bool:
        return all(l > 0 for c in self.clauses for l in c)

    def occurrences(self) -> dict[int, int]:
        occ: dict[int, int] = {}
        for c in self.clauses:
            for var in {abs(l) for l in c}:
                occ[var] = occ.get(var, 0) + 1
        return occ


def clause_ok(values: list[bool], semantics: str) -> bool:
    trues = sum(values)
    if semantics == "oneinthree":
        return trues == 1
    if semantics == "nae":
        return 0 < trues < 3
    if semantics == "vanilla":
        return trues > 0
    raise ValueError(f"unknown semantics {semantics!r}")


def satisfies(f: CnfFormula, assignment, semantics: str) -> bool:
    """``assignment`` maps variable index (1-based) to bool."""
    for c in f.clauses:
        vals = [assignment[abs(l)] if l > 0 else not assignment[abs(l)] for l in c]
        if not clause_ok(vals, semantics):
            return False
    return True


def sat_bruteforce(f: CnfFormula, semantics: str = "vanilla"):
    """Return ``(True, assignment)`` for the first satisfying assignment, else ``(False, None)``.

    Assignments are visited as binary counters with ``x1`` as the lowest bit.
    """
    if semantics not in SEMANTICS:
        raise ValueError(f"unknown semantics {semantics!r}")
    if f.num_vars > MAX_SAT_VARS:
        raise TooManyVariables(f"{f.num_vars} variables exceed the limit of {MAX_SAT_VARS}")
    n = f.num_vars
    for mask in range(1 << n):
        assignment = {i + 1: bool(mask >> i & 1) for i in range(n)}
        if satisfies(f, assignment, semantics):
            return True, assignment
    return False, None


def all_solutions(f: CnfFormula, semantics: str):
    if f.num_vars > MAX_SAT_VARS:
        raise TooManyVariables(f"{f.num_vars} variables exceed the limit of {MAX_SAT_VARS}")
    n = f.num_vars
    for mask in range(1 << n):
        assignment = {i + 1: bool(mask >> i & 1) for i in range(n)}
        if satisfies(f, assignment, semantics):
            yield assignment
