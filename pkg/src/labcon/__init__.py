"""Labeled contractibility: solvers, decompositions, generators and certificates."""

from .branch import BranchConfig, BranchStats, candidate_targets, solve_branch
from .decomposition import (
    NiceTreeDecomposition,
    TreeDecomposition,
    heuristic_decompose,
    nicify,
    validate,
)
from .errors import LabconError
from .graph import (
    ContractionSequence,
    InstancePair,
    LabeledGraph,
    ValidityReport,
    WitnessStructure,
    apply_sequence,
    check_witness,
    contract_edge,
    degeneracy,
    greedy_coloring,
    sequence_to_witness,
    union_graph,
    witness_to_sequence,
)
from .oracle import solve_bruteforce, solve_maxcommon
from .result import NO, YES, MaxCommonResult, SolveResult
from .twdp import solve_twdp

__version__ = "0.1.0"


def solve_twdp_auto(inst: InstancePair):
    """DP over the nicified heuristic decomposition of G ∪ H."""
    u = union_graph(inst)
    return solve_twdp(inst, nicify(heuristic_decompose(u), u))
