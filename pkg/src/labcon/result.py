"""Result records shared by the solvers."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import ContractionSequence, LabeledGraph, WitnessStructure

YES = "YES"
NO = "NO"


@dataclass
class SolveResult:
    answer: str
    certificate: WitnessStructure | None = None
    stats: dict = field(default_factory=dict)

    @property
    def yes(self) -> bool:
        return self.answer == YES


@dataclass
class MaxCommonResult:
    answer: str
    common: LabeledGraph | None = None
    seq_g: ContractionSequence | None = None
    seq_h: ContractionSequence | None = None
    stats: dict = field(default_factory=dict)

    @property
    def yes(self) -> bool:
        return self.answer == YES
