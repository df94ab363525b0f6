# Models package for diagrams, invariants and reports
from .diagram_models import BlackGraph, Coloring, PlanarDiagram, ResolutionWord, StateDiagram
from .invariant_models import (
    AlternatingInvariants,
    BigradedHomology,
    ExpansionLeaf,
    HomologyGroup,
    LeeHomology,
    PeeledKink,
    RankTable,
    TreeSize,
)
from .report_models import CheckReport, CorpusEntry, ExecutionRecord, VerificationSummary

__all__ = [
    "BlackGraph",
    "Coloring",
    "PlanarDiagram",
    "ResolutionWord",
    "StateDiagram",
    "AlternatingInvariants",
    "BigradedHomology",
    "ExpansionLeaf",
    "HomologyGroup",
    "LeeHomology",
    "PeeledKink",
    "RankTable",
    "TreeSize",
    "CheckReport",
    "CorpusEntry",
    "ExecutionRecord",
    "VerificationSummary",
]
