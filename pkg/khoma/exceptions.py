"""
Exception hierarchy for the khoma engine
"""
from typing import Any, Optional


class KhomaError(Exception):
    """Base class for every error raised by the engine"""


class DiagramError(KhomaError, ValueError):
    """A planar diagram is malformed or unusable for the requested operation"""


class PDParseError(DiagramError):
    """PD-code text does not match the grammar or fails validation"""

    def __init__(self, message: str, text: Optional[str] = None):
        super().__init__(message)
        self.text = text


class PreconditionError(KhomaError, ValueError):
    """An operation was called outside its precondition"""


class ConsistencyError(KhomaError):
    """An internal identity failed to hold (a convention bug, never bad input)"""


class ChainComplexError(KhomaError):
    """d∘d ≠ 0, a map that is not a chain map, or a pivot that is not a unit"""


class FiltrationError(ChainComplexError):
    """A differential entry or an elimination would lower the filtration"""


class CrossingLimitError(KhomaError):
    """The diagram is too large for an exponential operation"""

    def __init__(self, operation: str, crossings: int, limit: int):
        super().__init__(
            f"{operation} refuses diagrams with {crossings} crossings "
            f"(limit {limit}, raise KHOMA_MAX_CROSSINGS to allow)"
        )
        self.operation = operation
        self.crossings = crossings
        self.limit = limit


class CheckFailure(KhomaError):
    """A verification checker found a violated identity"""

    def __init__(self, report: Any):
        super().__init__(f"check '{report.name}' failed on {report.diagram}: {'; '.join(report.failures)}")
        self.report = report
