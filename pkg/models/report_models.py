"""
Pydantic models for checker reports, corpus entries and run summaries
"""
from datetime import datetime
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field


class CheckReport(BaseModel):
    """Outcome of one checker on one diagram"""
    name: str = Field(..., description="Checker name")
    diagram: str = Field(..., description="Diagram name or PD text")
    passed: bool = Field(..., description="Whether every asserted identity held")
    details: Dict[str, Any] = Field(default_factory=dict, description="JSON-ready computed values")
    failures: List[str] = Field(default_factory=list, description="One line per violated clause")

    def fail(self, message: str) -> None:
        self.failures.append(message)
        self.passed = False


class CorpusEntry(BaseModel):
    """A shipped diagram with the properties the checkers rely on"""
    name: str = Field(..., description="Corpus name")
    pd: str = Field(..., description="PD-code text")
    alternating: bool = Field(..., description="Over/under passages alternate")
    reduced: bool = Field(..., description="No splitting crossing")
    components: int = Field(..., ge=1, description="Number of link components")
    golden: Dict[str, Any] = Field(default_factory=dict, description="Known values (bracket, homology)")

    @property
    def is_knot(self) -> bool:
        return self.components == 1


class ExecutionRecord(BaseModel):
    """One checker run recorded by the runner"""
    checker_name: str
    diagram: str
    status: Literal["success", "failed", "error"]
    error: Optional[str] = None
    timestamp: datetime = Field(default_factory=datetime.now)


class VerificationSummary(BaseModel):
    """Result of running the checkers over the corpus"""
    reports: List[CheckReport] = Field(default_factory=list)
    errors: List[ExecutionRecord] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.errors and all(r.passed for r in self.reports)

    @property
    def failed_reports(self) -> List[CheckReport]:
        return [r for r in self.reports if not r.passed]
