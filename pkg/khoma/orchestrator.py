"""
VerificationOrchestrator - runs the checkers over the shipped corpus
"""
import logging
from typing import Generator, Iterable, List, Optional, Union

from models.diagram_models import PlanarDiagram
from models.report_models import CheckReport, CorpusEntry, ExecutionRecord, VerificationSummary
from .bracket import bracket_state_sum
from .corpus import corpus_entries
from .diagram_core import components, disconnecting_smoothing, is_alternating, parse_pd
from .exceptions import KhomaError
from .khovanov import khovanov_homology
from .runner import CheckRunner

logger = logging.getLogger(__name__)

# Crossing limits for the checkers that build larger auxiliary diagrams
HOPF_MAX_CROSSINGS = 4
COLORING_MAX_CROSSINGS = 6

ALL_CHECKS = (
    "corpus", "bracket", "euler", "thm23", "spanning_tree", "clock", "mirror", "r1",
    "alt", "extremal", "hopf", "lee", "lee_degree", "colorings", "orientations",
)


def check_corpus_entry(entry: CorpusEntry, diagram: PlanarDiagram) -> CheckReport:
    """Flags and golden values of a corpus entry against the computed ones"""
    report = CheckReport(name="corpus", diagram=entry.name, passed=True)
    computed_components = len(components(diagram))
    reduced = not any(
        disconnecting_smoothing(diagram, None, c) is not None for c in range(1, len(diagram.crossings) + 1)
    )
    for flag, stated, actual in (
        ("alternating", entry.alternating, is_alternating(diagram)),
        ("reduced", entry.reduced, reduced),
        ("components", entry.components, computed_components),
    ):
        if stated != actual:
            report.fail(f"flag {flag} is {stated}, computed {actual}")
    if "bracket" in entry.golden and str(bracket_state_sum(diagram)) != entry.golden["bracket"]:
        report.fail(f"bracket {bracket_state_sum(diagram)} != golden {entry.golden['bracket']}")
    if "homology" in entry.golden:
        table = khovanov_homology(diagram).to_json_dict()
        if table != entry.golden["homology"]:
            report.fail(f"homology {table} != golden {entry.golden['homology']}")
    return report


class VerificationOrchestrator:
    def __init__(self, runner: Optional[CheckRunner] = None):
        self.runner = runner or CheckRunner()

    def applicable(self, check: str, entry: CorpusEntry) -> bool:
        """Whether the entry's flags meet the checker's preconditions"""
        crossings = len(parse_pd(entry.pd).crossings)
        if check in ("alt",):
            return entry.is_knot and entry.alternating
        if check == "extremal":
            return entry.is_knot and entry.alternating and entry.reduced
        if check == "lee_degree":
            return entry.is_knot
        if check == "hopf":
            return entry.is_knot and crossings <= HOPF_MAX_CROSSINGS
        if check in ("colorings", "orientations"):
            return crossings <= COLORING_MAX_CROSSINGS
        return True

    def run_verification(
        self,
        checks: Iterable[str] = ALL_CHECKS,
        entries: Optional[List[CorpusEntry]] = None,
        numberings: int = 10,
        seed: int = 0,
    ) -> Generator[Union[str, VerificationSummary], None, None]:
        """
        Run every requested checker over the corpus

        Yields progress lines, then the VerificationSummary as the final item.
        """
        checks = list(checks)
        entries = entries if entries is not None else corpus_entries()
        summary = VerificationSummary()

        yield f"🚀 Verifying {len(entries)} corpus diagrams with {len(checks)} checks\n"
        for entry in entries:
            diagram = parse_pd(entry.pd, name=entry.name)
            yield f"📋 {entry.name} ({len(diagram.crossings)} crossings)\n"
            for check in checks:
                if not self.applicable(check, entry):
                    continue
                try:
                    if check == "corpus":
                        report = check_corpus_entry(entry, diagram)
                    elif check == "bracket":
                        report = self.runner.run(check, diagram, numberings=numberings, seed=seed)
                    elif check == "spanning_tree":
                        report = self.runner.run(check, diagram, seed=seed)
                    else:
                        report = self.runner.run(check, diagram)
                except Exception as e:
                    if isinstance(e, KhomaError):
                        logger.debug("%s on %s raised", check, entry.name, exc_info=True)
                        error = str(e)
                    else:
                        logger.error("%s on %s crashed", check, entry.name, exc_info=True)
                        error = f"{type(e).__name__}: {e}"
                    summary.errors.append(
                        ExecutionRecord(checker_name=check, diagram=entry.name, status="error", error=error)
                    )
                    yield f"❌ {check}: {error}\n"
                    continue
                summary.reports.append(report)
                if report.passed:
                    yield f"✅ {check}\n"
                else:
                    yield f"❌ {check}: {'; '.join(report.failures)}\n"

        failed = len(summary.failed_reports) + len(summary.errors)
        if failed:
            yield f"❌ {failed} of {len(summary.reports) + len(summary.errors)} checks failed\n"
        else:
            yield f"✅ All {len(summary.reports)} checks passed\n"
        yield summary
