"""
CheckRunner: registry and execution history for verification checkers
"""
import logging
from typing import Any, Callable, Dict, List, Optional

from models.diagram_models import PlanarDiagram
from models.report_models import CheckReport, ExecutionRecord
from .bracket import check_bracket_equivalence
from .khovanov import KHOVANOV_CHECKERS
from .lee import LEE_CHECKERS

logger = logging.getLogger(__name__)


class CheckRunner:
    """Runs registered checkers on diagrams and records every execution"""

    def __init__(self):
        self.checkers: Dict[str, Callable[..., CheckReport]] = {"bracket": check_bracket_equivalence}
        self.checkers.update(KHOVANOV_CHECKERS)
        self.checkers.update(LEE_CHECKERS)
        self.execution_history: List[ExecutionRecord] = []

    def register_checker(self, checker: Callable[..., CheckReport], name: Optional[str] = None):
        """Register a checker under ``name`` or the name given by @checker"""
        key = name or getattr(checker, "_checker_name", checker.__name__)
        if not getattr(checker, "_is_checker", False):
            logger.warning("registering %s without the @checker decorator", key)
        self.checkers[key] = checker

    def get_checker(self, name: str) -> Optional[Callable[..., CheckReport]]:
        return self.checkers.get(name)

    def describe(self) -> Dict[str, str]:
        """Checker name -> description"""
        return {
            name: getattr(func, "_checker_description", func.__doc__ or name)
            for name, func in self.checkers.items()
        }

    def run(self, checker_name: str, diagram: PlanarDiagram, **options: Any) -> CheckReport:
        """
        Run one checker on one diagram

        Args:
            checker_name: Registered checker name
            diagram: The diagram to check
            **options: Extra keyword arguments for the checker

        Returns:
            The checker's report; failures are recorded, not raised
        """
        if checker_name not in self.checkers:
            raise KeyError(f"checker '{checker_name}' not found")
        try:
            report = self.checkers[checker_name](diagram, **options)
        except Exception as e:
            self.execution_history.append(
                ExecutionRecord(checker_name=checker_name, diagram=str(diagram), status="error", error=str(e))
            )
            raise
        status = "success" if report.passed else "failed"
        error = "; ".join(report.failures) or None
        self.execution_history.append(
            ExecutionRecord(checker_name=checker_name, diagram=str(diagram), status=status, error=error)
        )
        logger.debug("%s on %s: %s", checker_name, diagram, status)
        return report

    def run_sequence(self, sequence: List[Dict[str, Any]]) -> List[CheckReport]:
        """
        Run a sequence of checks

        Args:
            sequence: Dicts with 'checker', 'diagram' and optional 'options' keys

        Returns:
            Reports in sequence order
        """
        return [self.run(step["checker"], step["diagram"], **step.get("options", {})) for step in sequence]

    def get_execution_history(self) -> List[ExecutionRecord]:
        return list(self.execution_history)
