import pytest

from khoma import corpus
from khoma.decorators import checker
from khoma.orchestrator import ALL_CHECKS, VerificationOrchestrator
from khoma.runner import CheckRunner
from models.report_models import CheckReport, VerificationSummary


@checker("always_fails", "Fails on every diagram")
def always_fails(diagram):
    report = CheckReport(name="always_fails", diagram=str(diagram), passed=True)
    report.fail("by construction")
    return report


@checker("crashes", "Raises an unexpected error")
def crashes(diagram):
    raise TypeError("unexpected")


def test_registry_holds_every_checker():
    runner = CheckRunner()
    assert set(ALL_CHECKS) - {"corpus"} <= set(runner.checkers)
    assert runner.describe()["euler"] == "Graded Euler characteristic of the cube equals the bracket"


def test_run_records_history(trefoil_left):
    runner = CheckRunner()
    report = runner.run("euler", trefoil_left)
    assert report.passed
    (record,) = runner.get_execution_history()
    assert (record.checker_name, record.diagram, record.status) == ("euler", "trefoil_left", "success")


def test_unknown_checker(trefoil_left):
    with pytest.raises(KeyError):
        CheckRunner().run("nope", trefoil_left)


def test_failed_checks_are_recorded(unknot):
    runner = CheckRunner()
    runner.register_checker(always_fails)
    report = runner.run("always_fails", unknot)
    assert not report.passed
    assert runner.execution_history[-1].status == "failed"
    assert runner.execution_history[-1].error == "by construction"


def test_errors_are_recorded_and_raised(hopf):
    runner = CheckRunner()
    with pytest.raises(ValueError):
        runner.run("alt", hopf)
    assert runner.execution_history[-1].status == "error"


def test_run_sequence(trefoil_left, figure_eight):
    reports = CheckRunner().run_sequence(
        [
            {"checker": "bracket", "diagram": trefoil_left, "options": {"numberings": 3}},
            {"checker": "clock", "diagram": figure_eight},
        ]
    )
    assert [r.name for r in reports] == ["bracket", "clock"]
    assert all(r.passed for r in reports)


def test_orchestrator_yields_summary_last():
    orchestrator = VerificationOrchestrator()
    items = list(orchestrator.run_verification(["corpus", "euler"], [corpus.entry("trefoil_left")]))
    summary = items[-1]
    assert isinstance(summary, VerificationSummary)
    assert summary.passed
    assert len(summary.reports) == 2
    assert items[0].startswith("🚀")
    assert all(isinstance(line, str) for line in items[:-1])


def test_orchestrator_skips_inapplicable_checks():
    orchestrator = VerificationOrchestrator()
    hopf = corpus.entry("hopf_positive")
    assert not orchestrator.applicable("alt", hopf)
    assert not orchestrator.applicable("lee_degree", hopf)
    assert orchestrator.applicable("lee", hopf)
    summary = list(orchestrator.run_verification(["alt", "lee"], [hopf]))[-1]
    assert [r.name for r in summary.reports] == ["lee"]



def test_orchestrator_records_unexpected_errors():
    runner = CheckRunner()
    runner.register_checker(crashes)
    orchestrator = VerificationOrchestrator(runner)
    items = list(orchestrator.run_verification(["crashes", "euler"], [corpus.entry("trefoil_left")]))
    summary = items[-1]
    assert not summary.passed
    (record,) = summary.errors
    assert (record.checker_name, record.status, record.error) == ("crashes", "error", "TypeError: unexpected")
    assert [r.name for r in summary.reports] == ["euler"]
    assert "❌ crashes: TypeError: unexpected\n" in items


@pytest.mark.slow
def test_full_corpus_verification():
    summary = list(VerificationOrchestrator().run_verification(numberings=3))[-1]
    assert summary.passed, [r.failures for r in summary.failed_reports] + [e.error for e in summary.errors]
