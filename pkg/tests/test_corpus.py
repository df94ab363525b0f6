import pytest

from khoma import corpus
from khoma.diagram_core import components, is_alternating, parse_pd
from khoma.exceptions import DiagramError
from khoma.orchestrator import check_corpus_entry


@pytest.mark.parametrize("entry", corpus.corpus_entries(), ids=lambda e: e.name)
def test_entries_parse_with_their_component_count(entry):
    d = parse_pd(entry.pd, name=entry.name)
    assert len(components(d)) == entry.components


def test_names_are_unique():
    names = corpus.names()
    assert len(names) == len(set(names))


def test_connected_sums():
    entry = corpus.entry("trefoil_left#trefoil_right")
    d = corpus.diagram(entry.name)
    assert d.crossing_count == 6
    assert entry.golden["summands"] == ["trefoil_left", "trefoil_right"]
    assert entry.alternating == is_alternating(d)


def test_unknown_name():
    with pytest.raises(DiagramError):
        corpus.entry("10_124")


@pytest.mark.parametrize("name", ["unknot", "unknot_kink_positive", "hopf_negative", "trefoil_left", "trefoil_right"])
def test_small_entries_match_their_golden_values(name):
    report = check_corpus_entry(corpus.entry(name), corpus.diagram(name))
    assert report.passed, report.failures
