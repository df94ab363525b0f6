import pytest

from khoma import corpus
from khoma.diagram_core import parse_pd


@pytest.fixture
def unknot():
    return parse_pd("O(1)", name="unknot")


@pytest.fixture
def positive_kink():
    return corpus.diagram("unknot_kink_positive")


@pytest.fixture
def negative_kink():
    return corpus.diagram("unknot_kink_negative")


@pytest.fixture
def trefoil_left():
    return corpus.diagram("trefoil_left")


@pytest.fixture
def trefoil_right():
    return corpus.diagram("trefoil_right")


@pytest.fixture
def figure_eight():
    return corpus.diagram("figure_eight")


@pytest.fixture
def hopf():
    return corpus.hopf_diagram("positive")
