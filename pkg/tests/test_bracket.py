import random

import pytest

from khoma import corpus
from khoma.bracket import (
    LaurentPolynomial,
    bracket_r1_trivial,
    bracket_spanning_tree,
    bracket_state_sum,
    check_bracket_equivalence,
    jones_polynomial,
    r1_trivial_value,
)
from khoma.diagram_core import mirror
from khoma.exceptions import PreconditionError
from khoma.expansion import random_numbering

SMALL = ["unknot_kink_positive", "unknot_kink_negative", "trefoil_left", "trefoil_right", "figure_eight", "5_1", "5_2"]


def test_laurent_arithmetic():
    circle = LaurentPolynomial.circle()
    assert str(circle) == "q^-1 + q"
    assert str(circle * circle) == "q^-2 + 2 + q^2"
    assert (circle - circle).is_zero
    assert circle.times_unit(-1, 3) == LaurentPolynomial(coefficients={2: -1, 4: -1})
    assert circle.mirror() == circle


def test_unit_multiplication_preserves_exponent_parity():
    p = LaurentPolynomial(coefficients={-3: 1, 1: 2, 5: -1})
    for exponent in (-2, 0, 4):
        assert p.times_unit(-1, exponent).exponent_parities() == p.exponent_parities()


def test_to_sympy():
    p = LaurentPolynomial(coefficients={-1: 1, 2: -3})
    assert str(p.to_sympy()) == "-3*q**2 + 1/q"


@pytest.mark.parametrize(
    "name,expected",
    [
        ("unknot", "q^-1 + q"),
        ("unknot_kink_positive", "q^-2 + 1"),
        ("unknot_kink_negative", "-q - q^3"),
        ("hopf_positive", "q^-2 + 1 + q^2 + q^4"),
        ("trefoil_left", "q^-2 + 1 + q^2 - q^6"),
        ("trefoil_right", "q^-3 - q - q^3 - q^5"),
    ],
)
def test_state_sum_values(name, expected):
    assert str(bracket_state_sum(corpus.diagram(name))) == expected


def test_partial_word_restricts_the_sum(trefoil_left):
    total = bracket_state_sum(trefoil_left, "0--") + bracket_state_sum(trefoil_left, "1--")
    assert total == bracket_state_sum(trefoil_left)


def test_r1_trivial_closed_form(positive_kink, negative_kink):
    assert bracket_r1_trivial(positive_kink) == bracket_state_sum(positive_kink)
    assert bracket_r1_trivial(negative_kink) == bracket_state_sum(negative_kink)
    assert r1_trivial_value(0, 0) == LaurentPolynomial.circle()


def test_r1_trivial_rejects_reduced_diagrams(trefoil_left):
    with pytest.raises(PreconditionError):
        bracket_r1_trivial(trefoil_left)


@pytest.mark.parametrize("name", SMALL)
def test_spanning_tree_sum_equals_state_sum(name):
    d = corpus.diagram(name)
    rng = random.Random(7)
    expected = bracket_state_sum(d)
    for _ in range(4):
        assert bracket_spanning_tree(d, random_numbering(d, rng)) == expected


def test_mirror_bracket(trefoil_left):
    n = trefoil_left.crossing_count
    expected = bracket_state_sum(trefoil_left).mirror().times_unit((-1) ** n, n)
    assert bracket_state_sum(mirror(trefoil_left)) == expected


def test_jones_polynomial(trefoil_left):
    assert str(jones_polynomial(trefoil_left)) == "q + q^3 + q^5 - q^9"


def test_bracket_checker(figure_eight):
    report = check_bracket_equivalence(figure_eight, numberings=5, seed=3)
    assert report.passed, report.failures
    assert report.details["numberings"] == 5


@pytest.mark.slow
@pytest.mark.parametrize("name", corpus.names())
def test_spanning_tree_sum_on_corpus(name):
    d = corpus.diagram(name)
    if not d.crossings:
        pytest.skip("no crossings to expand")
    assert bracket_spanning_tree(d) == bracket_state_sum(d)
