import pytest

from khoma import corpus
from khoma.diagram_core import (
    add_kink,
    black_graph,
    component_count,
    components,
    count_circles,
    crossing_signs,
    disconnecting_smoothing,
    enumerate_k1,
    is_alternating,
    is_connected,
    is_splitting,
    kink_sign,
    mirror,
    parse_pd,
    renumber,
    smoothing_colors,
    spanning_tree_count,
    spanning_trees,
    tree_state_bijection,
    writhe,
)
from khoma.exceptions import PDParseError, PreconditionError

# Determinants of the alternating corpus knots: #K1 equals the tree count
DETERMINANTS = {
    "trefoil_left": 3,
    "trefoil_right": 3,
    "figure_eight": 5,
    "5_1": 5,
    "5_2": 7,
    "6_1": 9,
    "6_2": 11,
    "6_3": 13,
}


def test_parse_trefoil(trefoil_left):
    assert trefoil_left.crossing_count == 3
    assert trefoil_left.arcs == (1, 2, 3, 4, 5, 6)
    assert trefoil_left.crossings[0] == (4, 2, 5, 1)


def test_parse_header_and_comments():
    d = parse_pd("unbounded_face: 0\nX(4,2,5,1) X(6,4,1,3)  # two crossings\nX(2,6,3,5)")
    assert d.marked_face == 0
    assert d.crossing_count == 3


@pytest.mark.parametrize("text", ["X(1,2,3)", "X(1,2,3,4)", "X(1,1,2,2) O(2)", "Y(1,1,2,2)", "X(0,0,1,1)"])
def test_parse_rejects_malformed(text):
    with pytest.raises(PDParseError):
        parse_pd(text)


def test_pd_text_survives_rendering(trefoil_left):
    assert parse_pd(trefoil_left.to_pd()).crossings == trefoil_left.crossings


def test_circle_counts_of_trefoil_states(trefoil_left):
    assert count_circles(trefoil_left, "000") == 2
    assert count_circles(trefoil_left, "100") == 1
    assert count_circles(trefoil_left, "110") == 2
    assert count_circles(trefoil_left, "111") == 3


def test_partial_words_and_connectivity(trefoil_left, unknot):
    assert is_connected(trefoil_left)
    assert component_count(trefoil_left, "0--") == 1
    assert component_count(unknot) == 1
    with pytest.raises(PreconditionError):
        count_circles(trefoil_left, "0-1")


def test_kinks_are_splitting(positive_kink, negative_kink):
    assert disconnecting_smoothing(positive_kink, None, 1) == 0
    assert kink_sign(positive_kink, None, 1) == 1
    assert disconnecting_smoothing(negative_kink, None, 1) == 1
    assert kink_sign(negative_kink, None, 1) == -1


def test_reduced_diagram_has_no_splitting_crossing(trefoil_left):
    assert all(disconnecting_smoothing(trefoil_left, None, c) is None for c in (1, 2, 3))
    with pytest.raises(PreconditionError):
        kink_sign(trefoil_left, None, 1)


def test_single_circle_states_of_trefoils(trefoil_left, trefoil_right):
    assert [str(s) for s in enumerate_k1(trefoil_left)] == ["001", "010", "100"]
    assert {s.r for s in enumerate_k1(trefoil_right)} == {2}


@pytest.mark.parametrize("name,determinant", sorted(DETERMINANTS.items()))
def test_tree_count_matches_single_circle_states(name, determinant):
    d = corpus.diagram(name)
    graph = black_graph(d)
    assert spanning_tree_count(graph) == determinant
    assert len(spanning_trees(graph)) == determinant
    assert len(enumerate_k1(d)) == determinant


def test_tree_state_bijection(figure_eight):
    mapping = tree_state_bijection(figure_eight)
    assert len(mapping) == 5
    assert sorted(mapping.values(), key=str) == sorted(enumerate_k1(figure_eight), key=str)


def test_components_and_signs(trefoil_left, trefoil_right, hopf):
    assert len(components(trefoil_left)) == 1
    assert len(components(hopf)) == 2
    assert crossing_signs(trefoil_left) == (1, 1, 1)
    assert writhe(trefoil_right) == -3


def test_alternation(trefoil_left):
    assert is_alternating(trefoil_left)
    assert not is_alternating(corpus.diagram("8_19"))


def test_mirror_complements_states(trefoil_left):
    mirrored = mirror(trefoil_left)
    assert count_circles(mirrored, "111") == count_circles(trefoil_left, "000")
    assert crossing_signs(mirrored) == (-1, -1, -1)


def test_renumber_permutes_crossings(trefoil_left):
    moved = renumber(trefoil_left, [3, 1, 2])
    assert moved.crossings[0] == trefoil_left.crossings[2]
    with pytest.raises(PreconditionError):
        renumber(trefoil_left, [1, 1, 2])


def test_add_kink_appends_a_splitting_crossing(trefoil_left):
    for sign in (1, -1):
        kinked = add_kink(trefoil_left, 1, sign)
        assert kinked.crossing_count == 4
        assert kink_sign(kinked, None, 4) == sign


def test_splitting_and_smoothing_colors(positive_kink, trefoil_left):
    assert is_splitting(positive_kink, None, 1)
    assert not is_splitting(trefoil_left, "0--", 2)
    colors = smoothing_colors(trefoil_left)
    assert len(colors) == 3
    assert len(set(colors)) == 1
