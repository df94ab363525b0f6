import pytest

from khoma import corpus
from khoma.diagram_core import add_kink, enumerate_k1
from khoma.exceptions import PreconditionError
from khoma.expansion import (
    alternating_invariants,
    expand,
    expansion_tree_size,
    extremal_numbering,
    leaf_statistics,
    module_a_ranks,
    peel_kinks,
)


def test_kink_leaves(positive_kink, negative_kink):
    (leaf,) = expand(positive_kink)
    assert (leaf.x, leaf.y, leaf.w, leaf.r_D_S) == (0, 1, -1, 1)
    assert str(leaf.state) == "1"
    (leaf,) = expand(negative_kink)
    assert (leaf.x, leaf.y, leaf.w, leaf.r_D_S) == (1, 0, 1, 0)
    assert str(leaf.state) == "0"


def test_kink_module_a(positive_kink, negative_kink):
    assert module_a_ranks(positive_kink).ranks == {(0, -2): 1, (0, 0): 1}
    assert module_a_ranks(negative_kink).ranks == {(1, 1): 1, (1, 3): 1}


def test_peel_kinks_of_double_kink():
    d = corpus.diagram("unknot_kink_positive")
    doubled = add_kink(d, 2, -1)
    signs = sorted(k.sign for k in peel_kinks(doubled))
    assert signs == [-1, 1]


def test_peel_kinks_needs_splitting_crossings(trefoil_left):
    with pytest.raises(PreconditionError):
        peel_kinks(trefoil_left)


@pytest.mark.parametrize("numbering", [(1, 2, 3), (3, 2, 1), (2, 3, 1)])
def test_trefoil_leaves_cover_single_circle_states(trefoil_left, numbering):
    leaves = expand(trefoil_left, numbering)
    assert sorted(str(leaf.state) for leaf in leaves) == sorted(str(s) for s in enumerate_k1(trefoil_left))
    for leaf in leaves:
        assert leaf_statistics(leaf) == (leaf.x, leaf.y, leaf.w, leaf.r_D_S)
    assert module_a_ranks(trefoil_left, numbering).total == 6


def test_tree_size(trefoil_left, figure_eight):
    size = expansion_tree_size(trefoil_left)
    assert size.leaves == 3
    assert size.states == 8
    assert expansion_tree_size(figure_eight).leaves == 5


def test_bad_numbering(trefoil_left):
    with pytest.raises(PreconditionError):
        expand(trefoil_left, (1, 2, 2))


def test_alternating_invariants(trefoil_left, trefoil_right):
    left = alternating_invariants(trefoil_left)
    assert (left.is_alternating, left.n0, left.n1) == (True, 2, 1)
    right = alternating_invariants(trefoil_right)
    assert (right.n0, right.n1) == (1, 2)


@pytest.mark.parametrize("mode", ["lower", "upper"])
def test_extremal_numbering(figure_eight, mode):
    for state in enumerate_k1(figure_eight):
        numbering = extremal_numbering(figure_eight, state, mode)
        assert sorted(numbering) == [1, 2, 3, 4]


def test_extremal_numbering_rejects_kinks(positive_kink):
    with pytest.raises(PreconditionError):
        extremal_numbering(positive_kink, "1")
