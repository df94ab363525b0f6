import pytest

from khoma import corpus
from khoma.bracket import bracket_state_sum
from khoma.exceptions import PreconditionError
from khoma.expansion import module_a_ranks
from khoma.homalg import ChainMap, homology_z, mapping_cone, reduce, shift
from khoma.khovanov import (
    build_cube,
    check_alternating_support,
    check_black_smoothings,
    check_euler_characteristic,
    check_extremal_numbering,
    check_hopf_addition,
    check_mirror,
    check_r1_invariance,
    check_spanning_tree_reduction,
    check_theorem_2_3,
    edge_map,
    hopf_module_offset,
    khovanov_homology,
    normalized_homology,
    spanning_tree_plan,
    spanning_tree_reduction,
    state_complex,
)


def test_cube_size(trefoil_left):
    cube = build_cube(trefoil_left)
    # 4 + 3 * 2 + 3 * 4 + 8 generators over the eight states
    assert len(cube) == 30
    assert cube.is_homogeneous


def test_unknot_and_kinks(unknot, positive_kink, negative_kink):
    assert set(khovanov_homology(unknot).groups) == {(0, -1), (0, 1)}
    assert set(khovanov_homology(positive_kink).groups) == {(0, -2), (0, 0)}
    assert set(khovanov_homology(negative_kink).groups) == {(1, 1), (1, 3)}


@pytest.mark.parametrize("name", ["trefoil_left", "trefoil_right"])
def test_trefoil_tables(name):
    entry = corpus.entry(name)
    assert khovanov_homology(corpus.diagram(name)).to_json_dict() == entry.golden["homology"]


def test_rational_trefoil(trefoil_left):
    homology = khovanov_homology(trefoil_left, ring="q")
    assert homology.total_rank == 4
    assert homology.torsion_orders == []


def test_normalized_trefoil(trefoil_left):
    homology = normalized_homology(trefoil_left)
    assert set(homology.groups) == {(0, 1), (0, 3), (2, 5), (3, 7), (3, 9)}
    assert homology.group_at(3, 7).torsion == (2,)


@pytest.mark.parametrize("name", ["unknot_kink_negative", "hopf_positive", "trefoil_right", "figure_eight"])
def test_euler_characteristic_is_the_bracket(name):
    d = corpus.diagram(name)
    assert build_cube(d).euler_characteristic() == bracket_state_sum(d)
    assert check_euler_characteristic(d).passed


def test_edge_map_needs_a_zero_bit(trefoil_left):
    with pytest.raises(PreconditionError):
        edge_map(trefoil_left, 0b001, 1)


@pytest.mark.parametrize("name", ["unknot_kink_positive", "unknot_kink_negative"])
def test_kink_complex_is_a_mapping_cone(name):
    d = corpus.diagram(name)
    source = state_complex(d, 0)
    target = shift(state_complex(d, 1), -1, 0)
    cone = mapping_cone(ChainMap(source, target, edge_map(d, 0, 1)))
    cube = build_cube(d)
    # cone generators are tagged (0, g) and (1, h); untagged they are the cube's
    assert {g: degree for (_, g), degree in cone.generators.items()} == cube.generators
    assert sorted((g, h, c) for (_, g), (_, h), c in cone.entries()) == sorted(cube.entries())
    assert homology_z(cone).groups == khovanov_homology(d).groups


def test_positive_kink_contraction(positive_kink):
    plan = spanning_tree_plan(positive_kink)
    # the split-off loop labelled 1 pivots into the merged circle, once per label of the other circle
    assert len(plan) == 2
    reduced = spanning_tree_reduction(positive_kink)
    assert len(reduced) == 2
    assert homology_z(reduced).groups == khovanov_homology(positive_kink).groups


@pytest.mark.parametrize("name", ["trefoil_left", "figure_eight", "hopf_positive"])
def test_spanning_tree_reduction(name):
    d = corpus.diagram(name)
    cube = build_cube(d)
    for numbering in (None, tuple(range(d.crossing_count, 0, -1))):
        reduced = reduce(cube, "spanning_tree", spanning_tree_plan(d, numbering))
        assert reduced.bidegree_table() == module_a_ranks(d, numbering)
        assert homology_z(reduced).groups == homology_z(cube).groups


def test_spanning_tree_checker(trefoil_right):
    report = check_spanning_tree_reduction(trefoil_right, numberings=4, seed=1)
    assert report.passed, report.failures


def test_rank_bound(trefoil_left):
    report = check_theorem_2_3(trefoil_left)
    assert report.passed, report.failures
    assert report.details["dimension"] == 4
    assert report.details["single_circle_states"] == 3


@pytest.mark.parametrize("name", ["trefoil_left", "trefoil_right", "figure_eight"])
def test_alternating_support(name):
    d = corpus.diagram(name)
    report = check_alternating_support(d)
    assert report.passed, report.failures
    assert report.details["crossing_number_lower_bound"] == d.crossing_count


def test_alternating_support_needs_a_knot(hopf):
    with pytest.raises(PreconditionError):
        check_alternating_support(hopf)


def test_hopf_module_offset():
    assert hopf_module_offset("positive") == (1, 1)


def test_hopf_addition(trefoil_left):
    report = check_hopf_addition(trefoil_left)
    assert report.passed, report.failures
    assert report.details["matching_chiralities"]


@pytest.mark.parametrize(
    "checker", [check_mirror, check_r1_invariance, check_extremal_numbering, check_black_smoothings]
)
def test_structural_checkers(checker, trefoil_left):
    report = checker(trefoil_left)
    assert report.passed, report.failures


def test_black_smoothings_on_figure_eight(figure_eight):
    report = check_black_smoothings(figure_eight)
    assert report.passed, report.failures
    assert report.details["black_counts"] == [report.details["vertices"] - 1]
