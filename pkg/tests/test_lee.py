import pytest

from khoma import corpus
from khoma.exceptions import PreconditionError
from khoma.expansion import module_a_ranks
from khoma.homalg import filtered_homology_q, reduce
from khoma.khovanov import spanning_tree_plan
from khoma.lee import (
    admissible_colorings,
    check_coloring_orientations,
    check_lee_structure,
    colored_smoothing,
    coloring_decomposition_check,
    deformation_map,
    knot_degree_check,
    lee_basis_check,
    lee_complex,
    lee_homology,
)
from models import HomologyGroup


def test_lee_basis_identities():
    assert lee_basis_check() == []


def test_deformation_raises_j_by_four(trefoil_left):
    complex_ = lee_complex(trefoil_left)
    for g, row in deformation_map(trefoil_left).items():
        i, j = complex_.degree(g)
        assert all(complex_.degree(h) == (i + 1, j + 4) for h in row)
    assert complex_.is_filtered
    assert not complex_.is_homogeneous


def test_unknot(unknot):
    homology = lee_homology(unknot)
    assert set(homology.rational.groups) == {(0, -1), (0, 1)}


def test_trefoil_lee_homology(trefoil_left):
    homology = lee_homology(trefoil_left)
    assert set(homology.rational.groups) == {(0, -2), (0, 0)}
    assert homology.integral.group_at(0) == HomologyGroup(rank=2)
    assert homology.integral.group_at(3) == HomologyGroup(torsion=(2, 2))
    assert homology.integral.total_rank == 2


@pytest.mark.parametrize("name,components", [("unknot", 1), ("trefoil_left", 1), ("hopf_positive", 2)])
def test_rational_dimension(name, components):
    assert lee_homology(corpus.diagram(name)).rational.total_rank == 2**components


@pytest.mark.parametrize("name", ["trefoil_left", "trefoil_right", "figure_eight", "hopf_negative"])
def test_lee_checker(name):
    report = check_lee_structure(corpus.diagram(name))
    assert report.passed, report.failures


@pytest.mark.parametrize("name", ["trefoil_left", "figure_eight", "hopf_positive"])
def test_filtered_spanning_tree_reduction(name):
    """The Khovanov elimination plan also reduces the Lee complex without lowering j"""
    d = corpus.diagram(name)
    complex_ = lee_complex(d)
    reduced = reduce(complex_, "spanning_tree", spanning_tree_plan(d), filtered=True)
    assert reduced.bidegree_table() == module_a_ranks(d)
    for source, target, _ in reduced.entries():
        assert reduced.degree(target)[1] >= reduced.degree(source)[1]
    assert filtered_homology_q(reduced) == filtered_homology_q(complex_)


def test_knot_degree(trefoil_right, hopf):
    assert knot_degree_check(trefoil_right).passed
    with pytest.raises(PreconditionError):
        knot_degree_check(hopf)


@pytest.mark.parametrize("name,count", [("unknot", 2), ("trefoil_left", 2), ("hopf_positive", 4)])
def test_crossingless_colorings(name, count):
    d = corpus.diagram(name)
    crossingless = [c for c in admissible_colorings(d) if colored_smoothing(d, c).is_total]
    assert len(crossingless) == count


def test_monochromatic_colorings_leave_crossings(trefoil_left):
    arcs = trefoil_left.arcs
    words = {str(colored_smoothing(trefoil_left, c)) for c in admissible_colorings(trefoil_left)}
    assert "---" in words
    assert len(admissible_colorings(trefoil_left)) >= 4
    assert all(len(c.colors) == len(arcs) for c in admissible_colorings(trefoil_left))


def test_coloring_arc_limit(trefoil_left, monkeypatch):
    monkeypatch.setenv("KHOMA_MAX_COLORING_ARCS", "4")
    with pytest.raises(PreconditionError):
        admissible_colorings(trefoil_left)


@pytest.mark.parametrize("name", ["trefoil_left", "hopf_positive", "figure_eight"])
def test_coloring_decomposition(name):
    report = coloring_decomposition_check(corpus.diagram(name))
    assert report.passed, report.failures
    assert report.details["crossingless"] == 2 ** report.details["components"]


@pytest.mark.parametrize("name", ["trefoil_left", "hopf_positive"])
def test_coloring_orientations(name):
    report = check_coloring_orientations(corpus.diagram(name))
    assert report.passed, report.failures
