"""
Cube of resolutions, Khovanov homology and the checkers built on it
"""
import logging
import random
from itertools import product
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from models.diagram_models import PlanarDiagram, ResolutionWord
from models.invariant_models import BigradedHomology, RankTable
from models.report_models import CheckReport
from .bracket import bracket_state_sum
from .corpus import HOPF_CODES, hopf_diagram
from .decorators import checker, crossing_guard
from .diagram_core import (
    add_kink,
    black_graph,
    components,
    connected_sum,
    disconnecting_smoothing,
    enumerate_k1,
    is_alternating,
    is_connected,
    mirror,
    sign_counts,
    state_circles,
)
from .exceptions import ChainComplexError, ConsistencyError, PreconditionError
from .expansion import (
    alternating_invariants,
    expand,
    extremal_numbering,
    identity_numbering,
    module_a_ranks,
    random_numbering,
)
from .homalg import BasedComplex, Generator, homology_z, reduce

logger = logging.getLogger(__name__)

ONE, X = 0, 1
Labels = Tuple[int, ...]
SparseMap = Dict[Generator, Dict[Generator, int]]


def label_degree(label: int) -> int:
    """1 sits in degree +1, X in degree -1"""
    return 1 if label == ONE else -1


class FrobeniusData(BaseModel):
    """
    Merge and split maps of a rank-two algebra on the basis {1, X}

    ``merge`` sends a pair of labels to (label, coefficient) terms and
    ``split`` sends a label to ((label, label), coefficient) terms.
    """
    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Display name")
    merge: Dict[Tuple[int, int], Tuple[Tuple[int, int], ...]] = Field(..., description="m on basis tensors")
    split: Dict[int, Tuple[Tuple[Tuple[int, int], int], ...]] = Field(..., description="Δ on basis elements")
    dj: int = Field(default=0, description="Change of secondary degree along a cube edge")


KHOVANOV = FrobeniusData(
    name="khovanov",
    merge={(ONE, ONE): ((ONE, 1),), (ONE, X): ((X, 1),), (X, ONE): ((X, 1),), (X, X): ()},
    split={ONE: (((ONE, X), 1), ((X, ONE), 1)), X: (((X, X), 1),)},
)


class CubeVertex(BaseModel):
    """A Kauffman state with its circles in least-arc order"""
    model_config = ConfigDict(frozen=True)

    bits: int = Field(..., ge=0, description="Bit c-1 is the smoothing at crossing c")
    word: ResolutionWord
    circles: Tuple[Tuple[int, ...], ...]

    @property
    def r(self) -> int:
        return self.word.r

    def circle_index(self) -> Dict[int, int]:
        return {arc: k for k, circle in enumerate(self.circles) for arc in circle}

    def generators(self) -> Dict[Generator, Tuple[int, int]]:
        """Basis tensors at (r, sum of label degrees + r)"""
        return {
            (self.bits, labels): (self.r, sum(label_degree(l) for l in labels) + self.r)
            for labels in product((ONE, X), repeat=len(self.circles))
        }


class _Edge(NamedTuple):
    merge: bool
    source_circles: Tuple[int, int]
    target_circles: Tuple[int, int]
    carry: Dict[int, int]


def _vertex(diagram: PlanarDiagram, bits: int) -> CubeVertex:
    word = ResolutionWord.from_bits(bits, len(diagram.crossings))
    return CubeVertex(bits=bits, word=word, circles=state_circles(diagram, word).circles)


@crossing_guard("cube_vertices")
def cube_vertices(diagram: PlanarDiagram) -> List[CubeVertex]:
    """All 2^n states, indexed by their bit encoding"""
    return [_vertex(diagram, bits) for bits in range(2 ** len(diagram.crossings))]


def _edge(diagram: PlanarDiagram, source: CubeVertex, target: CubeVertex, crossing_index: int,
          indexes: Optional[Tuple[Dict[int, int], Dict[int, int]]] = None) -> _Edge:
    src_index, dst_index = indexes or (source.circle_index(), target.circle_index())
    quad = diagram.crossings[crossing_index]
    a, b = src_index[quad[0]], src_index[quad[2]]
    if a != b:
        merged = dst_index[quad[0]]
        involved, produced = (a, b), (merged, merged)
    else:
        involved, produced = (a, a), (dst_index[quad[0]], dst_index[quad[1]])
        if produced[0] == produced[1]:
            raise ConsistencyError(f"edge at crossing {crossing_index + 1} neither merges nor splits")
    carry = {k: dst_index[circle[0]] for k, circle in enumerate(source.circles) if k not in involved}
    return _Edge(merge=a != b, source_circles=involved, target_circles=produced, carry=carry)


def _edge_sign(bits: int, crossing_index: int) -> int:
    return -1 if bin(bits & ((1 << crossing_index) - 1)).count("1") % 2 else 1


def _edge_terms(edge: _Edge, labels: Labels, size: int, algebra: FrobeniusData) -> Iterable[Tuple[Labels, int]]:
    out = [0] * size
    for k, target in edge.carry.items():
        out[target] = labels[k]
    if edge.merge:
        a, b = edge.source_circles
        for label, coefficient in algebra.merge.get((labels[a], labels[b]), ()):
            out[edge.target_circles[0]] = label
            yield tuple(out), coefficient
    else:
        p, q = edge.target_circles
        for (lp, lq), coefficient in algebra.split.get(labels[edge.source_circles[0]], ()):
            out[p], out[q] = lp, lq
            yield tuple(out), coefficient


def edge_map(diagram: PlanarDiagram, bits: int, crossing: int,
             algebra: FrobeniusData = KHOVANOV) -> SparseMap:
    """
    Signed component of the cube differential along one edge

    Args:
        diagram: The diagram
        bits: Source state; its bit for ``crossing`` must be 0
        crossing: Crossing number (1-based) being flipped to its 1-smoothing
        algebra: Frobenius data supplying m and Δ

    Returns:
        Sparse map from source generators to target generators
    """
    c = crossing - 1
    if (bits >> c) & 1:
        raise PreconditionError(f"state {bits:b} already takes the 1-smoothing at crossing {crossing}")
    target_bits = bits | (1 << c)
    source, target = _vertex(diagram, bits), _vertex(diagram, target_bits)
    edge = _edge(diagram, source, target, c)
    sign = _edge_sign(bits, c)
    entries: SparseMap = {}
    for labels in product((ONE, X), repeat=len(source.circles)):
        row = {(target_bits, out): sign * coefficient
               for out, coefficient in _edge_terms(edge, labels, len(target.circles), algebra)}
        if row:
            entries[(bits, labels)] = row
    return entries


def cube_generators(vertices: Sequence[CubeVertex]) -> Dict[Generator, Tuple[int, int]]:
    generators: Dict[Generator, Tuple[int, int]] = {}
    for vertex in vertices:
        generators.update(vertex.generators())
    return generators


def cube_map(diagram: PlanarDiagram, algebra: FrobeniusData,
             vertices: Optional[Sequence[CubeVertex]] = None) -> SparseMap:
    """Sum of all signed edge components built from ``algebra``"""
    vertices = vertices if vertices is not None else cube_vertices(diagram)
    indexes = [v.circle_index() for v in vertices]
    entries: SparseMap = {}
    for vertex in vertices:
        for c in range(len(diagram.crossings)):
            if (vertex.bits >> c) & 1:
                continue
            target = vertices[vertex.bits | (1 << c)]
            edge = _edge(diagram, vertex, target, c, (indexes[vertex.bits], indexes[target.bits]))
            sign = _edge_sign(vertex.bits, c)
            for labels in product((ONE, X), repeat=len(vertex.circles)):
                for out, coefficient in _edge_terms(edge, labels, len(target.circles), algebra):
                    row = entries.setdefault((vertex.bits, labels), {})
                    key = (target.bits, out)
                    row[key] = row.get(key, 0) + sign * coefficient
    return entries


def state_complex(diagram: PlanarDiagram, bits: int) -> BasedComplex:
    """The module of one vertex with zero differential"""
    return BasedComplex(_vertex(diagram, bits).generators())


def build_cube(diagram: PlanarDiagram) -> BasedComplex:
    """
    Khovanov complex of the cube of resolutions

    Generators are (bits, labels) pairs; d∘d = 0 is checked on construction.
    """
    vertices = cube_vertices(diagram)
    complex_ = BasedComplex(cube_generators(vertices), cube_map(diagram, KHOVANOV, vertices))
    logger.debug("cube of %s: %d vertices, %d generators", diagram, len(vertices), len(complex_))
    return complex_


def normalization_shift(diagram: PlanarDiagram) -> Tuple[int, int]:
    """[-n-]{n+ - 2n-}"""
    n_plus, n_minus = sign_counts(diagram)
    return -n_minus, n_plus - 2 * n_minus


def khovanov_homology(diagram: PlanarDiagram, ring: str = "z", normalize: bool = False) -> BigradedHomology:
    """
    Homology of the cube complex

    Args:
        diagram: Any diagram, links included
        ring: "z" for ranks and torsion, "q" for ranks only
        normalize: Apply the orientation shift [-n-]{n+ - 2n-}

    Returns:
        Table keyed by (i, j)
    """
    homology = homology_z(build_cube(diagram))
    if ring.lower() == "q":
        homology = homology.rational()
    if normalize:
        homology = homology.shifted(*normalization_shift(diagram))
    return homology


def normalized_homology(diagram: PlanarDiagram, ring: str = "z") -> BigradedHomology:
    return khovanov_homology(diagram, ring, normalize=True)


# Spanning-tree reduction ------------------------------------------------------

def _labelings(vertex: CubeVertex, index: Dict[int, int], fixed: Dict[int, int]) -> Iterable[Labels]:
    """Label tuples of ``vertex`` agreeing with ``fixed`` (loop arc -> label)"""
    pinned = {index[arc]: label for arc, label in fixed.items()}
    free = [k for k in range(len(vertex.circles)) if k not in pinned]
    for choice in product((ONE, X), repeat=len(free)):
        labels = [0] * len(vertex.circles)
        for k, label in pinned.items():
            labels[k] = label
        for k, label in zip(free, choice):
            labels[k] = label
        yield tuple(labels)


def spanning_tree_plan(
    diagram: PlanarDiagram, numbering: Optional[Sequence[int]] = None
) -> List[Tuple[Generator, Generator]]:
    """
    Pivots contracting each expansion leaf to its two surviving generators

    Kinks are contracted in peeling order. At a positive kink the pivots run
    from generators whose split-off loop is labelled 1 into the merged
    state, leaving the loop labelled X. At a negative kink every generator
    of the connected side pivots into the split state with the loop
    labelled X, leaving the loop labelled 1 on the split side.
    """
    vertices = cube_vertices(diagram)
    indexes = [v.circle_index() for v in vertices]
    plan: List[Tuple[Generator, Generator]] = []
    for leaf in expand(diagram, numbering):
        fixed_bits = {c: v for c, v in enumerate(leaf.word.values) if v is not None}
        pending = [kink.crossing - 1 for kink in leaf.kinks]
        frozen: Dict[int, int] = {}
        for kink in leaf.kinks:
            c = kink.crossing - 1
            pending.remove(c)
            loop_arc = diagram.crossings[c][kink.loop_slot]
            for free_bits in product((0, 1), repeat=len(pending)):
                bits = sum(1 << k for k, v in fixed_bits.items() if v)
                bits += sum(1 << k for k, v in zip(pending, free_bits) if v)
                source, target = vertices[bits], vertices[bits | (1 << c)]
                src_index, dst_index = indexes[source.bits], indexes[target.bits]
                edge = _edge(diagram, source, target, c, (src_index, dst_index))
                if edge.merge != (kink.sign > 0):
                    raise ConsistencyError(f"kink at crossing {kink.crossing} has the wrong edge type")
                if kink.sign > 0:
                    pinned = {**frozen, loop_arc: ONE}
                    small = src_index[loop_arc]
                    rest = next(k for k in edge.source_circles if k != small)
                else:
                    pinned = dict(frozen)
                for labels in _labelings(source, src_index, pinned):
                    out = [0] * len(target.circles)
                    for k, t in edge.carry.items():
                        out[t] = labels[k]
                    if kink.sign > 0:
                        out[edge.target_circles[0]] = labels[rest]
                    else:
                        small = dst_index[loop_arc]
                        rest_target = next(k for k in edge.target_circles if k != small)
                        out[small] = X
                        out[rest_target] = labels[edge.source_circles[0]]
                    plan.append(((source.bits, labels), (target.bits, tuple(out))))
            frozen[loop_arc] = X if kink.sign > 0 else ONE
            fixed_bits[c] = kink.disconnecting
    logger.debug("spanning-tree plan for %s: %d pivots", diagram, len(plan))
    return plan


def spanning_tree_reduction(diagram: PlanarDiagram, numbering: Optional[Sequence[int]] = None) -> BasedComplex:
    """The cube reduced to two generators per expansion leaf"""
    return reduce(build_cube(diagram), "spanning_tree", spanning_tree_plan(diagram, numbering))


# Checkers -------------------------------------------------------------------

def _new_report(name: str, diagram: PlanarDiagram) -> CheckReport:
    return CheckReport(name=name, diagram=str(diagram), passed=True)


@checker("euler", "Graded Euler characteristic of the cube equals the bracket")
def check_euler_characteristic(diagram: PlanarDiagram) -> CheckReport:
    report = _new_report("euler", diagram)
    chi = build_cube(diagram).euler_characteristic()
    bracket = bracket_state_sum(diagram)
    report.details.update(euler_characteristic=str(chi), bracket=str(bracket))
    if chi != bracket:
        report.fail(f"Euler characteristic {chi} != bracket {bracket}")
    return report


@checker("thm23", "Khovanov rank bounded by single-circle states, per bidegree")
def check_theorem_2_3(diagram: PlanarDiagram) -> CheckReport:
    """
    dim H <= 2 #K1 in total, and at each (i, j) dim H^{i,j} is at most the
    rank of the spanning-tree module there
    """
    if not is_connected(diagram):
        raise PreconditionError("the rank bound needs a connected diagram")
    report = _new_report("thm23", diagram)
    homology = khovanov_homology(diagram, ring="q")
    bound = module_a_ranks(diagram)
    states = len(enumerate_k1(diagram))
    report.details.update(
        dimension=homology.total_rank,
        single_circle_states=states,
        homology=homology.to_json_dict(),
        bound=bound.to_json_dict(),
    )
    if homology.total_rank > 2 * states:
        report.fail(f"dim H = {homology.total_rank} > 2 #K1 = {2 * states}")
    for key, group in homology.groups.items():
        if group.rank > bound.ranks.get(key, 0):
            report.fail(f"dim H^{key} = {group.rank} exceeds the bound {bound.ranks.get(key, 0)}")
    return report


def _has_splitting_crossing(diagram: PlanarDiagram) -> bool:
    return any(
        disconnecting_smoothing(diagram, None, c) is not None for c in range(1, len(diagram.crossings) + 1)
    )


@checker("alt", "Alternating knots: two-line support, torsion on the lower line, extremal groups")
def check_alternating_support(diagram: PlanarDiagram) -> CheckReport:
    """
    Support and extremal-degree clauses for an alternating knot diagram

    Every nonzero group lies on j = 2i - n1 +- 1, torsion only on the lower
    line, the group at the least primary degree meets the lower line and
    the one at the greatest meets the upper line. For reduced diagrams those
    two groups are Z, at i = 0 and i = n, and the spread i+ - i- is recorded
    as a lower bound for the crossing number.
    """
    if len(components(diagram)) != 1:
        raise PreconditionError(f"{diagram} is not a knot diagram")
    if not is_alternating(diagram):
        raise PreconditionError(f"{diagram} is not alternating")
    report = _new_report("alt", diagram)
    n1 = alternating_invariants(diagram).n1
    homology = khovanov_homology(diagram)
    report.details.update(n1=n1, homology=homology.to_json_dict())

    for (i, j), group in homology.groups.items():
        offset = j - 2 * i + n1
        if offset not in (-1, 1):
            report.fail(f"H^({i},{j}) = {group} lies off the lines j = 2i - n1 +- 1")
        elif group.torsion and offset != -1:
            report.fail(f"torsion {list(group.torsion)} at ({i},{j}) on the upper line")

    degrees = homology.primary_degrees
    if not degrees:
        report.fail("homology vanishes")
        return report
    i_minus, i_plus = degrees[0], degrees[-1]
    lower = homology.group_at(i_minus, 2 * i_minus - n1 - 1)
    upper = homology.group_at(i_plus, 2 * i_plus - n1 + 1)
    report.details.update(i_minus=i_minus, i_plus=i_plus)
    if lower.is_zero:
        report.fail(f"no group on the lower line at i- = {i_minus}")
    if upper.is_zero:
        report.fail(f"no group on the upper line at i+ = {i_plus}")

    if not _has_splitting_crossing(diagram):
        n = len(diagram.crossings)
        if (lower.rank, lower.torsion) != (1, ()) or (upper.rank, upper.torsion) != (1, ()):
            report.fail(f"extremal groups are {lower} and {upper}, expected Z and Z")
        if i_minus != 0 or i_plus != n:
            report.fail(f"extremal degrees ({i_minus}, {i_plus}) differ from (0, {n})")
        report.details["crossing_number_lower_bound"] = i_plus - i_minus
    return report


def _offset_match(actual: BigradedHomology, expected: BigradedHomology) -> Optional[Tuple[int, int]]:
    """The global shift carrying ``expected`` onto ``actual``, if any"""
    if not actual.groups or not expected.groups:
        return (0, 0) if actual.groups == expected.groups else None
    first = next(iter(actual.groups))
    for key in expected.groups:
        di, dj = first[0] - key[0], first[1] - key[1]
        if expected.shifted(di, dj).groups == actual.groups:
            return di, dj
    return None


def hopf_module_offset(chirality: str = "positive") -> Optional[Tuple[int, int]]:
    """Shift carrying A[-1]{-2} + A[1]{2} onto the spanning-tree module of the Hopf diagram"""
    a = RankTable(ranks={(0, -1): 1, (0, 1): 1})
    expected = a.shifted(-1, -2).direct_sum(a.shifted(1, 2))
    actual = module_a_ranks(hopf_diagram(chirality))
    first = next(iter(actual.ranks))
    for key in expected.ranks:
        di, dj = first[0] - key[0], first[1] - key[1]
        if expected.shifted(di, dj) == actual:
            return di, dj
    return None


@checker("hopf", "Hopf-link addition doubles the table with shifts [-1]{-2} and [1]{2}")
def check_hopf_addition(diagram: PlanarDiagram) -> CheckReport:
    """
    Compare H(D # Hopf) with H(D)[-1]{-2} + H(D)[1]{2}

    Both Hopf chiralities are tried; the global offset that aligns the two
    tables is searched for and reported per chirality.
    """
    report = _new_report("hopf", diagram)
    base = khovanov_homology(diagram)
    expected = base.shifted(-1, -2).direct_sum(base.shifted(1, 2))
    matches: Dict[str, List[int]] = {}
    for chirality in HOPF_CODES:
        summed = khovanov_homology(connected_sum(diagram, hopf_diagram(chirality)))
        offset = _offset_match(summed, expected)
        report.details[f"sum_{chirality}"] = summed.to_json_dict()
        if offset is not None:
            matches[chirality] = list(offset)
    report.details["matching_chiralities"] = matches

    module_offsets = {}
    for chirality in HOPF_CODES:
        offset = hopf_module_offset(chirality)
        module_offsets[chirality] = list(offset) if offset is not None else None
    report.details["module_offsets"] = module_offsets

    if not matches:
        report.fail("no Hopf chirality and offset match H(D)[-1]{-2} + H(D)[1]{2}")
    for chirality, offset in matches.items():
        if module_offsets.get(chirality) != offset:
            report.fail(
                f"{chirality} Hopf: homology offset {offset} differs from module offset {module_offsets.get(chirality)}"
            )
    return report


@checker("mirror", "Mirror diagram reflects the rational table")
def check_mirror(diagram: PlanarDiagram) -> CheckReport:
    report = _new_report("mirror", diagram)
    n = len(diagram.crossings)
    original = khovanov_homology(diagram, ring="q")
    mirrored = khovanov_homology(mirror(diagram), ring="q")
    report.details["mirror"] = mirrored.to_json_dict()
    if mirrored.groups != original.reflected(n).groups:
        report.fail(f"mirror table {mirrored.to_json_dict()} != reflection {original.reflected(n).to_json_dict()}")
    return report


@checker("r1", "A kink shifts the table by {-1} (positive) or [1]{2} (negative)")
def check_r1_invariance(diagram: PlanarDiagram, arc: Optional[int] = None) -> CheckReport:
    report = _new_report("r1", diagram)
    arc = diagram.arcs[0] if arc is None else arc
    base = khovanov_homology(diagram)
    for sign, (m, n) in ((1, (0, -1)), (-1, (1, 2))):
        kinked = khovanov_homology(add_kink(diagram, arc, sign))
        if kinked.groups != base.shifted(m, n).groups:
            report.fail(f"kink of sign {sign} on arc {arc}: {kinked.to_json_dict()} is not H[{m}]{{{n}}}")
    report.details["arc"] = arc
    return report


@checker("spanning_tree", "Spanning-tree reduction lands on the leaf bidegrees with unchanged homology")
def check_spanning_tree_reduction(diagram: PlanarDiagram, numberings: int = 3, seed: int = 0) -> CheckReport:
    if not is_connected(diagram):
        raise PreconditionError("spanning-tree reduction needs a connected diagram")
    report = _new_report("spanning_tree", diagram)
    cube = build_cube(diagram)
    expected = homology_z(cube)
    rng = random.Random(seed)
    orders = [identity_numbering(diagram), tuple(reversed(identity_numbering(diagram)))]
    orders += [random_numbering(diagram, rng) for _ in range(max(0, numberings - 2))]
    for order in orders:
        try:
            reduced = reduce(cube, "spanning_tree", spanning_tree_plan(diagram, order))
        except ChainComplexError as e:
            report.fail(f"numbering {order}: {e}")
            continue
        leaves = module_a_ranks(diagram, order)
        if reduced.bidegree_table() != leaves:
            report.fail(f"numbering {order}: generators {reduced.bidegree_table().to_json_dict()} != {leaves.to_json_dict()}")
        if homology_z(reduced).groups != expected.groups:
            report.fail(f"numbering {order}: reduction changed the homology")
    report.details["numberings"] = [list(order) for order in orders]
    return report


@checker("extremal", "Extremal numberings isolate each single-circle state")
def check_extremal_numbering(diagram: PlanarDiagram) -> CheckReport:
    report = _new_report("extremal", diagram)
    invariants = alternating_invariants(diagram)
    report.details.update(n0=invariants.n0, n1=invariants.n1)
    states = enumerate_k1(diagram)
    for state in states:
        for mode in ("lower", "upper"):
            try:
                extremal_numbering(diagram, state, mode)
            except ConsistencyError as e:
                report.fail(str(e))
    report.details["states"] = len(states)
    return report


@checker("clock", "Black smoothings are constant over single-circle states")
def check_black_smoothings(diagram: PlanarDiagram) -> CheckReport:
    """
    Every single-circle state takes the black smoothing at exactly |V| - 1
    crossings; on alternating diagrams the black smoothing is the same at
    every crossing
    """
    report = _new_report("clock", diagram)
    graph = black_graph(diagram)
    counts = sorted({
        sum(1 for v, black in zip(state.values, graph.black_smoothing) if v == black)
        for state in enumerate_k1(diagram)
    })
    report.details.update(black_counts=counts, vertices=len(graph.vertices))
    if counts != [len(graph.vertices) - 1]:
        report.fail(f"black smoothing counts {counts}, expected [{len(graph.vertices) - 1}]")
    if diagram.crossings and is_alternating(diagram):
        if len(set(graph.black_smoothing)) != 1:
            report.fail(f"alternating diagram with mixed black smoothings {list(graph.black_smoothing)}")
    return report


KHOVANOV_CHECKERS = {
    "euler": check_euler_characteristic,
    "thm23": check_theorem_2_3,
    "alt": check_alternating_support,
    "hopf": check_hopf_addition,
    "mirror": check_mirror,
    "r1": check_r1_invariance,
    "spanning_tree": check_spanning_tree_reduction,
    "extremal": check_extremal_numbering,
    "clock": check_black_smoothings,
}
