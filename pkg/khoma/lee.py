"""
Lee's deformation of the cube complex, filtered Lee homology and the
admissible-coloring decomposition
"""
import logging
from collections import defaultdict
from itertools import product
from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field

from models.diagram_models import Coloring, PlanarDiagram, ResolutionWord
from models.invariant_models import LeeHomology
from models.report_models import CheckReport
from .config import get_settings
from .decorators import checker, crossing_guard
from .diagram_core import components, is_alternating
from .exceptions import ChainComplexError, ConsistencyError, PreconditionError
from .expansion import alternating_invariants
from .homalg import BasedComplex, add_maps, compose, filtered_homology_q, homology_z, rank_q
from .khovanov import KHOVANOV, ONE, X, FrobeniusData, SparseMap, cube_generators, cube_map, cube_vertices, khovanov_homology

logger = logging.getLogger(__name__)

LEE_DEFORMATION = FrobeniusData(
    name="lee",
    merge={(X, X): ((ONE, 1),)},
    split={X: (((ONE, ONE), 1),)},
    dj=4,
)

COLORS = ("a", "b")


class LeeData(BaseModel):
    """The deformation maps together with the diagonalising basis a = X + 1, b = X - 1"""
    model_config = ConfigDict(frozen=True)

    deformation: FrobeniusData = Field(default=LEE_DEFORMATION)
    basis: Dict[str, Dict[int, int]] = Field(
        default_factory=lambda: {"a": {X: 1, ONE: 1}, "b": {X: 1, ONE: -1}},
        description="Lee basis vectors in the {1, X} coordinates",
    )

    def to_lee(self, color: str, label: int) -> int:
        """Coordinate of basis label on the Lee vector ``color``, scaled by 2"""
        return 1 if label == X or color == "a" else -1


LEE = LeeData()


# Algebra-level identities -----------------------------------------------------

def _multiply(algebras: Tuple[FrobeniusData, ...], u: Dict[int, int], v: Dict[int, int]) -> Dict[int, int]:
    result: Dict[int, int] = defaultdict(int)
    for (p, cp), (q, cq) in product(u.items(), v.items()):
        for algebra in algebras:
            for label, coefficient in algebra.merge.get((p, q), ()):
                result[label] += cp * cq * coefficient
    return {k: c for k, c in result.items() if c}


def _comultiply(algebras: Tuple[FrobeniusData, ...], u: Dict[int, int]) -> Dict[Tuple[int, int], int]:
    result: Dict[Tuple[int, int], int] = defaultdict(int)
    for p, cp in u.items():
        for algebra in algebras:
            for pair, coefficient in algebra.split.get(p, ()):
                result[pair] += cp * coefficient
    return {k: c for k, c in result.items() if c}


def _tensor(u: Dict[int, int], v: Dict[int, int]) -> Dict[Tuple[int, int], int]:
    return {(p, q): cp * cq for (p, cp), (q, cq) in product(u.items(), v.items()) if cp * cq}


def _scaled(u: Dict[int, int], factor: int) -> Dict[int, int]:
    return {k: c * factor for k, c in u.items() if c * factor}


def lee_basis_check(data: LeeData = LEE) -> List[str]:
    """
    Failures of a·a = 2a, b·b = -2b, a·b = 0, Δ'(a) = a⊗a and Δ'(b) = b⊗b
    under the deformed maps m + m_Φ and Δ + Δ_Φ
    """
    algebras = (KHOVANOV, data.deformation)
    a, b = data.basis["a"], data.basis["b"]
    failures = []
    for name, actual, expected in (
        ("a·a", _multiply(algebras, a, a), _scaled(a, 2)),
        ("b·b", _multiply(algebras, b, b), _scaled(b, -2)),
        ("a·b", _multiply(algebras, a, b), {}),
        ("Δ'(a)", _comultiply(algebras, a), _tensor(a, a)),
        ("Δ'(b)", _comultiply(algebras, b), _tensor(b, b)),
    ):
        if actual != expected:
            failures.append(f"{name} = {actual}, expected {expected}")
    return failures


# Complexes --------------------------------------------------------------------

def _sum_maps(first: SparseMap, second: SparseMap) -> SparseMap:
    total: SparseMap = {g: dict(row) for g, row in first.items()}
    for g, row in second.items():
        target = total.setdefault(g, {})
        for h, c in row.items():
            value = target.get(h, 0) + c
            if value:
                target[h] = value
            else:
                target.pop(h, None)
    return total


def deformation_map(diagram: PlanarDiagram) -> SparseMap:
    """Φ: the cube map built from m_Φ and Δ_Φ with the cube signs"""
    return cube_map(diagram, LEE_DEFORMATION)


def lee_complex(diagram: PlanarDiagram) -> BasedComplex:
    """
    The filtered complex with differential d + Φ

    Φ∘Φ = 0, dΦ + Φd = 0 and the bidegree (1, 4) of every Φ entry are
    checked before the complex is assembled; the BasedComplex itself then
    verifies (d + Φ)² = 0 and that no entry lowers j.
    """
    vertices = cube_vertices(diagram)
    generators = cube_generators(vertices)
    d = cube_map(diagram, KHOVANOV, vertices)
    phi = cube_map(diagram, LEE_DEFORMATION, vertices)

    for g, row in phi.items():
        i, j = generators[g]
        for h in row:
            if generators[h] != (i + 1, j + 4):
                raise ChainComplexError(f"Φ entry {g} -> {h} has bidegree {generators[h]} from {(i, j)}")
    if compose(phi, phi):
        raise ChainComplexError(f"Φ∘Φ != 0 on {diagram}")
    if add_maps(compose(d, phi), compose(phi, d)):
        raise ChainComplexError(f"dΦ + Φd != 0 on {diagram}")
    return BasedComplex(generators, _sum_maps(d, phi), allowed_dj=(0, LEE_DEFORMATION.dj))


def lee_homology(diagram: PlanarDiagram) -> LeeHomology:
    """
    Integral homology graded by i, and the associated graded of the
    j-filtration over Q
    """
    complex_ = lee_complex(diagram)
    return LeeHomology(integral=homology_z(complex_), rational=filtered_homology_q(complex_))


@checker("lee_degree", "Rational Lee homology of a knot sits in one primary degree")
def knot_degree_check(diagram: PlanarDiagram) -> CheckReport:
    if len(components(diagram)) != 1:
        raise PreconditionError(f"{diagram} has more than one component")
    report = CheckReport(name="lee_degree", diagram=str(diagram), passed=True)
    rational = lee_homology(diagram).rational
    degrees = rational.primary_degrees
    report.details.update(primary_degrees=degrees, rational=rational.to_json_dict())
    if len(degrees) != 1:
        report.fail(f"rational Lee homology spans primary degrees {degrees}")
    return report


# Admissible colorings -----------------------------------------------------------

def _admissible_at(colors: Tuple[str, str, str, str]) -> bool:
    c0, c1, c2, c3 = colors
    if c0 == c1 == c2 == c3:
        return True
    return (c0 == c1 and c2 == c3 and c0 != c2) or (c1 == c2 and c3 == c0 and c0 != c1)


@crossing_guard("admissible_colorings")
def admissible_colorings(diagram: PlanarDiagram) -> List[Coloring]:
    """
    All arc colorings by {a, b} that are monochromatic or split into two
    neighbouring pairs at every crossing

    Args:
        diagram: The diagram

    Returns:
        Colorings in lexicographic order of their color tuples
    """
    arcs = diagram.arcs
    limit = get_settings().max_coloring_arcs
    if len(arcs) > limit:
        raise PreconditionError(
            f"coloring enumeration refuses {len(arcs)} arcs (limit {limit}, raise KHOMA_MAX_COLORING_ARCS)"
        )
    found = []
    for choice in product(COLORS, repeat=len(arcs)):
        color = dict(zip(arcs, choice))
        if all(_admissible_at(tuple(color[a] for a in quad)) for quad in diagram.crossings):
            found.append(Coloring(colors=tuple(zip(arcs, choice))))
    return found


def colored_smoothing(diagram: PlanarDiagram, coloring: Coloring) -> ResolutionWord:
    """
    Smooth every two-colored crossing along its monochromatic pairs

    Monochromatic crossings stay unsmoothed.
    """
    color = coloring.as_dict()
    values = []
    for quad in diagram.crossings:
        c0, c1, c2, c3 = (color[a] for a in quad)
        if c0 == c1 == c2 == c3:
            values.append(None)
        elif c0 == c1 and c2 == c3:
            values.append(0)
        elif c1 == c2 and c3 == c0:
            values.append(1)
        else:
            raise ConsistencyError(f"coloring {color} is not admissible at {quad}")
    return ResolutionWord(values=tuple(values))


def _lee_element_coloring(vertex, colors: Tuple[str, ...]) -> Tuple[Tuple[int, str], ...]:
    return tuple(sorted((arc, colors[k]) for k, circle in enumerate(vertex.circles) for arc in circle))


def _to_standard(vertex, colors: Tuple[str, ...]) -> Dict[Tuple, int]:
    """Lee basis tensor expanded over the {1, X} basis"""
    vector = {}
    for labels in product((ONE, X), repeat=len(vertex.circles)):
        coefficient = 1
        for color, label in zip(colors, labels):
            coefficient *= LEE.basis[color][label]
        vector[(vertex.bits, labels)] = coefficient
    return vector


def _to_lee(vertex, vector: Dict[Tuple, int]) -> Dict[Tuple[str, ...], int]:
    """Lee coordinates of a vector supported on one vertex, scaled by 2^circles"""
    coords = {}
    for colors in product(COLORS, repeat=len(vertex.circles)):
        value = 0
        for (_, labels), c in vector.items():
            sign = 1
            for color, label in zip(colors, labels):
                sign *= LEE.to_lee(color, label)
            value += c * sign
        if value:
            coords[colors] = value
    return coords


@checker("colorings", "Admissible colorings split the rational Lee complex into subcomplexes")
def coloring_decomposition_check(diagram: PlanarDiagram) -> CheckReport:
    """
    Dimension bookkeeping, subcomplex property, acyclicity of the summands
    with crossings and the 2^k count of crossingless summands
    """
    report = CheckReport(name="colorings", diagram=str(diagram), passed=True)
    complex_ = lee_complex(diagram)
    vertices = cube_vertices(diagram)
    colorings = admissible_colorings(diagram)
    k = len(components(diagram))

    crossingless = 0
    total = 0
    for coloring in colorings:
        partial = colored_smoothing(diagram, coloring)
        free = [c for c, v in enumerate(partial.values) if v is None]
        color_of = coloring.as_dict()
        elements = []
        for choice in product((0, 1), repeat=len(free)):
            values = list(partial.values)
            for c, v in zip(free, choice):
                values[c] = v
            vertex = vertices[ResolutionWord(values=tuple(values)).to_bits()]
            colors = tuple(color_of[circle[0]] for circle in vertex.circles)
            if _lee_element_coloring(vertex, colors) != coloring.colors:
                raise ConsistencyError(f"state {vertex.word} has a two-colored circle under {color_of}")
            elements.append((vertex, colors))
        total += len(elements)
        index = {(vertex.bits, colors): n for n, (vertex, colors) in enumerate(elements)}

        matrix = [[0] * len(elements) for _ in elements]
        for column, (vertex, colors) in enumerate(elements):
            image: Dict[int, Dict[Tuple, int]] = defaultdict(dict)
            for g, c in _to_standard(vertex, colors).items():
                for h, value in complex_.row(g).items():
                    image[h[0]][h] = image[h[0]].get(h, 0) + c * value
            for bits, vector in sorted(image.items()):
                target = vertices[bits]
                for target_colors, value in _to_lee(target, vector).items():
                    row = index.get((bits, target_colors))
                    if row is None:
                        report.fail(f"coloring {coloring.as_dict()}: d' leaves V(D_c) at state {bits:b}")
                        continue
                    matrix[row][column] = value

        dimension = len(elements) - 2 * rank_q(matrix, len(elements))
        if free:
            if dimension != 0:
                report.fail(f"coloring {coloring.as_dict()}: V(D_c) with crossings has homology of dimension {dimension}")
        else:
            crossingless += 1
            if dimension != 1:
                report.fail(f"coloring {coloring.as_dict()}: crossingless V(D_c) has dimension {dimension}")

    report.details.update(colorings=len(colorings), crossingless=crossingless, components=k, dimension=total)
    if total != len(complex_):
        report.fail(f"summands have total dimension {total}, complex has {len(complex_)}")
    if crossingless != 2**k:
        report.fail(f"{crossingless} crossingless colorings, expected 2^{k}")
    return report


@checker("orientations", "Crossingless colorings correspond to orientations")
def check_coloring_orientations(diagram: PlanarDiagram) -> CheckReport:
    """
    Crossingless colorings switch color at every passage along a component,
    and swapping a and b on one component maps them to crossingless colorings
    """
    report = CheckReport(name="orientations", diagram=str(diagram), passed=True)
    parts = components(diagram)
    crossingless = [c for c in admissible_colorings(diagram) if colored_smoothing(diagram, c).is_total]
    known = {c.colors for c in crossingless}
    for coloring in crossingless:
        color = coloring.as_dict()
        for part in parts:
            arcs = part.arcs
            if len(arcs) > 1 and any(color[a] == color[arcs[(k + 1) % len(arcs)]] for k, a in enumerate(arcs)):
                report.fail(f"coloring {color} does not alternate along component {list(arcs)}")
                continue
            flipped = dict(color)
            for a in part.arcs:
                flipped[a] = "b" if color[a] == "a" else "a"
            if tuple(sorted(flipped.items())) not in known:
                report.fail(f"recoloring component {list(part.arcs)} of {color} leaves the crossingless set")
    report.details.update(crossingless=len(crossingless), components=len(parts))
    if len(crossingless) != 2 ** len(parts):
        report.fail(f"{len(crossingless)} crossingless colorings for {len(parts)} components")
    return report


@checker("lee", "Lee differential identities, dimension 2^k and comparison with Khovanov")
def check_lee_structure(diagram: PlanarDiagram) -> CheckReport:
    """
    Builds the deformed complex (which verifies Φ² = 0, dΦ + Φd = 0 and
    (d + Φ)² = 0), then checks the basis identities, the rational dimension
    2^k, the comparison with Khovanov homology and, for alternating knots,
    two-line support of the associated graded
    """
    report = CheckReport(name="lee", diagram=str(diagram), passed=True)
    for failure in lee_basis_check():
        report.fail(failure)
    try:
        homology = lee_homology(diagram)
    except ChainComplexError as e:
        report.fail(str(e))
        return report

    k = len(components(diagram))
    dimension = homology.rational.total_rank
    khovanov_dimension = khovanov_homology(diagram, ring="q").total_rank
    report.details.update(
        rational=homology.rational.to_json_dict(),
        integral=homology.integral.to_json_dict(),
        dimension=dimension,
        khovanov_dimension=khovanov_dimension,
    )
    if dimension != 2**k:
        report.fail(f"rational Lee dimension {dimension} != 2^{k}")
    if dimension > khovanov_dimension:
        report.fail(f"rational Lee dimension {dimension} exceeds Khovanov dimension {khovanov_dimension}")

    if k == 1 and diagram.crossings and is_alternating(diagram):
        n1 = alternating_invariants(diagram).n1
        for i, j in homology.rational.support:
            if j - 2 * i + n1 not in (-1, 1):
                report.fail(f"associated graded class at ({i},{j}) lies off the lines j = 2i - n1 +- 1")
    return report


LEE_CHECKERS = {
    "lee": check_lee_structure,
    "lee_degree": knot_degree_check,
    "colorings": coloring_decomposition_check,
    "orientations": check_coloring_orientations,
}
