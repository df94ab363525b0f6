"""
Diagram representation: PD parsing, smoothings, connectivity, kinks and
checkerboard combinatorics
"""
import logging
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
from networkx.utils import UnionFind
from pydantic import BaseModel, Field, ValidationError
from pyparsing import (
    Group,
    Keyword,
    Literal,
    Optional as Opt,
    ParseException,
    StringEnd,
    Suppress,
    Word,
    ZeroOrMore,
    nums,
    python_style_comment,
)
from sympy import Matrix

from models.diagram_models import (
    SMOOTHING_PAIRS,
    BlackGraph,
    Dart,
    PlanarDiagram,
    ResolutionWord,
    StateDiagram,
)
from .decorators import crossing_guard
from .exceptions import ConsistencyError, DiagramError, PDParseError, PreconditionError

logger = logging.getLogger(__name__)

WordLike = Union[ResolutionWord, Sequence[Optional[int]], str]


# PD grammar ---------------------------------------------------------------

_integer = Word(nums).set_parse_action(lambda t: int(t[0]))
_lpar, _rpar, _comma = Suppress("("), Suppress(")"), Suppress(",")
_crossing = Group(Literal("X") + _lpar + _integer + (_comma + _integer) * 3 + _rpar)
_circle = Group(Literal("O") + _lpar + _integer + _rpar)
_header = Suppress(Keyword("unbounded_face")) + Suppress(":") + _integer
PD_GRAMMAR = Opt(Group(_header)("face")) + Group(ZeroOrMore(_crossing | _circle))("tokens") + StringEnd()
PD_GRAMMAR.ignore(python_style_comment)


def parse_pd(text: str, name: Optional[str] = None) -> PlanarDiagram:
    """
    Parse PD-code text into a validated diagram

    Args:
        text: Whitespace separated X(a,b,c,d) and O(a) tokens, optionally
            preceded by an ``unbounded_face: <index>`` header line
        name: Display name attached to the diagram

    Returns:
        PlanarDiagram with crossings numbered in textual order
    """
    try:
        parsed = PD_GRAMMAR.parse_string(text, parse_all=True)
    except ParseException as e:
        raise PDParseError(f"malformed PD code at column {e.column}: {e.msg}", text) from e

    crossings, circles = [], []
    for token in parsed["tokens"]:
        kind, *labels = token
        if kind == "X":
            crossings.append(tuple(labels))
        else:
            circles.append(labels[0])
    face = parsed["face"][0] if "face" in parsed else None

    try:
        return PlanarDiagram(
            crossings=tuple(crossings), free_circles=tuple(circles), marked_face=face, name=name
        )
    except ValidationError as e:
        raise PDParseError(_first_error(e), text) from e


def _first_error(error: ValidationError) -> str:
    first = error.errors()[0]
    return str(first.get("msg", error)).removeprefix("Value error, ")


# Smoothing and connectivity -----------------------------------------------

def word_values(diagram: PlanarDiagram, word: Optional[WordLike]) -> Tuple[Optional[int], ...]:
    """Smoothing values per crossing index; None means all crossings unsmoothed"""
    if word is None:
        return (None,) * len(diagram.crossings)
    values = ResolutionWord.coerce(word).values
    if len(values) != len(diagram.crossings):
        raise PreconditionError(f"word has {len(values)} entries for {len(diagram.crossings)} crossings")
    return values


def arc_union(diagram: PlanarDiagram, values: Sequence[Optional[int]]) -> UnionFind:
    """Union-find over arcs; an unsmoothed crossing merges its four arcs"""
    uf = UnionFind(diagram.arcs)
    for quad, value in zip(diagram.crossings, values):
        if value is None:
            uf.union(*quad)
        else:
            for s, t in SMOOTHING_PAIRS[value]:
                uf.union(quad[s], quad[t])
    return uf


def component_count(diagram: PlanarDiagram, word: Optional[WordLike] = None) -> int:
    """Connected components of the partially smoothed diagram, free circles included"""
    values = word_values(diagram, word)
    return sum(1 for _ in arc_union(diagram, values).to_sets())


def state_circles(diagram: PlanarDiagram, word: WordLike) -> StateDiagram:
    """Trace the circles of a Kauffman state"""
    values = word_values(diagram, word)
    if any(v is None for v in values):
        raise PreconditionError("circle tracing needs a total word")
    circles = sorted(tuple(sorted(group)) for group in arc_union(diagram, values).to_sets())
    return StateDiagram(base=diagram, word=ResolutionWord(values=values), circles=tuple(circles))


def count_circles(diagram: PlanarDiagram, word: WordLike) -> int:
    """Number of disjoint circles of a total smoothing"""
    return state_circles(diagram, word).circle_count


def is_connected(diagram: PlanarDiagram, word: Optional[WordLike] = None) -> bool:
    return component_count(diagram, word) == 1


def disconnecting_smoothing(diagram: PlanarDiagram, word: Optional[WordLike], crossing: int) -> Optional[int]:
    """
    The smoothing at ``crossing`` that disconnects the diagram, if exactly one does

    Args:
        diagram: The diagram
        word: Partial smoothing; the crossing must be unsmoothed in it
        crossing: Crossing number (1-based)

    Returns:
        0 or 1 for a splitting crossing, None otherwise
    """
    values = list(word_values(diagram, word))
    if not 1 <= crossing <= len(values):
        raise PreconditionError(f"no crossing {crossing} in a {len(values)}-crossing diagram")
    if values[crossing - 1] is not None:
        raise PreconditionError(f"crossing {crossing} is already smoothed")

    base = sum(1 for _ in arc_union(diagram, values).to_sets())
    splits = []
    for value in (0, 1):
        values[crossing - 1] = value
        splits.append(sum(1 for _ in arc_union(diagram, values).to_sets()) > base)
    if splits[0] != splits[1]:
        return 0 if splits[0] else 1
    return None


def is_splitting(diagram: PlanarDiagram, word: Optional[WordLike], crossing: int) -> bool:
    """True iff exactly one smoothing at ``crossing`` disconnects the diagram"""
    if not is_connected(diagram, word):
        raise PreconditionError("splitting is only defined on connected diagrams")
    return disconnecting_smoothing(diagram, word, crossing) is not None


def kink_sign(diagram: PlanarDiagram, word: Optional[WordLike], crossing: int) -> int:
    """+1 when the 0-smoothing disconnects the kink, -1 when the 1-smoothing does"""
    value = disconnecting_smoothing(diagram, word, crossing)
    if value is None:
        raise PreconditionError(f"crossing {crossing} is not splitting")
    return 1 if value == 0 else -1


# Faces and the black graph ------------------------------------------------

class FaceStructure(BaseModel):
    """Faces of the rotation system and their checkerboard colors"""
    faces: Tuple[Tuple[Dart, ...], ...] = Field(..., description="Boundary darts of each face")
    face_of_dart: Dict[Dart, int] = Field(..., description="Face index of each dart")
    marked_face: int = Field(..., description="White unbounded face")
    black: Tuple[int, ...] = Field(..., description="Indices of black faces")


def default_marked_face(diagram: PlanarDiagram) -> int:
    """The face at the first corner of crossing 1, unless the diagram names one"""
    if diagram.marked_face is not None:
        return diagram.marked_face
    faces = diagram.face_darts()
    for index, face in enumerate(faces):
        if (0, 1) in face:
            return index
    return 0


def face_structure(diagram: PlanarDiagram) -> FaceStructure:
    """
    Faces and chessboard coloring with the marked face white

    Adjacent corners of a crossing lie on opposite sides of an arc, so the
    faces of darts (c, s) and (c, s+1) must receive different colors.
    """
    if not diagram.crossings:
        raise PreconditionError("face structure needs at least one crossing")
    if not is_connected(diagram):
        raise PreconditionError("face structure needs a connected diagram")

    faces = diagram.face_darts()
    face_of_dart = {dart: index for index, face in enumerate(faces) for dart in face}
    marked = default_marked_face(diagram)

    adjacency = nx.Graph()
    adjacency.add_nodes_from(range(len(faces)))
    for c in range(len(diagram.crossings)):
        for s in range(4):
            adjacency.add_edge(face_of_dart[(c, s)], face_of_dart[(c, (s + 1) % 4)])
    try:
        colors = nx.bipartite.color(adjacency)
    except nx.NetworkXError as e:
        raise ConsistencyError(f"faces admit no chessboard coloring: {e}") from e

    flip = colors[marked]
    black = tuple(f for f in range(len(faces)) if colors[f] != flip)
    return FaceStructure(faces=tuple(faces), face_of_dart=face_of_dart, marked_face=marked, black=black)


def corner_face(structure: FaceStructure, crossing_index: int, corner: int) -> int:
    """Face of the corner between slots ``corner`` and ``corner + 1``"""
    return structure.face_of_dart[(crossing_index, (corner + 1) % 4)]


def black_graph(diagram: PlanarDiagram) -> BlackGraph:
    """
    Multigraph on the black faces with one edge per crossing

    Args:
        diagram: A connected diagram

    Returns:
        BlackGraph whose edge k joins the black corners of crossing k+1
    """
    if not diagram.crossings:
        if len(diagram.free_circles) != 1:
            raise PreconditionError("black graph needs a connected diagram")
        return BlackGraph(vertices=(1,), edges=(), crossing_of_edge=(), black_smoothing=(), marked_face=0)

    structure = face_structure(diagram)
    black = set(structure.black)
    edges, smoothing = [], []
    for c in range(len(diagram.crossings)):
        if corner_face(structure, c, 0) in black:
            # corners 0 and 2 are merged by the 1-smoothing
            edges.append((corner_face(structure, c, 0), corner_face(structure, c, 2)))
            smoothing.append(1)
        else:
            edges.append((corner_face(structure, c, 1), corner_face(structure, c, 3)))
            smoothing.append(0)
    graph = BlackGraph(
        vertices=tuple(sorted(black)),
        edges=tuple(edges),
        crossing_of_edge=tuple(range(1, len(edges) + 1)),
        black_smoothing=tuple(smoothing),
        marked_face=structure.marked_face,
    )
    logger.debug("black graph of %s: %d vertices, %d edges", diagram, len(graph.vertices), len(graph.edges))
    return graph


def smoothing_colors(diagram: PlanarDiagram) -> Tuple[int, ...]:
    """Per crossing, the smoothing that merges the black corners"""
    return black_graph(diagram).black_smoothing


def spanning_trees(graph: BlackGraph) -> List[Tuple[int, ...]]:
    """Spanning trees as sorted tuples of crossing numbers"""
    target = len(graph.vertices) - 1
    candidates = [(crossing, u, v) for (u, v), crossing in zip(graph.edges, graph.crossing_of_edge) if u != v]
    trees = []
    for subset in combinations(candidates, target):
        uf = UnionFind(graph.vertices)
        acyclic = True
        for _, u, v in subset:
            if uf[u] == uf[v]:
                acyclic = False
                break
            uf.union(u, v)
        if acyclic:
            trees.append(tuple(crossing for crossing, _, _ in subset))
    return trees


def spanning_tree_count(graph: BlackGraph) -> int:
    """Matrix-Tree theorem: any cofactor of the graph Laplacian"""
    index = {v: k for k, v in enumerate(graph.vertices)}
    size = len(index)
    laplacian = [[0] * size for _ in range(size)]
    for u, v in graph.edges:
        if u == v:
            continue
        a, b = index[u], index[v]
        laplacian[a][a] += 1
        laplacian[b][b] += 1
        laplacian[a][b] -= 1
        laplacian[b][a] -= 1
    if size <= 1:
        return 1
    return int(Matrix(laplacian)[1:, 1:].det())


@crossing_guard("enumerate_k1")
def enumerate_k1(diagram: PlanarDiagram) -> List[ResolutionWord]:
    """All single-circle Kauffman states, in lexicographic word order"""
    if not is_connected(diagram):
        raise PreconditionError("K1 enumeration needs a connected diagram")
    states = []
    for values in product((0, 1), repeat=len(diagram.crossings)):
        if sum(1 for _ in arc_union(diagram, values).to_sets()) == 1:
            states.append(ResolutionWord(values=values))
    return states


@crossing_guard("tree_state_bijection")
def tree_state_bijection(diagram: PlanarDiagram) -> Dict[Tuple[int, ...], ResolutionWord]:
    """
    Map each spanning tree of the black graph to its single-circle state

    The state takes the black smoothing exactly at the tree's crossings.
    The map is verified to be a bijection onto enumerate_k1.
    """
    graph = black_graph(diagram)
    mapping: Dict[Tuple[int, ...], ResolutionWord] = {}
    for tree in spanning_trees(graph):
        chosen = set(tree)
        values = tuple(
            black if c + 1 in chosen else 1 - black for c, black in enumerate(graph.black_smoothing)
        )
        mapping[tree] = ResolutionWord(values=values)

    states = enumerate_k1(diagram)
    images = list(mapping.values())
    if len(set(images)) != len(images):
        raise ConsistencyError(f"tree to state map is not injective on {diagram}")
    if set(images) != set(states):
        raise ConsistencyError(
            f"tree to state map misses K1 on {diagram}: {len(images)} trees, {len(states)} states"
        )
    return mapping


# Orientation, components and signs ----------------------------------------

class Component(BaseModel):
    """One link component with its traversal"""
    arcs: Tuple[int, ...] = Field(..., description="Arcs in traversal order")
    passages: Tuple[Dart, ...] = Field(default=(), description="(crossing index, entry slot) per passage")

    @property
    def least_arc(self) -> int:
        return min(self.arcs)


def _walk(diagram: PlanarDiagram, start: Dart, ends) -> Component:
    arcs, passages = [], []
    dart = start
    while True:
        c, s = dart
        passages.append(dart)
        arcs.append(diagram.crossings[c][s])
        dart = diagram.partner((c, (s + 2) % 4), ends)
        if dart == start:
            return Component(arcs=tuple(arcs), passages=tuple(passages))


def components(diagram: PlanarDiagram) -> List[Component]:
    """
    Link components sorted by least arc, with orientation flags applied

    Each component is oriented so that its first under passage (lowest
    crossing) runs from slot 0 to slot 2; a component that never passes
    under starts at its first over passage.
    """
    ends = diagram.darts_of_arc()
    used = set()
    found: List[Component] = []
    starts = [(c, s) for s in (0, 2) for c in range(len(diagram.crossings))]
    starts.sort()
    starts += [(c, s) for c in range(len(diagram.crossings)) for s in (1, 3)]
    for start in starts:
        if start in used:
            continue
        component = _walk(diagram, start, ends)
        for c, s in component.passages:
            used.add((c, s))
            used.add((c, (s + 2) % 4))
        found.append(component)
    found += [Component(arcs=(a,)) for a in diagram.free_circles]
    found.sort(key=lambda comp: comp.least_arc)

    if diagram.orientation is not None:
        if len(diagram.orientation) != len(found):
            raise DiagramError(
                f"orientation has {len(diagram.orientation)} flags for {len(found)} components"
            )
        found = [_reverse(comp) if flip else comp for comp, flip in zip(found, diagram.orientation)]
    return found


def _reverse(component: Component) -> Component:
    passages = tuple((c, (s + 2) % 4) for c, s in reversed(component.passages))
    return Component(arcs=tuple(reversed(component.arcs)), passages=passages)


def crossing_signs(diagram: PlanarDiagram) -> Tuple[int, ...]:
    """Writhe sign per crossing from the component orientations"""
    under: Dict[int, int] = {}
    over: Dict[int, int] = {}
    for component in components(diagram):
        for c, s in component.passages:
            (under if s % 2 == 0 else over)[c] = s
    return tuple(1 if over[c] == (under[c] + 3) % 4 else -1 for c in range(len(diagram.crossings)))


def writhe(diagram: PlanarDiagram) -> int:
    return sum(crossing_signs(diagram))


def sign_counts(diagram: PlanarDiagram) -> Tuple[int, int]:
    """(n_plus, n_minus)"""
    signs = crossing_signs(diagram)
    return sum(1 for s in signs if s > 0), sum(1 for s in signs if s < 0)


def is_alternating(diagram: PlanarDiagram) -> bool:
    """Over and under passages alternate along every component"""
    for component in components(diagram):
        kinds = [s % 2 for _, s in component.passages]
        if any(kinds[k] == kinds[(k + 1) % len(kinds)] for k in range(len(kinds))):
            return False
    return True


# Diagram constructions ----------------------------------------------------

def mirror(diagram: PlanarDiagram) -> PlanarDiagram:
    """Change every crossing by rotating its quadruple one slot"""
    crossings = tuple((b, c, d, a) for a, b, c, d in diagram.crossings)
    marked = None
    if diagram.marked_face is not None and diagram.crossings:
        old_face = diagram.face_darts()[diagram.marked_face]
        target = {(c, (s - 1) % 4) for c, s in old_face}
        rebuilt = PlanarDiagram(crossings=crossings, free_circles=diagram.free_circles)
        marked = next(k for k, face in enumerate(rebuilt.face_darts()) if set(face) == target)
    name = f"mirror({diagram.name})" if diagram.name else None
    return PlanarDiagram(
        crossings=crossings,
        free_circles=diagram.free_circles,
        orientation=diagram.orientation,
        marked_face=marked,
        name=name,
    )


def renumber(diagram: PlanarDiagram, numbering: Sequence[int]) -> PlanarDiagram:
    """Reorder crossings so that crossing numbering[k] becomes crossing k+1"""
    if sorted(numbering) != list(range(1, len(diagram.crossings) + 1)):
        raise PreconditionError(f"numbering {tuple(numbering)} is not a permutation of the crossings")
    return PlanarDiagram(
        crossings=tuple(diagram.crossings[c - 1] for c in numbering),
        free_circles=diagram.free_circles,
        orientation=diagram.orientation,
        name=diagram.name,
    )


def _max_arc(diagram: PlanarDiagram) -> int:
    return max(diagram.arcs, default=0)


def add_kink(diagram: PlanarDiagram, arc: int, sign: int) -> PlanarDiagram:
    """
    Insert a Reidemeister-1 kink on ``arc``

    Args:
        diagram: The diagram
        arc: Arc label that receives the kink
        sign: +1 for a kink split off by its 0-smoothing, -1 for the 1-smoothing

    Returns:
        Diagram with one more crossing, appended last
    """
    if sign not in (1, -1):
        raise PreconditionError("kink sign must be +1 or -1")
    top = _max_arc(diagram)
    tail, loop = top + 1, top + 2
    crossings = [list(quad) for quad in diagram.crossings]
    if arc in diagram.free_circles:
        circles = tuple(a for a in diagram.free_circles if a != arc)
        tail = arc
    else:
        ends = diagram.darts_of_arc().get(arc)
        if ends is None:
            raise PreconditionError(f"diagram has no arc {arc}")
        c, s = ends[1]
        crossings[c][s] = tail
        circles = diagram.free_circles
    kink = (loop, loop, arc, tail) if sign > 0 else (arc, loop, loop, tail)
    crossings.append(list(kink))
    return PlanarDiagram(
        crossings=tuple(tuple(q) for q in crossings),
        free_circles=circles,
        name=f"{diagram.name}+kink{'+' if sign > 0 else '-'}" if diagram.name else None,
    )


def relabel(diagram: PlanarDiagram, offset: int) -> PlanarDiagram:
    return PlanarDiagram(
        crossings=tuple(tuple(a + offset for a in quad) for quad in diagram.crossings),
        free_circles=tuple(a + offset for a in diagram.free_circles),
        name=diagram.name,
    )


def connected_sum(
    first: PlanarDiagram, second: PlanarDiagram, arc1: Optional[int] = None, arc2: Optional[int] = None
) -> PlanarDiagram:
    """
    Splice two connected diagrams along one arc each

    The second diagram's arcs are shifted past the first's; of the two ways
    to reconnect the cut ends, the first one with a planar rotation system
    is returned.

    Args:
        first: Diagram whose crossings keep their numbers
        second: Diagram whose crossings are appended
        arc1: Arc of ``first`` to cut (least arc by default)
        arc2: Arc of ``second`` to cut (least arc by default)
    """
    for d in (first, second):
        if d.crossings and not is_connected(d):
            raise PreconditionError("connected sum needs connected diagrams")
    if not second.crossings:
        return first
    if not first.crossings:
        return second

    arc1 = first.arcs[0] if arc1 is None else arc1
    arc2 = second.arcs[0] if arc2 is None else arc2
    offset = _max_arc(first)
    moved = relabel(second, offset)
    cut2 = arc2 + offset
    ends1 = first.darts_of_arc().get(arc1)
    ends2 = moved.darts_of_arc().get(cut2)
    if ends1 is None or ends2 is None:
        raise PreconditionError(f"arcs {arc1}/{arc2} do not belong to the diagrams")

    name = f"{first.name}#{second.name}" if first.name and second.name else None
    last_error: Optional[Exception] = None
    for q_index in (0, 1):
        left = [list(q) for q in first.crossings]
        right = [list(q) for q in moved.crossings]
        c, s = ends1[1]
        left[c][s] = cut2
        c, s = ends2[q_index]
        right[c][s] = arc1
        try:
            return PlanarDiagram(crossings=tuple(tuple(q) for q in left + right), name=name)
        except ValidationError as e:
            last_error = e
            logger.debug("connected sum pairing %d rejected: %s", q_index, _first_error(e))
    raise DiagramError(f"no planar connected sum of {first} and {second}: {last_error}")
