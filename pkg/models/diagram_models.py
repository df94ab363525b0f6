"""
Pydantic models for planar diagrams, resolutions and checkerboard data
"""
from collections import Counter
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Dart = Tuple[int, int]
Quadruple = Tuple[int, int, int, int]

# Arc slots joined by each smoothing, slots counted counterclockwise from
# the incoming under-strand.
SMOOTHING_PAIRS: Dict[int, Tuple[Tuple[int, int], Tuple[int, int]]] = {
    0: ((0, 1), (2, 3)),
    1: ((0, 3), (1, 2)),
}


class PlanarDiagram(BaseModel):
    """A link diagram given by a numbered PD code"""
    model_config = ConfigDict(frozen=True)

    crossings: Tuple[Quadruple, ...] = Field(default=(), description="Arc quadruples in crossing-number order")
    free_circles: Tuple[int, ...] = Field(default=(), description="Arc labels of crossingless components")
    orientation: Optional[Tuple[bool, ...]] = Field(
        default=None, description="Per-component reversal flags relative to the derived orientation"
    )
    marked_face: Optional[int] = Field(default=None, ge=0, description="Face index of the unbounded region")
    name: Optional[str] = Field(default=None, description="Display name")

    @field_validator("crossings")
    @classmethod
    def _positive_labels(cls, crossings):
        for index, quad in enumerate(crossings, start=1):
            if any(a <= 0 for a in quad):
                raise ValueError(f"crossing {index} uses a non-positive arc label: {quad}")
        return crossings

    @model_validator(mode="after")
    def _closed_and_planar(self):
        counts = Counter(a for quad in self.crossings for a in quad)
        bad = sorted(a for a, k in counts.items() if k != 2)
        if bad:
            raise ValueError(f"arcs must occur exactly twice across crossings; offending arcs: {bad}")
        if any(a <= 0 for a in self.free_circles):
            raise ValueError("free circle labels must be positive")
        if len(set(self.free_circles)) != len(self.free_circles):
            raise ValueError("free circle labels must be distinct")
        clash = sorted(set(self.free_circles) & set(counts))
        if clash:
            raise ValueError(f"free circle labels reused by crossings: {clash}")

        faces = self.face_darts()
        vertices, edges = len(self.crossings), 2 * len(self.crossings)
        expected = 2 * self.graph_component_count()
        if vertices - edges + len(faces) != expected:
            raise ValueError(
                f"rotation system is not planar: V - E + F = {vertices - edges + len(faces)}, expected {expected}"
            )
        if self.marked_face is not None and self.crossings and self.marked_face >= len(faces):
            raise ValueError(f"marked_face {self.marked_face} out of range (diagram has {len(faces)} faces)")
        return self

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> Tuple[int, ...]:
        """All arc labels, sorted"""
        return tuple(sorted({a for quad in self.crossings for a in quad} | set(self.free_circles)))

    def darts_of_arc(self) -> Dict[int, List[Dart]]:
        """Map each crossing arc to its two (crossing index, slot) ends"""
        ends: Dict[int, List[Dart]] = {}
        for c, quad in enumerate(self.crossings):
            for s, a in enumerate(quad):
                ends.setdefault(a, []).append((c, s))
        return ends

    def partner(self, dart: Dart, ends: Optional[Dict[int, List[Dart]]] = None) -> Dart:
        """The other end of the arc leaving through ``dart``"""
        ends = ends if ends is not None else self.darts_of_arc()
        first, second = ends[self.crossings[dart[0]][dart[1]]]
        return second if first == dart else first

    def face_darts(self) -> List[Tuple[Dart, ...]]:
        """
        Boundary cycles of the rotation system

        Faces are the orbits of dart -> (c', s'+1) where (c', s') is the far end
        of the dart's arc, numbered by first appearance in (crossing, slot) order.
        """
        ends = self.darts_of_arc()
        seen = set()
        faces: List[Tuple[Dart, ...]] = []
        for c in range(len(self.crossings)):
            for s in range(4):
                if (c, s) in seen:
                    continue
                orbit = []
                dart = (c, s)
                while dart not in seen:
                    seen.add(dart)
                    orbit.append(dart)
                    c2, s2 = self.partner(dart, ends)
                    dart = (c2, (s2 + 1) % 4)
                faces.append(tuple(orbit))
        return faces

    def graph_component_count(self) -> int:
        """Connected components of the 4-valent crossing graph (free circles excluded)"""
        if not self.crossings:
            return 0
        uf = nx.utils.UnionFind(range(len(self.crossings)))
        for first, second in self.darts_of_arc().values():
            uf.union(first[0], second[0])
        return sum(1 for _ in uf.to_sets())

    def to_pd(self) -> str:
        """Render back to PD-code text"""
        tokens = [f"X({a},{b},{c},{d})" for a, b, c, d in self.crossings]
        tokens += [f"O({a})" for a in self.free_circles]
        text = " ".join(tokens)
        if self.marked_face is not None:
            text = f"unbounded_face: {self.marked_face}\n{text}"
        return text

    def __str__(self) -> str:
        return self.name or self.to_pd()


class ResolutionWord(BaseModel):
    """Assignment of 0, 1 or None (unsmoothed) to each crossing, in crossing order"""
    model_config = ConfigDict(frozen=True)

    values: Tuple[Optional[Literal[0, 1]], ...] = Field(..., description="Smoothing per crossing index")

    @classmethod
    def coerce(cls, word: Union["ResolutionWord", Sequence[Optional[int]], str]) -> "ResolutionWord":
        if isinstance(word, ResolutionWord):
            return word
        if isinstance(word, str):
            return cls(values=tuple(None if ch == "-" else int(ch) for ch in word))
        return cls(values=tuple(word))

    @classmethod
    def from_bits(cls, bits: int, n: int) -> "ResolutionWord":
        """Total word whose crossing c (1-based) carries bit c-1 of ``bits``"""
        return cls(values=tuple((bits >> c) & 1 for c in range(n)))

    @property
    def is_total(self) -> bool:
        return all(v is not None for v in self.values)

    @property
    def r(self) -> int:
        """Number of 1-smoothings"""
        return sum(1 for v in self.values if v == 1)

    def to_bits(self) -> int:
        if not self.is_total:
            raise ValueError("only total words have a bit encoding")
        return sum(1 << c for c, v in enumerate(self.values) if v == 1)

    def __str__(self) -> str:
        return "".join("-" if v is None else str(v) for v in self.values)


class StateDiagram(BaseModel):
    """A (partially) smoothed diagram with its traced circles"""
    base: PlanarDiagram = Field(..., description="The diagram being smoothed")
    word: ResolutionWord = Field(..., description="Smoothing choices")
    circles: Tuple[Tuple[int, ...], ...] = Field(..., description="Arcs of each circle, circles sorted by least arc")

    @property
    def circle_count(self) -> int:
        return len(self.circles)


class BlackGraph(BaseModel):
    """Checkerboard graph on the black faces, one edge per crossing"""
    vertices: Tuple[int, ...] = Field(..., description="Black face indices")
    edges: Tuple[Tuple[int, int], ...] = Field(..., description="Face pair per crossing, in crossing order")
    crossing_of_edge: Tuple[int, ...] = Field(..., description="Crossing number (1-based) of each edge")
    black_smoothing: Tuple[int, ...] = Field(..., description="Smoothing merging the black corners, per crossing")
    marked_face: int = Field(..., description="The white unbounded face")


class Coloring(BaseModel):
    """Assignment of the Lee basis colors to arcs"""
    model_config = ConfigDict(frozen=True)

    colors: Tuple[Tuple[int, Literal["a", "b"]], ...] = Field(..., description="(arc, color) pairs sorted by arc")

    def color(self, arc: int) -> str:
        return dict(self.colors)[arc]

    def as_dict(self) -> Dict[int, str]:
        return dict(self.colors)
