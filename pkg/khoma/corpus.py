"""
Shipped corpus of small knot and link diagrams
"""
from functools import lru_cache
from typing import Dict, List, Tuple

from models.diagram_models import PlanarDiagram
from models.report_models import CorpusEntry
from .diagram_core import connected_sum, is_alternating, parse_pd
from .exceptions import DiagramError

HOPF_CODES: Dict[str, str] = {
    "positive": "X(1,3,2,4) X(3,1,4,2)",
    "negative": "X(4,1,3,2) X(2,3,1,4)",
}

TREFOIL_LEFT = "X(4,2,5,1) X(6,4,1,3) X(2,6,3,5)"
TREFOIL_RIGHT = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
FIGURE_EIGHT = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"

_ENTRIES: List[CorpusEntry] = [
    CorpusEntry(name="unknot", pd="O(1)", alternating=True, reduced=True, components=1,
                golden={"bracket": "q^-1 + q"}),
    CorpusEntry(name="unknot_kink_positive", pd="X(1,1,2,2)", alternating=True, reduced=False, components=1,
                golden={"bracket": "q^-2 + 1"}),
    CorpusEntry(name="unknot_kink_negative", pd="X(1,2,2,1)", alternating=True, reduced=False, components=1,
                golden={"bracket": "-q - q^3"}),
    CorpusEntry(name="hopf_positive", pd=HOPF_CODES["positive"], alternating=True, reduced=True, components=2,
                golden={"bracket": "q^-2 + 1 + q^2 + q^4"}),
    CorpusEntry(name="hopf_negative", pd=HOPF_CODES["negative"], alternating=True, reduced=True, components=2,
                golden={"bracket": "q^-2 + 1 + q^2 + q^4"}),
    CorpusEntry(
        name="trefoil_left", pd=TREFOIL_LEFT, alternating=True, reduced=True, components=1,
        golden={
            "bracket": "q^-2 + 1 + q^2 - q^6",
            "homology": {"(0,-2)": {"rank": 1, "torsion": []}, "(0,0)": {"rank": 1, "torsion": []},
                         "(2,2)": {"rank": 1, "torsion": []}, "(3,4)": {"rank": 0, "torsion": [2]},
                         "(3,6)": {"rank": 1, "torsion": []}},
        },
    ),
    CorpusEntry(
        name="trefoil_right", pd=TREFOIL_RIGHT, alternating=True, reduced=True, components=1,
        golden={
            "bracket": "q^-3 - q - q^3 - q^5",
            "homology": {"(0,-3)": {"rank": 1, "torsion": []}, "(1,-1)": {"rank": 0, "torsion": [2]},
                         "(1,1)": {"rank": 1, "torsion": []}, "(3,3)": {"rank": 1, "torsion": []},
                         "(3,5)": {"rank": 1, "torsion": []}},
        },
    ),
    CorpusEntry(name="figure_eight", pd=FIGURE_EIGHT, alternating=True, reduced=True, components=1,
                golden={"bracket": "q^-3 + q^7"}),
    CorpusEntry(name="5_1", pd="X(1,6,2,7) X(3,8,4,9) X(5,10,6,1) X(7,2,8,3) X(9,4,10,5)",
                alternating=True, reduced=True, components=1, golden={"bracket": "q^-5 - q^3 - q^5 - q^7"}),
    CorpusEntry(name="5_2", pd="X(1,4,2,5) X(3,8,4,9) X(5,10,6,1) X(9,6,10,7) X(7,2,8,3)",
                alternating=True, reduced=True, components=1, golden={"bracket": "q^-3 - q^3 - q^5 - q^9"}),
    CorpusEntry(name="6_1", pd="X(1,4,2,5) X(7,10,8,11) X(3,9,4,8) X(9,3,10,2) X(5,12,6,1) X(11,6,12,7)",
                alternating=True, reduced=True, components=1, golden={"bracket": "q^-3 - q^3 + q^7 + q^11"}),
    CorpusEntry(name="6_2", pd="X(1,4,2,5) X(5,10,6,11) X(3,9,4,8) X(9,3,10,2) X(7,12,8,1) X(11,6,12,7)",
                alternating=True, reduced=True, components=1, golden={"bracket": "q^-5 - q^-3 + q^5 + q^9"}),
    CorpusEntry(name="6_3", pd="X(4,2,5,1) X(8,4,9,3) X(12,9,1,10) X(10,5,11,6) X(6,11,7,12) X(2,8,3,7)",
                alternating=True, reduced=True, components=1,
                golden={"bracket": "q^-4 - q^-2 - q^2 - q^4 - q^8 + q^10"}),
    CorpusEntry(
        name="8_19",
        pd="X(4,2,5,1) X(8,4,9,3) X(9,15,10,14) X(5,13,6,12) X(13,7,14,6) X(11,1,12,16) X(15,11,16,10) X(2,8,3,7)",
        alternating=False, reduced=True, components=1,
        golden={"bracket": "q^-3 + q^-1 + q + q^3 - q^7 - q^9"},
    ),
]

_SUMS: Dict[str, Tuple[str, str]] = {
    "trefoil_left#trefoil_left": ("trefoil_left", "trefoil_left"),
    "trefoil_left#trefoil_right": ("trefoil_left", "trefoil_right"),
    "trefoil_left#figure_eight": ("trefoil_left", "figure_eight"),
}


def splice(first: PlanarDiagram, second: PlanarDiagram) -> PlanarDiagram:
    """
    Connected sum, preferring a splice whose result alternates

    Falls back to the splice at both least arcs when no choice of arcs
    keeps the over/under pattern alternating.
    """
    for arc1 in first.arcs:
        for arc2 in second.arcs:
            candidate = connected_sum(first, second, arc1, arc2)
            if is_alternating(candidate):
                return candidate
    return connected_sum(first, second)


@lru_cache(maxsize=None)
def corpus_entries() -> List[CorpusEntry]:
    """All corpus entries, the connected-sum family last"""
    by_name = {entry.name: entry for entry in _ENTRIES}
    entries = list(_ENTRIES)
    for name, (left, right) in _SUMS.items():
        spliced = splice(diagram(left), diagram(right))
        entries.append(
            CorpusEntry(name=name, pd=spliced.to_pd(), alternating=is_alternating(spliced), reduced=True, components=1,
                        golden={"summands": [by_name[left].name, by_name[right].name]})
        )
    return entries


def entry(name: str) -> CorpusEntry:
    for candidate in corpus_entries() if "#" in name else _ENTRIES:
        if candidate.name == name:
            return candidate
    raise DiagramError(f"no corpus diagram named {name!r}")


def diagram(name: str) -> PlanarDiagram:
    return parse_pd(entry(name).pd, name=name)


def hopf_diagram(chirality: str = "positive") -> PlanarDiagram:
    return parse_pd(HOPF_CODES[chirality], name=f"hopf_{chirality}")


def names() -> List[str]:
    return [e.name for e in corpus_entries()]
