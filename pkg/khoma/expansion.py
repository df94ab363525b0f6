"""
Connectivity-pruned binary expansion of a diagram into R1-trivial leaves
"""
import logging
import random
from typing import List, Literal, Optional, Sequence, Tuple

from models.diagram_models import SMOOTHING_PAIRS, PlanarDiagram, ResolutionWord
from models.invariant_models import (
    AlternatingInvariants,
    ExpansionLeaf,
    PeeledKink,
    RankTable,
    TreeSize,
)
from .decorators import crossing_guard
from .diagram_core import (
    WordLike,
    arc_union,
    components,
    disconnecting_smoothing,
    enumerate_k1,
    is_alternating,
    is_connected,
    word_values,
)
from .exceptions import ConsistencyError, PreconditionError

logger = logging.getLogger(__name__)


def identity_numbering(diagram: PlanarDiagram) -> Tuple[int, ...]:
    return tuple(range(1, len(diagram.crossings) + 1))


def random_numbering(diagram: PlanarDiagram, rng: random.Random) -> Tuple[int, ...]:
    order = list(identity_numbering(diagram))
    rng.shuffle(order)
    return tuple(order)


def _check_numbering(diagram: PlanarDiagram, numbering: Optional[Sequence[int]]) -> Tuple[int, ...]:
    if numbering is None:
        return identity_numbering(diagram)
    order = tuple(numbering)
    if sorted(order) != list(identity_numbering(diagram)):
        raise PreconditionError(f"numbering {order} is not a permutation of 1..{len(diagram.crossings)}")
    return order


def _components(diagram: PlanarDiagram, values) -> int:
    return sum(1 for _ in arc_union(diagram, values).to_sets())


def peel_kinks(diagram: PlanarDiagram, word: Optional[WordLike] = None) -> List[PeeledKink]:
    """
    Remove the kinks of an R1-trivial diagram innermost first

    A kink is innermost when the side split off by its disconnecting
    smoothing contains no other unsmoothed crossing. Each peeled kink gets
    its connecting smoothing, which can turn nested crossings into kinks.

    Args:
        diagram: The diagram
        word: Partial smoothing leaving only splitting crossings

    Returns:
        Kinks in peeling order
    """
    values = list(word_values(diagram, word))
    if _components(diagram, values) != 1:
        raise PreconditionError("kink peeling needs a connected diagram")
    remaining = [c for c, v in enumerate(values) if v is None]
    kinks: List[PeeledKink] = []

    while remaining:
        for c in remaining:
            value = disconnecting_smoothing(diagram, values, c + 1)
            if value is None:
                raise PreconditionError(f"crossing {c + 1} is not splitting; diagram is not R1-trivial")
            trial = list(values)
            trial[c] = value
            uf = arc_union(diagram, trial)
            inner = {uf[a] for other in remaining if other != c for a in diagram.crossings[other]}
            quad = diagram.crossings[c]
            loop_slot = next((pair[0] for pair in SMOOTHING_PAIRS[value] if uf[quad[pair[0]]] not in inner), None)
            if loop_slot is None:
                continue
            kinks.append(PeeledKink(crossing=c + 1, sign=1 if value == 0 else -1, loop_slot=loop_slot))
            values[c] = 1 - value
            remaining.remove(c)
            break
        else:
            raise ConsistencyError(f"no innermost kink among crossings {[c + 1 for c in remaining]}")
    return kinks


def _make_leaf(diagram: PlanarDiagram, values: Sequence[Optional[int]]) -> ExpansionLeaf:
    word = ResolutionWord(values=tuple(values))
    kinks = peel_kinks(diagram, word)
    state = list(values)
    for kink in kinks:
        state[kink.crossing - 1] = kink.connecting
    if _components(diagram, state) != 1:
        raise ConsistencyError(f"leaf {word} does not close up to a single circle")
    x = sum(1 for k in kinks if k.sign < 0)
    y = len(kinks) - x
    return ExpansionLeaf(
        diagram=diagram,
        word=word,
        r_D_DS=word.r,
        x=x,
        y=y,
        w=x - y,
        state=ResolutionWord(values=tuple(state)),
        r_D_S=word.r + y,
        kinks=tuple(kinks),
    )


def _descend(diagram: PlanarDiagram, order: Tuple[int, ...]):
    """Depth-first walk yielding ('node', values) and ('leaf', values) events"""
    values: List[Optional[int]] = [None] * len(diagram.crossings)

    def visit(position: int):
        for k in range(position, len(order)):
            c = order[k] - 1
            connected = []
            for value in (0, 1):
                values[c] = value
                connected.append(_components(diagram, values) == 1)
            values[c] = None
            if all(connected):
                yield ("node", tuple(values))
                for value in (0, 1):
                    values[c] = value
                    yield from visit(k + 1)
                values[c] = None
                return
        yield ("leaf", tuple(values))

    yield from visit(0)


@crossing_guard("expand")
def expand(diagram: PlanarDiagram, numbering: Optional[Sequence[int]] = None) -> List[ExpansionLeaf]:
    """
    Leaves of the pruned expansion tree

    Crossings are visited in ``numbering`` order; a crossing is branched into
    its two smoothings only when both keep the diagram connected, otherwise
    it stays unsmoothed and the walk moves on.

    Args:
        diagram: A connected diagram
        numbering: Crossing numbers in visiting order (identity by default)

    Returns:
        Leaves in depth-first order, 0-branch first
    """
    if not is_connected(diagram):
        raise PreconditionError("expansion needs a connected diagram")
    order = _check_numbering(diagram, numbering)
    leaves = [_make_leaf(diagram, values) for kind, values in _descend(diagram, order) if kind == "leaf"]
    logger.debug("expanded %s with numbering %s into %d leaves", diagram, order, len(leaves))
    return leaves


def leaf_statistics(leaf: ExpansionLeaf) -> Tuple[int, int, int, int]:
    """(x, y, w, r(D,S)) recomputed by peeling the leaf's kinks"""
    kinks = peel_kinks(leaf.diagram, leaf.word)
    x = sum(1 for k in kinks if k.sign < 0)
    y = len(kinks) - x
    return x, y, x - y, leaf.word.r + y


@crossing_guard("expansion_tree_size")
def expansion_tree_size(diagram: PlanarDiagram, numbering: Optional[Sequence[int]] = None) -> TreeSize:
    if not is_connected(diagram):
        raise PreconditionError("expansion needs a connected diagram")
    order = _check_numbering(diagram, numbering)
    nodes = leaves = 0
    for kind, _ in _descend(diagram, order):
        if kind == "node":
            nodes += 1
        else:
            leaves += 1
    return TreeSize(internal_nodes=nodes, leaves=leaves, states=2 ** len(diagram.crossings))


def leaf_bidegrees(leaf: ExpansionLeaf) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    """The two generators a leaf contributes: (w + r, 2w + r -+ 1)"""
    i = leaf.w + leaf.r_D_S
    j = 2 * leaf.w + leaf.r_D_S
    return (i, j - 1), (i, j + 1)


def module_a_ranks(diagram: PlanarDiagram, numbering: Optional[Sequence[int]] = None) -> RankTable:
    """Bigraded ranks of the spanning-tree module, two generators per leaf"""
    ranks = {}
    for leaf in expand(diagram, numbering):
        for key in leaf_bidegrees(leaf):
            ranks[key] = ranks.get(key, 0) + 1
    return RankTable(ranks=ranks)


def _require_reduced_alternating_knot(diagram: PlanarDiagram) -> None:
    if len(components(diagram)) != 1 or not is_connected(diagram):
        raise PreconditionError("expected a knot diagram")
    if not is_alternating(diagram):
        raise PreconditionError(f"{diagram} is not alternating")
    for c in range(1, len(diagram.crossings) + 1):
        if disconnecting_smoothing(diagram, None, c) is not None:
            raise PreconditionError(f"crossing {c} of {diagram} is splitting")


def extremal_numbering(
    diagram: PlanarDiagram, state: WordLike, mode: Literal["lower", "upper"] = "lower"
) -> Tuple[int, ...]:
    """
    Numbering that makes ``state`` the unique extremal leaf

    ``lower`` puts the crossings where the state takes its 0-smoothing
    first, giving w = -n1 at that leaf and w > -n1 elsewhere; ``upper`` puts
    the 1-smoothings first, giving w = n0 and w < n0 elsewhere. Both
    inequalities are re-checked on the expansion.
    """
    _require_reduced_alternating_knot(diagram)
    word = ResolutionWord.coerce(state)
    if not word.is_total or _components(diagram, word.values) != 1:
        raise PreconditionError(f"{word} is not a single-circle state")
    first = 0 if mode == "lower" else 1
    numbering = tuple(c + 1 for c, v in enumerate(word.values) if v == first)
    numbering += tuple(c + 1 for c, v in enumerate(word.values) if v != first)

    n1 = word.r
    n0 = len(diagram.crossings) - n1
    target = -n1 if mode == "lower" else n0
    for leaf in expand(diagram, numbering):
        if leaf.state == word:
            ok = leaf.w == target
        else:
            ok = leaf.w > target if mode == "lower" else leaf.w < target
        if not ok:
            raise ConsistencyError(
                f"{mode} numbering {numbering} for {word}: leaf {leaf.word} has w = {leaf.w}, bound {target}"
            )
    return numbering


def alternating_invariants(diagram: PlanarDiagram) -> AlternatingInvariants:
    """Alternation and the constants n0, n1 of the single-circle states"""
    states = enumerate_k1(diagram)
    r_values = tuple(sorted({s.r for s in states}))
    alternating = is_alternating(diagram)
    if alternating and len(r_values) != 1:
        raise ConsistencyError(f"alternating {diagram} has non-constant r over K1: {r_values}")
    n1 = r_values[0] if len(r_values) == 1 else None
    n0 = len(diagram.crossings) - n1 if n1 is not None else None
    return AlternatingInvariants(is_alternating=alternating, n0=n0, n1=n1, r_values=r_values)
