"""
Exact homological algebra over the integers: based complexes, mapping
cones, Gaussian elimination and homology with torsion
"""
import logging
from collections import defaultdict
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Literal, Optional, Sequence, Tuple

from sympy import QQ, ZZ, factorint
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from models.invariant_models import BigradedHomology, HomologyGroup, RankTable
from .bracket import LaurentPolynomial
from .exceptions import ChainComplexError, FiltrationError

logger = logging.getLogger(__name__)

Generator = Hashable
Bidegree = Tuple[int, int]


class BasedComplex:
    """
    Free bigraded chain complex with a fixed basis

    The differential is stored sparsely as ``source -> {target: coefficient}``.
    Every entry raises i by exactly one; ``allowed_dj`` lists the permitted
    changes of j ({0} for graded complexes, {0, 4} for the Lee deformation).
    """

    def __init__(
        self,
        generators: Dict[Generator, Bidegree],
        differential: Optional[Dict[Generator, Dict[Generator, int]]] = None,
        allowed_dj: Iterable[int] = (0,),
        validate: bool = True,
    ):
        self._degrees: Dict[Generator, Bidegree] = dict(generators)
        self._out: Dict[Generator, Dict[Generator, int]] = {g: {} for g in self._degrees}
        for source, row in (differential or {}).items():
            for target, coefficient in row.items():
                if coefficient:
                    self._out[source][target] = coefficient
        self.allowed_dj: FrozenSet[int] = frozenset(allowed_dj)
        if validate:
            self.validate()

    # structure --------------------------------------------------------

    @property
    def generators(self) -> Dict[Generator, Bidegree]:
        return dict(self._degrees)

    def degree(self, generator: Generator) -> Bidegree:
        return self._degrees[generator]

    def row(self, generator: Generator) -> Dict[Generator, int]:
        return dict(self._out[generator])

    def entries(self) -> Iterator[Tuple[Generator, Generator, int]]:
        for source, row in self._out.items():
            for target, coefficient in row.items():
                yield source, target, coefficient

    def differential(self) -> Dict[Generator, Dict[Generator, int]]:
        return {g: dict(row) for g, row in self._out.items() if row}

    def __len__(self) -> int:
        return len(self._degrees)

    def __contains__(self, generator: Generator) -> bool:
        return generator in self._degrees

    @property
    def is_homogeneous(self) -> bool:
        return self.allowed_dj == {0}

    @property
    def is_filtered(self) -> bool:
        return all(dj >= 0 for dj in self.allowed_dj)

    def bidegree_table(self) -> RankTable:
        counts: Dict[Bidegree, int] = defaultdict(int)
        for key in self._degrees.values():
            counts[key] += 1
        return RankTable(ranks=dict(counts))

    def euler_characteristic(self) -> LaurentPolynomial:
        """Sum of (-1)^i q^j over the basis"""
        coefficients: Dict[int, int] = defaultdict(int)
        for i, j in self._degrees.values():
            coefficients[j] += (-1) ** i
        return LaurentPolynomial(coefficients=dict(coefficients))

    def square(self) -> Dict[Tuple[Generator, Generator], int]:
        """Nonzero entries of d∘d"""
        return compose(self._out, self._out)

    def validate(self) -> None:
        for source, target, _ in self.entries():
            (i, j), (i2, j2) = self._degrees[source], self._degrees[target]
            if i2 != i + 1:
                raise ChainComplexError(f"entry {source} -> {target} changes i by {i2 - i}")
            if j2 - j not in self.allowed_dj:
                error = FiltrationError if j2 < j else ChainComplexError
                raise error(f"entry {source} -> {target} changes j by {j2 - j}, allowed {sorted(self.allowed_dj)}")
        bad = self.square()
        if bad:
            (source, target), value = next(iter(bad.items()))
            raise ChainComplexError(f"d∘d != 0: {len(bad)} entries, e.g. {source} -> {target} = {value}")

    def __repr__(self) -> str:
        return f"BasedComplex({len(self)} generators, {sum(1 for _ in self.entries())} entries)"


def compose(
    first: Dict[Generator, Dict[Generator, int]], second: Dict[Generator, Dict[Generator, int]]
) -> Dict[Tuple[Generator, Generator], int]:
    """Nonzero entries of ``second ∘ first`` for sparse maps given as rows"""
    result: Dict[Tuple[Generator, Generator], int] = defaultdict(int)
    for source, row in first.items():
        for middle, a in row.items():
            for target, b in second.get(middle, {}).items():
                result[(source, target)] += a * b
    return {key: value for key, value in result.items() if value}


def add_maps(*maps: Dict[Tuple[Generator, Generator], int]) -> Dict[Tuple[Generator, Generator], int]:
    total: Dict[Tuple[Generator, Generator], int] = defaultdict(int)
    for entries in maps:
        for key, value in entries.items():
            total[key] += value
    return {key: value for key, value in total.items() if value}


def shift(complex_: BasedComplex, m: int, n: int) -> BasedComplex:
    """C[m]{n}: the generator at (i, j) moves to (i + m, j + n)"""
    degrees = {g: (i + m, j + n) for g, (i, j) in complex_.generators.items()}
    return BasedComplex(degrees, complex_.differential(), complex_.allowed_dj, validate=False)


class ChainMap:
    """Degree-preserving map between based complexes"""

    def __init__(
        self, source: BasedComplex, target: BasedComplex, entries: Dict[Generator, Dict[Generator, int]]
    ):
        self.source = source
        self.target = target
        self.entries = {g: {h: c for h, c in row.items() if c} for g, row in entries.items()}

    def is_chain_map(self) -> bool:
        for g, row in self.entries.items():
            for h in row:
                if self.source.degree(g)[0] != self.target.degree(h)[0]:
                    return False
        left = compose(self.source.differential(), self.entries)
        right = compose(self.entries, self.target.differential())
        return not add_maps(left, {k: -v for k, v in right.items()})


def mapping_cone(chain_map: ChainMap) -> BasedComplex:
    """
    C0 ⊕ C1[1] with differential d0 + f on C0 and -d1 on C1[1]

    Generators are tagged (0, g) for C0 and (1, h) for C1.
    """
    if not chain_map.is_chain_map():
        raise ChainComplexError("mapping cone needs a chain map")
    source, target = chain_map.source, chain_map.target
    degrees: Dict[Generator, Bidegree] = {(0, g): d for g, d in source.generators.items()}
    degrees.update({(1, h): (i + 1, j) for h, (i, j) in target.generators.items()})
    differential: Dict[Generator, Dict[Generator, int]] = defaultdict(dict)
    for g, h, c in source.entries():
        differential[(0, g)][(0, h)] = c
    for g, row in chain_map.entries.items():
        for h, c in row.items():
            differential[(0, g)][(1, h)] = c
    for g, h, c in target.entries():
        differential[(1, g)][(1, h)] = -c
    dj = source.allowed_dj | target.allowed_dj
    for g, row in chain_map.entries.items():
        dj |= {target.degree(h)[1] - source.degree(g)[1] for h in row}
    return BasedComplex(degrees, differential, dj)


# Gaussian elimination -------------------------------------------------------

class _Reducer:
    """Mutable sparse copy of a complex with in- and out-adjacency"""

    def __init__(self, complex_: BasedComplex):
        self.allowed_dj = complex_.allowed_dj
        self.degrees = complex_.generators
        self.order = {g: k for k, g in enumerate(self.degrees)}
        self.out: Dict[Generator, Dict[Generator, int]] = {g: complex_.row(g) for g in self.degrees}
        self.inn: Dict[Generator, Dict[Generator, int]] = {g: {} for g in self.degrees}
        for source, row in self.out.items():
            for target, c in row.items():
                self.inn[target][source] = c
        self.eliminated = 0

    def key(self, g: Generator):
        i, j = self.degrees[g]
        return i, j, self.order[g]

    def eliminate(self, source: Generator, target: Generator, filtered: bool) -> None:
        if source not in self.degrees or target not in self.degrees:
            raise ChainComplexError(f"pivot {source} -> {target} refers to an eliminated generator")
        phi = self.out[source].get(target, 0)
        if phi not in (1, -1):
            raise ChainComplexError(f"pivot {source} -> {target} has coefficient {phi}, not a unit")
        if filtered and self.degrees[source][1] != self.degrees[target][1]:
            raise FiltrationError(
                f"pivot {source} -> {target} joins j = {self.degrees[source][1]} and j = {self.degrees[target][1]}"
            )
        incoming = [(u, a) for u, a in self.inn[target].items() if u != source]
        outgoing = [(v, b) for v, b in self.out[source].items() if v != target]
        for u, a in incoming:
            row = self.out[u]
            for v, b in outgoing:
                value = row.get(v, 0) - a * phi * b
                if value:
                    row[v] = value
                    self.inn[v][u] = value
                else:
                    row.pop(v, None)
                    self.inn[v].pop(u, None)
        self._drop(source)
        self._drop(target)
        self.eliminated += 1

    def _drop(self, g: Generator) -> None:
        for v in self.out.pop(g):
            self.inn[v].pop(g, None)
        for u in self.inn.pop(g):
            self.out[u].pop(g, None)
        del self.degrees[g]

    def unit_pivot(self, source: Generator, filtered: bool) -> Optional[Generator]:
        j = self.degrees[source][1]
        units = [
            t for t, c in self.out[source].items() if c in (1, -1) and (not filtered or self.degrees[t][1] == j)
        ]
        return min(units, key=self.key) if units else None

    def eliminate_all(self, filtered: bool) -> None:
        changed = True
        while changed:
            changed = False
            for source in sorted(self.degrees, key=self.key):
                if source not in self.degrees:
                    continue
                target = self.unit_pivot(source, filtered)
                if target is not None:
                    self.eliminate(source, target, filtered)
                    changed = True

    def result(self) -> BasedComplex:
        degrees = {g: self.degrees[g] for g in sorted(self.degrees, key=self.order.__getitem__)}
        return BasedComplex(degrees, self.out, self.allowed_dj, validate=False)


def _filtered_default(complex_: BasedComplex, filtered: Optional[bool]) -> bool:
    if filtered is None:
        return not complex_.is_homogeneous and complex_.is_filtered
    return filtered


def gaussian_eliminate(
    complex_: BasedComplex, source: Generator, target: Generator, filtered: Optional[bool] = None
) -> BasedComplex:
    """
    Remove a unit entry and both its generators

    Every other pair (u, v) with entries a: u -> target and b: source -> v
    gains -a * phi * b, where phi = ±1 is the pivot. The result is chain
    homotopy equivalent to the input.

    Args:
        complex_: The complex
        source: Pivot source generator
        target: Pivot target generator
        filtered: Require equal j at the pivot (defaults to True for
            filtered, non-homogeneous complexes)

    Returns:
        A new, smaller complex
    """
    reducer = _Reducer(complex_)
    reducer.eliminate(source, target, _filtered_default(complex_, filtered))
    return reducer.result()


def reduce(
    complex_: BasedComplex,
    strategy: Literal["full", "spanning_tree"] = "full",
    plan: Optional[Sequence[Tuple[Generator, Generator]]] = None,
    filtered: Optional[bool] = None,
) -> BasedComplex:
    """
    Iterated Gaussian elimination

    ``full`` sweeps the sources in (i, j, basis order) and eliminates the
    lowest unit entry of each until none is left; ``spanning_tree`` performs
    the pivots of ``plan`` in order and raises if one is not a unit.
    """
    filtered = _filtered_default(complex_, filtered)
    reducer = _Reducer(complex_)
    if strategy == "full":
        reducer.eliminate_all(filtered)
    elif strategy == "spanning_tree":
        if plan is None:
            raise ValueError("the spanning_tree strategy needs an elimination plan")
        for source, target in plan:
            reducer.eliminate(source, target, filtered)
    else:
        raise ValueError(f"unknown reduction strategy {strategy!r}")
    logger.debug("%s reduction removed %d pairs, %d generators left", strategy, reducer.eliminated, len(reducer.degrees))
    return reducer.result()


# Homology -------------------------------------------------------------------

def _block_key(complex_: BasedComplex, g: Generator) -> Tuple[int, ...]:
    i, j = complex_.degree(g)
    return (i, j) if complex_.is_homogeneous else (i,)


def _next_key(key: Tuple[int, ...]) -> Tuple[int, ...]:
    return (key[0] + 1,) + key[1:]


def _blocks(complex_: BasedComplex) -> Dict[Tuple[int, ...], List[Generator]]:
    blocks: Dict[Tuple[int, ...], List[Generator]] = defaultdict(list)
    for g in complex_.generators:
        blocks[_block_key(complex_, g)].append(g)
    return blocks


def _matrix(complex_: BasedComplex, rows: List[Generator], cols: List[Generator]) -> List[List[int]]:
    index = {g: k for k, g in enumerate(rows)}
    matrix = [[0] * len(cols) for _ in rows]
    for c, g in enumerate(cols):
        for h, value in complex_.row(g).items():
            if h in index:
                matrix[index[h]][c] = value
    return matrix


def _domain_matrix(matrix: List[List[int]], ncols: int) -> DomainMatrix:
    return DomainMatrix([[ZZ(v) for v in row] for row in matrix], (len(matrix), ncols), ZZ)


def nonzero_invariant_factors(matrix: List[List[int]], ncols: int) -> List[int]:
    """Nonzero Smith invariant factors of an integer matrix"""
    if not matrix or ncols == 0:
        return []
    factors = invariant_factors(_domain_matrix(matrix, ncols))
    return [abs(int(f)) for f in factors if f != 0]


def rank_q(matrix: List[List[int]], ncols: int) -> int:
    """Rank over the rationals"""
    if not matrix or ncols == 0:
        return 0
    return _domain_matrix(matrix, ncols).convert_to(QQ).rank()


def prime_power_torsion(factors: Iterable[int]) -> List[int]:
    """Split invariant factors into prime-power orders"""
    orders = []
    for factor in factors:
        if factor > 1:
            orders += [p**e for p, e in factorint(factor).items()]
    return sorted(orders)


def homology_z(complex_: BasedComplex) -> BigradedHomology:
    """
    Integral homology with torsion

    Homogeneous complexes are split by (i, j), others by i alone. The complex
    is first reduced by unit eliminations; the remaining blocks go through
    Smith normal form.
    """
    bad = complex_.square()
    if bad:
        raise ChainComplexError(f"d∘d != 0 on {len(bad)} entries")
    reduced = reduce(complex_, "full", filtered=False)
    blocks = _blocks(reduced)

    rank_out: Dict[Tuple[int, ...], int] = {}
    torsion_in: Dict[Tuple[int, ...], List[int]] = defaultdict(list)
    for key, cols in blocks.items():
        rows = blocks.get(_next_key(key), [])
        factors = nonzero_invariant_factors(_matrix(reduced, rows, cols), len(cols))
        rank_out[key] = len(factors)
        torsion_in[_next_key(key)] += prime_power_torsion(factors)

    groups = {}
    for key, gens in blocks.items():
        previous = (key[0] - 1,) + key[1:]
        rank = len(gens) - rank_out[key] - rank_out.get(previous, 0)
        groups[key] = HomologyGroup(rank=rank, torsion=tuple(torsion_in.get(key, [])))
    graded_by = "ij" if complex_.is_homogeneous else "i"
    return BigradedHomology(ring="Z", graded_by=graded_by, groups=groups)


def homology_q(complex_: BasedComplex) -> BigradedHomology:
    return homology_z(complex_).rational()


def filtered_homology_q(complex_: BasedComplex) -> BigradedHomology:
    """
    Associated graded of the j-filtration on rational homology

    For each i and level L, F^L H = (Z ∩ F_L) / (B ∩ F_L) where F_L is spanned
    by generators with j >= L; the graded piece at L is F^L H / F^L' H with L'
    the next level present in degree i.
    """
    for source, target, _ in complex_.entries():
        if complex_.degree(target)[1] < complex_.degree(source)[1]:
            raise FiltrationError(f"entry {source} -> {target} lowers the filtration")
    reduced = reduce(complex_, "full", filtered=True)

    by_i: Dict[int, List[Generator]] = defaultdict(list)
    for g, (i, _) in reduced.generators.items():
        by_i[i].append(g)

    groups = {}
    for i, gens in sorted(by_i.items()):
        following = by_i.get(i + 1, [])
        preceding = by_i.get(i - 1, [])
        boundary_rank = rank_q(_matrix(reduced, gens, preceding), len(preceding))
        levels = sorted({reduced.degree(g)[1] for g in gens})
        dims = {}
        for level in levels:
            upper = [g for g in gens if reduced.degree(g)[1] >= level]
            lower = [g for g in gens if reduced.degree(g)[1] < level]
            cycles = len(upper) - rank_q(_matrix(reduced, following, upper), len(upper))
            boundaries = boundary_rank - rank_q(_matrix(reduced, lower, preceding), len(preceding))
            dims[level] = cycles - boundaries
        for k, level in enumerate(levels):
            above = dims[levels[k + 1]] if k + 1 < len(levels) else 0
            groups[(i, level)] = HomologyGroup(rank=dims[level] - above)
    return BigradedHomology(ring="Q", graded_by="ij", groups=groups)

