"""
Laurent polynomials and the Kauffman bracket by state sum, R1-trivial
closed form and spanning-tree expansion
"""
import logging
import random
from itertools import product
from typing import Dict, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, field_validator
from sympy import Symbol

from models.diagram_models import PlanarDiagram
from models.report_models import CheckReport
from .config import get_settings
from .decorators import checker, crossing_guard
from .diagram_core import WordLike, arc_union, is_connected, sign_counts, word_values
from .exceptions import PreconditionError
from .expansion import expand, peel_kinks, random_numbering

logger = logging.getLogger(__name__)


class LaurentPolynomial(BaseModel):
    """Integer Laurent polynomial in q, stored sparsely without zero terms"""
    model_config = ConfigDict(frozen=True)

    coefficients: Dict[int, int] = Field(default_factory=dict, description="exponent -> coefficient")

    @field_validator("coefficients")
    @classmethod
    def _drop_zeros(cls, coefficients):
        return {e: c for e, c in sorted(coefficients.items()) if c}

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPolynomial":
        return cls(coefficients={exponent: coefficient})

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls.monomial(0)

    @classmethod
    def circle(cls) -> "LaurentPolynomial":
        """q + q^-1"""
        return cls(coefficients={-1: 1, 1: 1})

    def __hash__(self):
        return hash(tuple(self.coefficients.items()))

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        total = dict(self.coefficients)
        for e, c in other.coefficients.items():
            total[e] = total.get(e, 0) + c
        return LaurentPolynomial(coefficients=total)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(coefficients={e: -c for e, c in self.coefficients.items()})

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPolynomial":
        if isinstance(other, int):
            return LaurentPolynomial(coefficients={e: c * other for e, c in self.coefficients.items()})
        total: Dict[int, int] = {}
        for e1, c1 in self.coefficients.items():
            for e2, c2 in other.coefficients.items():
                total[e1 + e2] = total.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(coefficients=total)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPolynomial":
        if k < 0:
            raise ValueError("negative powers are only defined for units")
        result = LaurentPolynomial.one()
        for _ in range(k):
            result = result * self
        return result

    def times_unit(self, sign: int, exponent: int) -> "LaurentPolynomial":
        """Multiply by sign * q^exponent"""
        return LaurentPolynomial(coefficients={e + exponent: c * sign for e, c in self.coefficients.items()})

    def mirror(self) -> "LaurentPolynomial":
        """q -> q^-1"""
        return LaurentPolynomial(coefficients={-e: c for e, c in self.coefficients.items()})

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def exponent_parities(self) -> set:
        return {e % 2 for e in self.coefficients}

    def to_sympy(self, variable: Optional[Symbol] = None):
        q = variable or Symbol("q")
        return sum((c * q**e for e, c in self.coefficients.items()), 0)

    def to_json_dict(self) -> Dict[str, int]:
        return {f"q^{e}": c for e, c in self.coefficients.items()}

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for e, c in self.coefficients.items():
            power = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            magnitude = abs(c)
            if not power:
                body = str(magnitude)
            else:
                body = power if magnitude == 1 else f"{magnitude}{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _minus_q_power(r: int) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(r, (-1) ** r)


@crossing_guard("bracket_state_sum")
def bracket_state_sum(diagram: PlanarDiagram, word: Optional[WordLike] = None) -> LaurentPolynomial:
    """
    Kauffman bracket as the sum over all states

    Args:
        diagram: The diagram; free circles contribute a factor q + q^-1 each
        word: Optional partial smoothing; only its completions are summed

    Returns:
        Sum of (-q)^r (q + q^-1)^circles over the (completed) states
    """
    values = word_values(diagram, word)
    open_crossings = [c for c, v in enumerate(values) if v is None]
    settings = get_settings()
    if len(open_crossings) > settings.warn_crossings:
        logger.warning("state sum over %d crossings (2^%d states)", len(open_crossings), len(open_crossings))

    circle_powers: Dict[int, LaurentPolynomial] = {}
    totals: Dict[int, int] = {}
    state = list(values)
    for choice in product((0, 1), repeat=len(open_crossings)):
        for c, v in zip(open_crossings, choice):
            state[c] = v
        circles = sum(1 for _ in arc_union(diagram, state).to_sets())
        r = sum(1 for v in state if v == 1)
        if circles not in circle_powers:
            circle_powers[circles] = LaurentPolynomial.circle() ** circles
        for e, c in circle_powers[circles].coefficients.items():
            totals[e + r] = totals.get(e + r, 0) + c * (-1) ** r
    return LaurentPolynomial(coefficients=totals)


def r1_trivial_value(x: int, y: int) -> LaurentPolynomial:
    """(-1)^x q^(2x - y) (q + q^-1)"""
    return LaurentPolynomial.circle().times_unit((-1) ** x, 2 * x - y)


def bracket_r1_trivial(diagram: PlanarDiagram, word: Optional[WordLike] = None) -> LaurentPolynomial:
    """
    Closed form for a connected diagram all of whose crossings are splitting

    Args:
        diagram: The diagram
        word: Optional partial smoothing; the unsmoothed crossings must all split

    Returns:
        (-1)^x q^(2x - y) (q + q^-1) with x negative and y positive kinks
    """
    if not is_connected(diagram, word):
        raise PreconditionError("R1-trivial evaluation needs a connected diagram")
    kinks = peel_kinks(diagram, word)
    x = sum(1 for k in kinks if k.sign < 0)
    y = len(kinks) - x
    return r1_trivial_value(x, y)


def bracket_spanning_tree(
    diagram: PlanarDiagram, numbering: Optional[Sequence[int]] = None
) -> LaurentPolynomial:
    """Sum over the expansion leaves of (-q)^r(D, D_S) times the leaf's closed form"""
    if not is_connected(diagram):
        raise PreconditionError("spanning-tree bracket needs a connected diagram")
    total = LaurentPolynomial.zero()
    for leaf in expand(diagram, numbering):
        total = total + _minus_q_power(leaf.r_D_DS) * r1_trivial_value(leaf.x, leaf.y)
    return total


def jones_polynomial(diagram: PlanarDiagram) -> LaurentPolynomial:
    """Writhe-normalised bracket (-1)^n- q^(n+ - 2n-) <D>"""
    n_plus, n_minus = sign_counts(diagram)
    return bracket_state_sum(diagram).times_unit((-1) ** n_minus, n_plus - 2 * n_minus)


@checker("bracket", "Spanning-tree bracket equals the state sum for several numberings")
def check_bracket_equivalence(diagram: PlanarDiagram, numberings: int = 10, seed: int = 0) -> CheckReport:
    """
    Compare the state sum against spanning-tree sums under the identity,
    reversed and random crossing numberings
    """
    report = CheckReport(name="bracket", diagram=str(diagram), passed=True)
    expected = bracket_state_sum(diagram)
    report.details["state_sum"] = str(expected)
    n = len(diagram.crossings)
    rng = random.Random(seed)
    orders = [tuple(range(1, n + 1)), tuple(range(n, 0, -1))]
    orders += [random_numbering(diagram, rng) for _ in range(max(0, numberings - 2))]
    for order in orders:
        value = bracket_spanning_tree(diagram, order)
        if value != expected:
            report.fail(f"numbering {order}: spanning-tree sum {value} != {expected}")
    report.details["numberings"] = len(orders)
    return report
