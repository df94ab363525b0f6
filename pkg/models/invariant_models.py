"""
Pydantic models for expansion leaves, rank tables and homology tables
"""
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .diagram_models import PlanarDiagram, ResolutionWord

Degree = Tuple[int, ...]


def format_degree(key: Degree) -> str:
    return "(" + ",".join(str(k) for k in key) + ")"


class PeeledKink(BaseModel):
    """A kink removed while reducing an expansion leaf to a circle"""
    model_config = ConfigDict(frozen=True)

    crossing: int = Field(..., ge=1, description="Crossing number")
    sign: Literal[1, -1] = Field(..., description="+1 if the 0-smoothing splits off the loop")
    loop_slot: int = Field(..., ge=0, le=3, description="A slot whose arc lies on the split-off loop")

    @property
    def disconnecting(self) -> int:
        return 0 if self.sign > 0 else 1

    @property
    def connecting(self) -> int:
        return 1 - self.disconnecting


class ExpansionLeaf(BaseModel):
    """One R1-trivial diagram D_S of the pruned expansion tree"""
    diagram: PlanarDiagram = Field(..., description="The expanded diagram D")
    word: ResolutionWord = Field(..., description="Partial smoothing producing D_S")
    r_D_DS: int = Field(..., ge=0, description="1-smoothings applied on the way to the leaf")
    x: int = Field(..., ge=0, description="Negative kinks of D_S")
    y: int = Field(..., ge=0, description="Positive kinks of D_S")
    w: int = Field(..., description="x - y")
    state: ResolutionWord = Field(..., description="The single-circle state of D_S")
    r_D_S: int = Field(..., ge=0, description="1-smoothings of the state")
    kinks: Tuple[PeeledKink, ...] = Field(default=(), description="Kinks in peeling order")

    def to_json_dict(self) -> dict:
        return {
            "word": str(self.word),
            "r_D_DS": self.r_D_DS,
            "x": self.x,
            "y": self.y,
            "w": self.w,
            "r_D_S": self.r_D_S,
            "state": str(self.state),
        }


class TreeSize(BaseModel):
    """Size of the pruned expansion tree against the full state sum"""
    internal_nodes: int = Field(..., ge=0)
    leaves: int = Field(..., ge=0)
    states: int = Field(..., ge=1, description="2^n terms of the state sum")


class AlternatingInvariants(BaseModel):
    """n0, n1 and alternation of a connected diagram"""
    is_alternating: bool = Field(..., description="Over and under passages alternate on every component")
    n0: Optional[int] = Field(None, description="0-smoothings of any single-circle state, when constant")
    n1: Optional[int] = Field(None, description="1-smoothings of any single-circle state, when constant")
    r_values: Tuple[int, ...] = Field(..., description="Distinct r(D,S) over single-circle states")


class RankTable(BaseModel):
    """Bigraded ranks of a free module"""
    ranks: Dict[Tuple[int, int], int] = Field(default_factory=dict)

    @field_validator("ranks")
    @classmethod
    def _drop_zeros(cls, ranks):
        return {key: value for key, value in sorted(ranks.items()) if value}

    @property
    def total(self) -> int:
        return sum(self.ranks.values())

    def shifted(self, m: int, n: int) -> "RankTable":
        return RankTable(ranks={(i + m, j + n): r for (i, j), r in self.ranks.items()})

    def direct_sum(self, other: "RankTable") -> "RankTable":
        ranks = dict(self.ranks)
        for key, value in other.ranks.items():
            ranks[key] = ranks.get(key, 0) + value
        return RankTable(ranks=ranks)

    def to_json_dict(self) -> Dict[str, int]:
        return {format_degree(key): value for key, value in self.ranks.items()}


class HomologyGroup(BaseModel):
    """Free rank plus prime-power torsion orders"""
    model_config = ConfigDict(frozen=True)

    rank: int = Field(default=0, ge=0)
    torsion: Tuple[int, ...] = Field(default=(), description="Prime-power orders, sorted")

    @field_validator("torsion")
    @classmethod
    def _sorted(cls, torsion):
        if any(t < 2 for t in torsion):
            raise ValueError("torsion orders must be at least 2")
        return tuple(sorted(torsion))

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


class BigradedHomology(BaseModel):
    """
    Homology table keyed by (i, j), or by (i,) for primary-graded tables

    Over Q the torsion lists are empty and ranks are dimensions.
    """
    ring: Literal["Z", "Q"] = Field(default="Z")
    graded_by: Literal["ij", "i"] = Field(default="ij")
    groups: Dict[Degree, HomologyGroup] = Field(default_factory=dict)

    @field_validator("groups")
    @classmethod
    def _drop_zero_groups(cls, groups):
        return {key: group for key, group in sorted(groups.items()) if not group.is_zero}

    @property
    def total_rank(self) -> int:
        return sum(g.rank for g in self.groups.values())

    @property
    def torsion_orders(self) -> List[int]:
        return sorted(t for g in self.groups.values() for t in g.torsion)

    @property
    def support(self) -> List[Degree]:
        return list(self.groups)

    @property
    def primary_degrees(self) -> List[int]:
        return sorted({key[0] for key in self.groups})

    def group_at(self, *key: int) -> HomologyGroup:
        return self.groups.get(tuple(key), HomologyGroup())

    def rank_at(self, *key: int) -> int:
        return self.group_at(*key).rank

    def shifted(self, m: int, n: int = 0) -> "BigradedHomology":
        """Apply [m]{n}: the group at (i, j) moves to (i + m, j + n)"""
        def move(key: Degree) -> Degree:
            return (key[0] + m,) if len(key) == 1 else (key[0] + m, key[1] + n)

        return self.model_copy(update={"groups": {move(k): g for k, g in self.groups.items()}})

    def direct_sum(self, other: "BigradedHomology") -> "BigradedHomology":
        groups = dict(self.groups)
        for key, group in other.groups.items():
            mine = groups.get(key, HomologyGroup())
            groups[key] = HomologyGroup(rank=mine.rank + group.rank, torsion=mine.torsion + group.torsion)
        return BigradedHomology(ring=self.ring, graded_by=self.graded_by, groups=groups)

    def rational(self) -> "BigradedHomology":
        groups = {key: HomologyGroup(rank=g.rank) for key, g in self.groups.items()}
        return BigradedHomology(ring="Q", graded_by=self.graded_by, groups=groups)

    def reflected(self, n: int) -> "BigradedHomology":
        """Rational table under (i, j) -> (n - i, n - j)"""
        groups = {(n - k[0], n - k[1]): HomologyGroup(rank=g.rank) for k, g in self.groups.items()}
        return BigradedHomology(ring="Q", graded_by=self.graded_by, groups=groups)

    def rank_table(self) -> RankTable:
        return RankTable(ranks={key: g.rank for key, g in self.groups.items() if len(key) == 2})

    def to_json_dict(self) -> Dict[str, dict]:
        return {
            format_degree(key): {"rank": g.rank, "torsion": list(g.torsion)} for key, g in self.groups.items()
        }

    def format_table(self) -> str:
        """Aligned text rendering, one group per line"""
        rows = [(format_degree(key), str(group)) for key, group in self.groups.items()]
        if not rows:
            return "0"
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.rjust(width)}  {v}" for k, v in rows)


class LeeHomology(BaseModel):
    """Integral primary-graded and rational associated-graded Lee homology"""
    integral: BigradedHomology = Field(..., description="Homology over Z keyed by (i,)")
    rational: BigradedHomology = Field(..., description="Associated graded over Q keyed by (i, j)")

    def to_json_dict(self) -> dict:
        return {"integral": self.integral.to_json_dict(), "rational": self.rational.to_json_dict()}

