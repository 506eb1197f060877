"""Named theorems available as justifications."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .. import terms as T

if TYPE_CHECKING:
    from .trace import ProofTrace

AXIOMATIZED = "axiomatized"
PROVED = "proved-in-corpus"


@dataclass(frozen=True)
class TheoremRecord:
    name: str
    statement: T.Formula
    status: str  # AXIOMATIZED or PROVED
    trace: "ProofTrace | None" = None
    # schematic records (one unary function placeholder) are instantiated
    # with a concrete function symbol at use time
    schematic_fun: str | None = None


@dataclass(frozen=True)
class TheoremDB:
    records: dict[str, TheoremRecord] = field(default_factory=dict)

    def lookup(self, name: str) -> TheoremRecord | None:
        return self.records.get(name)

    def with_record(self, rec: TheoremRecord) -> "TheoremDB":
        return TheoremDB({**self.records, rec.name: rec})

    def names(self) -> list[str]:
        return list(self.records)


def equality_congruence_schema() -> TheoremRecord:
    """x = y -> f x = f y, schematic in one unary function symbol.

    The placeholder `f` is replaced by a concrete unary symbol given as
    the first instantiation argument of `use_theorem`.
    """
    x, y = T.Var("x"), T.Var("y")
    stmt = T.Forall(
        "x",
        T.NAT_SORT,
        T.Forall("y", T.NAT_SORT, T.Imp(T.Eq(x, y), T.Eq(T.App("f", (x,)), T.App("f", (y,))))),
    )
    return TheoremRecord("equ_fct", stmt, AXIOMATIZED, schematic_fun="f")
