"""Proof traces: the single source every renderer consumes.

A trace records, for every processed line, the state before and after,
plus enough metadata (introduced names, rewrite details, branch shapes)
that natural-language rendering never has to re-run the kernel.  The
same node objects appear twice: in `nodes` (linear script order, used
for replay and the low formality levels) and in `roots` (the tree of
branch sequences, used for structure-aware rendering).
"""
from __future__ import annotations

from dataclasses import dataclass

from .. import terms as T
from ..parser import TacticLine
from .state import ProofState


@dataclass(frozen=True)
class RewriteInfo:
    justification: str  # theorem name or hypothesis name
    is_hypothesis: bool
    equation: T.Formula  # the (instantiated) equation that was applied
    reverse: bool
    target_hyp: str | None  # None = the goal was rewritten
    slot: str  # "lhs" | "rhs" | "whole" relative to the rewritten formula
    side_before: T.Term | None  # the touched equality side, before/after
    side_after: T.Term | None
    redex: T.Term
    replacement: T.Term
    conditions: tuple[T.Formula, ...] = ()
    formula_before: T.Formula | None = None
    formula_after: T.Formula | None = None


@dataclass(frozen=True)
class BranchInfo:
    """What a branching tactic sets up in one of its subgoals."""

    kind: str  # "or" | "case" | "ind" | "main" | "condition" | "subgoal"
    hyps: tuple[tuple[str, T.Formula], ...] = ()
    vars: tuple[tuple[str, T.Sort], ...] = ()
    ihs: tuple[tuple[str, T.Formula], ...] = ()
    pattern: T.Term | None = None  # constructor pattern for case/ind
    condition: T.Formula | None = None
    target: T.Formula | None = None


@dataclass
class TraceNode:
    line: TacticLine
    state_before: ProofState
    state_after: ProofState
    subgoals: int | None  # goals this tactic created; None for bullet events
    index: int = -1  # position in the linear trace
    goal_before: object = None  # the focused Goal the tactic acted on
    children: tuple[tuple["TraceNode", ...], ...] = ()
    rewrite: RewriteInfo | None = None
    new_hyps: tuple[tuple[str, T.Formula], ...] = ()
    new_vars: tuple[tuple[str, T.Sort], ...] = ()
    used_hyps: tuple[tuple[str, T.Formula], ...] = ()
    branches: tuple[BranchInfo, ...] = ()
    theorem_used: str | None = None  # use_theorem provenance

    @property
    def kind(self) -> str:
        return self.line.kind

    @property
    def is_bullet_event(self) -> bool:
        return self.line.kind == "bullet"

    @property
    def is_closer(self) -> bool:
        return self.subgoals == 0


@dataclass(frozen=True)
class ProofTrace:
    name: str
    statement: T.Formula
    nodes: tuple[TraceNode, ...]  # linear, script order, bullets included
    roots: tuple[TraceNode, ...]  # root branch sequence (bullets included)
    signature: object = None  # Signature/TheoremDB in force for this proof,
    theorems: object = None  # kept so traces can be replayed standalone

    @property
    def tactic_nodes(self) -> tuple[TraceNode, ...]:
        return tuple(n for n in self.nodes if not n.is_bullet_event)
