"""Proof states: contexts, goals, and bullet focusing.

A state holds the goals of the branch currently in focus plus a stack of
bullet frames; each frame remembers its marker and the sibling goals
that still await their bullet.  A proof is complete when both are empty.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .. import terms as T

BULLET_CYCLE = ("+", "*", "-")


@dataclass(frozen=True)
class Context:
    variables: tuple[tuple[str, T.Sort], ...] = ()
    hypotheses: tuple[tuple[str, T.Formula], ...] = ()

    def names(self) -> set[str]:
        return {n for n, _ in self.variables} | {n for n, _ in self.hypotheses}

    def hyp(self, name: str) -> T.Formula | None:
        for n, f in self.hypotheses:
            if n == name:
                return f
        return None

    def var_sort(self, name: str) -> T.Sort | None:
        for n, s in self.variables:
            if n == name:
                return s
        return None

    def with_var(self, name: str, sort: T.Sort) -> "Context":
        return replace(self, variables=self.variables + ((name, sort),))

    def with_hyp(self, name: str, f: T.Formula) -> "Context":
        return replace(self, hypotheses=self.hypotheses + ((name, f),))

    def replace_hyp(self, name: str, f: T.Formula) -> "Context":
        hyps = tuple((n, f if n == name else g) for n, g in self.hypotheses)
        return replace(self, hypotheses=hyps)

    def var_env(self) -> dict[str, T.Sort]:
        return dict(self.variables)


@dataclass(frozen=True)
class Goal:
    context: Context
    target: T.Formula


@dataclass(frozen=True)
class Frame:
    marker: str
    deferred: tuple[Goal, ...]


@dataclass(frozen=True)
class ProofState:
    goals: tuple[Goal, ...] = ()
    frames: tuple[Frame, ...] = ()
    step: int = 0

    @property
    def complete(self) -> bool:
        return not self.goals and not self.frames

    @property
    def open_goal_count(self) -> int:
        return len(self.goals) + sum(len(f.deferred) for f in self.frames)

    @property
    def focused(self) -> Goal | None:
        return self.goals[0] if self.goals else None

    def settle(self) -> "ProofState":
        """Pop exhausted bullet frames after a goal was closed."""
        s = self
        while not s.goals and s.frames and not s.frames[-1].deferred:
            s = replace(s, frames=s.frames[:-1])
        return s
