"""Equational chains: runs of rewrites condensed into `t0 ={j}= t1 ...`.

A run of consecutive rewrites on an equality goal is partitioned by the
recorded side into one chain for the left-hand side and one for the
right-hand side (in first-touch order).  Rewrites inside hypotheses give
forward chains.  Justification hints are bare theorem names; a rewrite
justified by a hypothesis cites the hypothesis's statement instead (the
citation convention for hypotheses, whose ad-hoc names would mean
nothing to a reader of the finished document).
"""
from __future__ import annotations

from dataclasses import dataclass

from .. import terms as T
from ..kernel.trace import ProofTrace, TraceNode
from ..printer import pretty, pretty_term


@dataclass(frozen=True)
class EquationalChain:
    side: str  # "lhs" | "rhs" | "forward"
    terms: tuple[T.Term, ...]  # t0 .. tk
    hints: tuple[str, ...]  # j1 .. jk
    nodes: tuple[int, ...]  # witnessing trace node per link
    target_hyp: str | None = None
    anchor: T.Term | None = None  # untouched side of a hypothesis (dis)equality
    negated: bool = False  # chain lives inside a disequality

    def render(self) -> str:
        parts = [pretty_term(self.terms[0])]
        for hint, t in zip(self.hints, self.terms[1:]):
            parts.append(f"={{{hint}}}= {pretty_term(t)}")
        body = " ".join(parts)
        if self.anchor is not None:
            rel = "≠" if self.negated else "="
            return f"{pretty_term(self.anchor)} {rel} {body}"
        return body


def hint_for(node: TraceNode) -> str:
    """Chain hint: theorem name, or the cited statement for hypotheses."""
    rw = node.rewrite
    if node.kind == "unfold":
        return "by Def"
    if rw.is_hypothesis:
        return pretty(rw.equation)
    return rw.justification


def _is_goal_rewrite(n: TraceNode) -> bool:
    return (
        n.kind in ("rewrite", "unfold")
        and n.rewrite is not None
        and n.rewrite.target_hyp is None
        and n.rewrite.slot in ("lhs", "rhs")
        and n.subgoals == 1
    )


def goal_chains(run: list[TraceNode]) -> list[EquationalChain]:
    """Per-side chains of one consecutive goal-rewrite run."""
    order: list[str] = []
    data: dict[str, tuple[list, list, list]] = {}
    for n in run:
        rw = n.rewrite
        if rw.slot not in data:
            order.append(rw.slot)
            data[rw.slot] = ([rw.side_before, rw.side_after], [hint_for(n)], [n.index])
        else:
            terms, hints, nodes = data[rw.slot]
            terms.append(rw.side_after)
            hints.append(hint_for(n))
            nodes.append(n.index)
    return [
        EquationalChain(s, tuple(data[s][0]), tuple(data[s][1]), tuple(data[s][2]))
        for s in order
    ]


def hyp_chain(run: list[TraceNode], seed: TraceNode | None = None, seed_hint: str | None = None) -> EquationalChain | None:
    """Forward chain over one hypothesis.

    `seed` is a node that introduced the hypothesis as an equality (a
    derived fact); its two sides open the chain with `seed_hint`.
    """
    name = run[0].rewrite.target_hyp if run else seed.new_hyps[0][0]
    terms: tuple[T.Term, ...]
    hints: tuple[str, ...]
    nodes: tuple[int, ...]
    anchor = None
    negated = False
    if seed is not None:
        eq = seed.new_hyps[0][1]
        if not isinstance(eq, T.Eq):
            return None
        terms = (eq.lhs, eq.rhs)
        hints = (seed_hint,)
        nodes = (seed.index,)
        expected_slot = "rhs"
    else:
        first = run[0].rewrite
        if first.side_before is None:
            return None
        terms = (first.side_before, first.side_after)
        hints = (hint_for(run[0]),)
        nodes = (run[0].index,)
        expected_slot = first.slot
        f = first.formula_before
        inner = f.body if isinstance(f, T.Not) else f
        negated = isinstance(f, T.Not)
        if isinstance(inner, T.Eq):
            anchor = inner.rhs if first.slot == "lhs" else inner.lhs
        run = run[1:]
    for n in run:
        rw = n.rewrite
        if rw.slot != expected_slot or rw.side_before != terms[-1]:
            return None
        terms = terms + (rw.side_after,)
        hints = hints + (hint_for(n),)
        nodes = nodes + (n.index,)
    return EquationalChain(
        "forward", terms, hints, nodes, target_hyp=name, anchor=anchor, negated=negated
    )


def extract_chains(trace: ProofTrace) -> list[EquationalChain]:
    """All goal-side chains of a trace, in first-touch order."""
    out: list[EquationalChain] = []

    def walk(seq):
        run: list[TraceNode] = []
        for n in seq:
            if _is_goal_rewrite(n):
                run.append(n)
            else:
                if run:
                    out.extend(goal_chains(run))
                    run = []
                for child in n.children:
                    walk(child)
        if run:
            out.extend(goal_chains(run))

    walk(trace.roots)
    return out
