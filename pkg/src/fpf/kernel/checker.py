"""Batch checking of whole scripts and trace construction."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import kernel_error
from ..parser import (
    AxiomDecl,
    ImportDecl,
    ProofScript,
    TheoremDecl,
)
from .signature import Signature, extend_signature
from .tactics import apply_tactic, init_state
from .theorems import AXIOMATIZED, PROVED, TheoremDB, TheoremRecord
from .trace import ProofTrace, TraceNode


@dataclass(frozen=True)
class CheckResult:
    traces: tuple[ProofTrace, ...]
    signature: Signature
    theorems: TheoremDB

    def trace(self, name: str | None = None) -> ProofTrace:
        if name is None:
            return self.traces[0]
        return next(t for t in self.traces if t.name == name)


def check_script(
    script: ProofScript, db: TheoremDB | None = None, sig: Signature | None = None
) -> CheckResult:
    """Check every theorem of a parsed script.

    Declarations extend the signature in order; accepted theorems become
    available as justifications for the theorems after them.  The first
    failing line aborts with its KernelError.
    """
    if sig is None or db is None:
        from ..stdlib import load_stdlib

        std_sig, std_db = load_stdlib()
        sig = sig or std_sig
        db = db or std_db
    traces: list[ProofTrace] = []
    for decl in script.declarations:
        if isinstance(decl, ImportDecl):
            continue
        if isinstance(decl, AxiomDecl):
            db = db.with_record(TheoremRecord(decl.name, decl.statement, AXIOMATIZED))
        elif isinstance(decl, TheoremDecl):
            trace = check_theorem(decl, sig, db)
            traces.append(trace)
            db = db.with_record(
                TheoremRecord(decl.name, decl.statement, PROVED, trace=trace)
            )
        else:
            sig = extend_signature(sig, decl)
    return CheckResult(tuple(traces), sig, db)


def check_theorem(decl: TheoremDecl, sig: Signature, db: TheoremDB) -> ProofTrace:
    state = init_state(decl.statement, sig, db)
    nodes: list[TraceNode] = []
    builder = TraceTreeBuilder()
    for line in decl.lines:
        state, node = apply_tactic(state, line, sig, db)
        node.index = len(nodes)
        nodes.append(node)
        builder.push(node)
    if not state.complete:
        raise kernel_error(
            "INCOMPLETE_PROOF",
            f"Qed reached with {state.open_goal_count} goal(s) still open",
            decl.qed_span,
        )
    return ProofTrace(
        decl.name,
        decl.statement,
        tuple(nodes),
        builder.finish(),
        signature=sig,
        theorems=db,
    )


class TraceTreeBuilder:
    """Reconstructs the branch tree from the linear node stream.

    A sequence proves exactly one goal: it ends with a closer (0
    subgoals) or with a branching node whose child sequences follow in
    goal order.  Bullet events attach to the sequence they introduce.
    """

    def __init__(self):
        self.roots: list[TraceNode] = []
        # stack of (branch node, list of child sequences, active index)
        self.stack: list[list] = []
        self.branch_children: dict[int, list[list[TraceNode]]] = {}

    def _current(self) -> list[TraceNode]:
        if not self.stack:
            return self.roots
        node, children, idx = self.stack[-1]
        return children[idx]

    def push(self, node: TraceNode) -> None:
        self._current().append(node)
        if node.subgoals is None:  # bullet event
            return
        if node.subgoals == 0:
            self._close()
        elif node.subgoals >= 2:
            children = [[] for _ in range(node.subgoals)]
            self.branch_children[id(node)] = children
            self.stack.append([node, children, 0])

    def _close(self) -> None:
        while self.stack:
            top = self.stack[-1]
            top[2] += 1
            if top[2] < len(top[1]):
                return
            self.stack.pop()

    def finish(self) -> tuple[TraceNode, ...]:
        def freeze(seq: list[TraceNode]) -> tuple[TraceNode, ...]:
            for n in seq:
                children = self.branch_children.get(id(n))
                if children is not None:
                    n.children = tuple(freeze(c) for c in children)
            return tuple(seq)

        return freeze(self.roots)


def replay(trace: ProofTrace, sig: Signature | None = None, db: TheoremDB | None = None) -> bool:
    """Re-run every recorded line from its recorded pre-state and compare
    with the recorded post-state (structural equality)."""
    sig = sig or trace.signature
    db = db or trace.theorems
    for node in trace.nodes:
        state, again = apply_tactic(node.state_before, node.line, sig, db)
        if state != node.state_after:
            return False
    return True
