"""Interactive stepping sessions and the v:1 record protocol.

A session owns one loaded script and a cursor over its processable
steps (declarations, tactic lines, Qed markers).  Every step stores a
full snapshot, so stepping back restores the exact earlier state.  The
protocol is one JSON record per line; each request yields exactly one
response and errors never move the cursor.

Requests:  load, step_forward, step_back, run_to_end, render, get_state
Responses: state_view, accepted (with embedded state view), error,
           document
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .errors import FpfError, KernelError, Span
from .kernel.checker import TraceTreeBuilder, check_script
from .kernel.signature import Signature, extend_signature
from .kernel.state import ProofState
from .kernel.tactics import apply_tactic, init_state
from .kernel.theorems import AXIOMATIZED, PROVED, TheoremDB, TheoremRecord
from .kernel.trace import ProofTrace, TraceNode
from .parser import (
    AxiomDecl,
    ImportDecl,
    ProofScript,
    TacticLine,
    TheoremDecl,
    parse_script,
)
from .printer import pretty, pretty_sort
from .render.catalog import CommentTemplateCatalog
from .render.document import FormalityLevel
from .render.levels import render
from .stdlib import load_stdlib

PROTOCOL_VERSION = 1


@dataclass(frozen=True)
class _Step:
    """One processable unit of the script, in source order."""

    kind: str  # "decl" | "axiom" | "theorem_open" | "tactic" | "qed"
    span: Span
    decl: object = None
    line: TacticLine | None = None
    theorem: TheoremDecl | None = None


@dataclass(frozen=True)
class _Snapshot:
    signature: Signature
    theorems: TheoremDB
    proof: ProofState | None  # open proof state, if inside a theorem
    open_theorem: TheoremDecl | None
    nodes: tuple[TraceNode, ...]  # nodes of the open proof so far
    finished: tuple[ProofTrace, ...]  # completed traces
    accepted_line: int  # last source line accepted (green boundary)


class Session:
    """One loaded script plus per-step snapshots for exact back-stepping."""

    def __init__(self, source: str):
        self.source = source
        self.script: ProofScript = parse_script(source)
        self.steps: list[_Step] = _flatten(self.script)
        sig, db = load_stdlib()
        self.snapshots: list[_Snapshot] = [
            _Snapshot(sig, db, None, None, (), (), accepted_line=0)
        ]

    # ------------------------------------------------------------ state

    @property
    def cursor(self) -> int:
        return len(self.snapshots) - 1

    @property
    def now(self) -> _Snapshot:
        return self.snapshots[-1]

    @property
    def at_end(self) -> bool:
        return self.cursor >= len(self.steps)

    def step_forward(self) -> _Snapshot:
        """Process the next step; raises FpfError without moving on failure."""
        if self.at_end:
            raise FpfError("AT_END", "the script is fully processed")
        step = self.steps[self.cursor]
        snap = self.now
        if step.kind == "decl":
            sig = extend_signature(snap.signature, step.decl)
            nxt = replace(snap, signature=sig, accepted_line=step.span.line)
        elif step.kind == "axiom":
            db = snap.theorems.with_record(
                TheoremRecord(step.decl.name, step.decl.statement, AXIOMATIZED)
            )
            nxt = replace(snap, theorems=db, accepted_line=step.span.line)
        elif step.kind == "theorem_open":
            state = init_state(step.theorem.statement, snap.signature, snap.theorems)
            nxt = replace(
                snap,
                proof=state,
                open_theorem=step.theorem,
                nodes=(),
                accepted_line=step.span.line,
            )
        elif step.kind == "tactic":
            state, node = apply_tactic(
                snap.proof, step.line, snap.signature, snap.theorems
            )
            node.index = len(snap.nodes)
            nxt = replace(
                snap,
                proof=state,
                nodes=snap.nodes + (node,),
                accepted_line=step.span.line,
            )
        elif step.kind == "qed":
            if not snap.proof.complete:
                raise KernelError(
                    "INCOMPLETE_PROOF",
                    f"Qed reached with {snap.proof.open_goal_count} goal(s) still open",
                    step.span,
                )
            trace = _assemble_trace(snap)
            db = snap.theorems.with_record(
                TheoremRecord(trace.name, trace.statement, PROVED, trace=trace)
            )
            nxt = replace(
                snap,
                theorems=db,
                proof=None,
                open_theorem=None,
                nodes=(),
                finished=snap.finished + (trace,),
                accepted_line=step.span.line,
            )
        else:
            raise AssertionError(step.kind)
        self.snapshots.append(nxt)
        return nxt

    def step_back(self) -> _Snapshot:
        if self.cursor == 0:
            raise FpfError("AT_BEGINNING", "already at the beginning of the script")
        self.snapshots.pop()
        return self.now

    def run_to_end(self) -> _Snapshot:
        while not self.at_end:
            self.step_forward()
        return self.now

    def state_view(self) -> dict:
        snap = self.now
        view = {
            "v": PROTOCOL_VERSION,
            "kind": "state_view",
            "accepted_line": snap.accepted_line,
            "cursor": self.cursor,
            "total_steps": len(self.steps),
            "variables": [],
            "hypotheses": [],
            "goals": [],
            "open_goals": 0,
            "proof_open": snap.proof is not None,
        }
        if snap.proof is not None:
            st = snap.proof
            view["open_goals"] = st.open_goal_count
            if st.focused is not None:
                ctx = st.focused.context
                view["variables"] = [
                    {"name": n, "sort": pretty_sort(s)} for n, s in ctx.variables
                ]
                view["hypotheses"] = [
                    {"name": n, "statement": pretty(f)} for n, f in ctx.hypotheses
                ]
            view["goals"] = [pretty(g.target) for g in st.goals]
        return view


def _flatten(script: ProofScript) -> list[_Step]:
    steps: list[_Step] = []
    for d in script.declarations:
        if isinstance(d, ImportDecl):
            continue
        if isinstance(d, AxiomDecl):
            steps.append(_Step("axiom", d.span, decl=d))
        elif isinstance(d, TheoremDecl):
            steps.append(_Step("theorem_open", d.span, theorem=d))
            for line in d.lines:
                steps.append(_Step("tactic", line.span, line=line))
            steps.append(_Step("qed", d.qed_span, theorem=d))
        else:
            steps.append(_Step("decl", d.span, decl=d))
    return steps


def _assemble_trace(snap: _Snapshot) -> ProofTrace:
    # the tree builder writes each branching node's children; copy the
    # nodes first so snapshots taken before this Qed stay untouched and
    # back-stepping restores them bit for bit
    nodes = tuple(replace(n) for n in snap.nodes)
    builder = TraceTreeBuilder()
    for node in nodes:
        builder.push(node)
    return ProofTrace(
        snap.open_theorem.name,
        snap.open_theorem.statement,
        nodes,
        builder.finish(),
        signature=snap.signature,
        theorems=snap.theorems,
    )


# ------------------------------------------------------------- protocol


class ProtocolSession:
    """The newline-delimited record protocol over one Session."""

    def __init__(self, catalog: CommentTemplateCatalog | None = None):
        self.session: Session | None = None
        self.catalog = catalog

    def handle_line(self, raw: str) -> dict:
        try:
            msg = json.loads(raw)
            if not isinstance(msg, dict):
                raise ValueError("not an object")
        except ValueError:
            return _error("PROTOCOL", "malformed request record", Span(1, 1))
        return self.handle(msg)

    def handle(self, msg: dict) -> dict:
        kind = msg.get("kind")
        try:
            if kind == "load":
                source = msg.get("source")
                if source is None and msg.get("path"):
                    from pathlib import Path

                    source = Path(msg["path"]).read_text(encoding="utf-8")
                if source is None:
                    return _error("PROTOCOL", "load needs 'source' or 'path'", Span(1, 1))
                self.session = Session(source)
                return self.session.state_view()
            if self.session is None:
                return _error("PROTOCOL", "no script loaded", Span(1, 1))
            if kind == "step_forward":
                if self.session.at_end:
                    return _error("AT_END", "the script is fully processed", Span(1, 1))
                snap = self.session.step_forward()
                return self._accepted(snap)
            if kind == "step_back":
                snap = self.session.step_back()
                return self._accepted(snap)
            if kind == "run_to_end":
                snap = self.session.run_to_end()
                return self._accepted(snap)
            if kind == "get_state":
                return self.session.state_view()
            if kind == "render":
                return self._render(msg.get("level", 1))
            return _error("PROTOCOL", f"unknown request kind {kind!r}", Span(1, 1))
        except FpfError as e:
            return _error(e.code, e.message, e.span)

    def _accepted(self, snap: _Snapshot) -> dict:
        view = self.session.state_view()
        return {
            "v": PROTOCOL_VERSION,
            "kind": "accepted",
            "line": snap.accepted_line,
            "state": view,
        }

    def _render(self, level) -> dict:
        try:
            level = FormalityLevel(int(level))
        except ValueError:
            return _error("PROTOCOL", f"no such formality level: {level}", Span(1, 1))
        result = check_script(self.session.script)
        docs = [render(level, t, self.catalog) for t in result.traces]
        blocks = []
        for d in docs:
            for b in d.blocks:
                blocks.append(
                    {
                        "depth": b.depth,
                        "marker": b.marker,
                        "text": b.text,
                        "nodes": list(b.sources),
                    }
                )
        return {
            "v": PROTOCOL_VERSION,
            "kind": "document",
            "level": int(level),
            "blocks": blocks,
        }


def _error(code: str, message: str, span: Span) -> dict:
    return {
        "v": PROTOCOL_VERSION,
        "kind": "error",
        "code": code,
        "span": span.as_dict(),
        "message": message,
    }
