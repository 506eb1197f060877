"""Detection of analogous sibling branches.

Two sibling subproofs are analogous when they are node-wise isomorphic
up to (a) a consistent renaming of atom heads and variables found by
anti-unification and (b) swapped left/right disjunction choices.  The
report is verified before it is returned: the reference branch is
transformed by the substitution (outside the preserved formulas) and the
swap set, and the result must reproduce the analogous branch's recorded
goals and contexts exactly.  If verification fails, no analogy is
reported and both branches render in full.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .. import terms as T
from ..kernel.state import Context, Goal, ProofState
from ..kernel.trace import TraceNode
from ..printer import pretty

_SWAP = {"prove_or_left": "prove_or_right", "prove_or_right": "prove_or_left"}


@dataclass(frozen=True)
class AnalogyReport:
    substitution: tuple[tuple[str, str], ...]  # atom-head / variable renames
    swaps: tuple[tuple[str, str], ...]  # tactic-kind exceptions used
    preserved: tuple[T.Formula, ...]  # formulas exempt from the substitution
    # a representative applied form per substitution pair, for display
    display: tuple[tuple[str, str], ...]

    @property
    def sigma(self) -> dict[str, str]:
        return dict(self.substitution)


class _Mismatch(Exception):
    pass


class _Collector:
    def __init__(self):
        self.sigma: dict[str, str] = {}
        self.display: dict[str, tuple[str, str]] = {}
        self.preserved: list[T.Formula] = []
        self.swaps: list[tuple[str, str]] = []

    def rename(self, a: str, b: str):
        if self.sigma.get(a, b) != b:
            raise _Mismatch()
        self.sigma[a] = b

    def note_preserved(self, f: T.Formula):
        if any(T.alpha_eq(f, g) for g in self.preserved):
            return
        self.preserved.append(f)


def _domain_syms(sigma: dict[str, str], f: T.Formula) -> bool:
    return bool(T.formula_vars(f) & {k for k, v in sigma.items() if k != v})


def _diff_term(a: T.Term, b: T.Term, col: _Collector):
    if a == b:
        return
    if isinstance(a, T.Var) and isinstance(b, T.Var):
        col.rename(a.name, b.name)
        return
    if isinstance(a, T.App) and isinstance(b, T.App) and len(a.args) == len(b.args):
        if a.head != b.head:
            col.rename(a.head, b.head)
        for x, y in zip(a.args, b.args):
            _diff_term(x, y, col)
        return
    raise _Mismatch()


def _diff_formula(a: T.Formula, b: T.Formula, col: _Collector):
    if type(a) is not type(b):
        raise _Mismatch()
    if isinstance(a, T.Atom):
        if a.pred != b.pred:
            if len(a.args) != len(b.args):
                raise _Mismatch()
            col.rename(a.pred, b.pred)
            col.display.setdefault(a.pred, (pretty(a), pretty(b)))
        for x, y in zip(a.args, b.args):
            _diff_term(x, y, col)
        return
    if isinstance(a, T.Eq):
        _diff_term(a.lhs, b.lhs, col)
        _diff_term(a.rhs, b.rhs, col)
        return
    if isinstance(a, T.Falsity):
        return
    if isinstance(a, T.Not):
        _diff_formula(a.body, b.body, col)
        return
    if isinstance(a, (T.And, T.Or, T.Imp)):
        _diff_formula(a.left, b.left, col)
        _diff_formula(a.right, b.right, col)
        return
    if isinstance(a, (T.Forall, T.Exists)):
        if a.var != b.var or a.sort != b.sort:
            raise _Mismatch()
        _diff_formula(a.body, b.body, col)
        return
    raise _Mismatch()


def _focused(n: TraceNode) -> Goal | None:
    return n.goal_before


def _walk_pairs(a: tuple[TraceNode, ...], b: tuple[TraceNode, ...]):
    """Aligned (node, node) pairs over two subtrees; raises on shape mismatch."""
    a = tuple(n for n in a if not n.is_bullet_event)
    b = tuple(n for n in b if not n.is_bullet_event)
    if len(a) != len(b):
        raise _Mismatch()
    for x, y in zip(a, b):
        yield x, y
        if len(x.children) != len(y.children):
            raise _Mismatch()
        for cx, cy in zip(x.children, y.children):
            yield from _walk_pairs(cx, cy)


def detect_analogy(
    branch_a: tuple[TraceNode, ...], branch_b: tuple[TraceNode, ...]
) -> AnalogyReport | None:
    """Report how `branch_b` is `branch_a` after a substitution, or None."""
    col = _Collector()
    try:
        pairs = list(_walk_pairs(branch_a, branch_b))
        for x, y in pairs:
            if x.kind != y.kind:
                if _SWAP.get(x.kind) == y.kind:
                    if (x.kind, y.kind) not in col.swaps:
                        col.swaps.append((x.kind, y.kind))
                else:
                    raise _Mismatch()
            if x.line.names != y.line.names:
                raise _Mismatch()
            for ta, tb in zip(x.line.term_args, y.line.term_args):
                _diff_term(ta, tb, col)
            ga, gb = _focused(x), _focused(y)
            if (ga is None) != (gb is None):
                raise _Mismatch()
            if ga is not None:
                _diff_formula(ga.target, gb.target, col)
                if len(ga.context.hypotheses) != len(gb.context.hypotheses):
                    raise _Mismatch()
                for (na, fa), (nb, fb) in zip(
                    ga.context.hypotheses, gb.context.hypotheses
                ):
                    if na != nb:
                        raise _Mismatch()
                    _diff_formula(fa, fb, col)
    except _Mismatch:
        return None
    sigma = {k: v for k, v in col.sigma.items() if k != v}
    # preserved formulas: minimal unchanged subformulas mentioning a
    # renamed symbol, collected from the analogous branch
    preserved: list[T.Formula] = []
    if sigma:
        for x, y in pairs:
            g = _focused(y)
            if g is None:
                continue
            for f in (g.target, *(h for _, h in g.context.hypotheses)):
                for p in _minimal_preserved(f, set(sigma)):
                    if not any(T.alpha_eq(p, q) for q in preserved):
                        preserved.append(p)
    report = AnalogyReport(
        substitution=tuple(sorted(sigma.items())),
        swaps=tuple(col.swaps),
        preserved=tuple(preserved),
        display=tuple((col.display.get(k, (k, v))) for k, v in sorted(sigma.items())),
    )
    if not _verify(report, branch_a, branch_b):
        return None
    return report


def _minimal_preserved(f: T.Formula, domain: set[str]) -> list[T.Formula]:
    """Smallest subformulas that mention a renamed symbol but must stay
    unchanged; a connective over a bare renamed atom is such a unit."""
    if not (T.formula_vars(f) & domain):
        return []
    children: list[T.Formula]
    if isinstance(f, (T.And, T.Or, T.Imp)):
        children = [f.left, f.right]
    elif isinstance(f, T.Not):
        children = [f.body]
    elif isinstance(f, (T.Forall, T.Exists)):
        children = [f.body]
    else:
        # an atom or equality built from renamed symbols is the unit itself
        return [f]
    out: list[T.Formula] = []
    for c in children:
        if not (T.formula_vars(c) & domain):
            continue
        if _is_bare_unit(c, domain):
            return [f]
        out.extend(_minimal_preserved(c, domain))
    return out


def _is_bare_unit(f: T.Formula, domain: set[str]) -> bool:
    if isinstance(f, T.Atom):
        return f.pred in domain or bool(
            set().union(set(), *(T.term_vars(a) for a in f.args)) & domain
        )
    if isinstance(f, T.Eq):
        return bool((T.term_vars(f.lhs) | T.term_vars(f.rhs)) & domain)
    return False


# ---------------------------------------------------- applying a report


def subst_outside(f: T.Formula, report: AnalogyReport) -> T.Formula:
    """Apply the substitution everywhere except inside preserved formulas."""
    if any(T.alpha_eq(f, p) for p in report.preserved):
        return f
    sigma = report.sigma
    if isinstance(f, T.Atom):
        return T.Atom(sigma.get(f.pred, f.pred), tuple(_subst_t(a, sigma) for a in f.args))
    if isinstance(f, T.Eq):
        return T.Eq(_subst_t(f.lhs, sigma), _subst_t(f.rhs, sigma))
    if isinstance(f, T.Falsity):
        return f
    if isinstance(f, T.Not):
        return T.Not(subst_outside(f.body, report))
    if isinstance(f, (T.And, T.Or, T.Imp)):
        return type(f)(subst_outside(f.left, report), subst_outside(f.right, report))
    if isinstance(f, (T.Forall, T.Exists)):
        return type(f)(f.var, f.sort, subst_outside(f.body, report))
    raise TypeError(f)


def _subst_t(t: T.Term, sigma: dict[str, str]) -> T.Term:
    if isinstance(t, T.Var):
        return T.Var(sigma.get(t.name, t.name))
    return T.App(sigma.get(t.head, t.head), tuple(_subst_t(a, sigma) for a in t.args))


def transform_branch(
    branch: tuple[TraceNode, ...], report: AnalogyReport
) -> tuple[TraceNode, ...]:
    """The reference branch rewritten by the report (kinds swapped,
    formulas substituted); used for verification and for reverting an
    analogy block back to full comments."""
    swaps = dict(report.swaps)

    def tf_formula(f):
        return subst_outside(f, report)

    def tf_goal(g: Goal) -> Goal:
        ctx = Context(
            g.context.variables,
            tuple((n, tf_formula(f)) for n, f in g.context.hypotheses),
        )
        return Goal(ctx, tf_formula(g.target))

    def tf_state(s: ProofState) -> ProofState:
        if s.focused is None:
            return s
        return replace(s, goals=(tf_goal(s.goals[0]),) + s.goals[1:])

    def tf_node(n: TraceNode) -> TraceNode:
        line = n.line
        if line.kind in swaps:
            line = replace(line, kind=swaps[line.kind])
        line = replace(
            line, term_args=tuple(_subst_t(t, report.sigma) for t in line.term_args)
        )
        rw = n.rewrite
        if rw is not None:
            rw = replace(
                rw,
                equation=tf_formula(rw.equation),
                side_before=None if rw.side_before is None else _subst_t(rw.side_before, report.sigma),
                side_after=None if rw.side_after is None else _subst_t(rw.side_after, report.sigma),
                redex=_subst_t(rw.redex, report.sigma),
                replacement=_subst_t(rw.replacement, report.sigma),
                conditions=tuple(tf_formula(c) for c in rw.conditions),
                formula_before=None if rw.formula_before is None else tf_formula(rw.formula_before),
                formula_after=None if rw.formula_after is None else tf_formula(rw.formula_after),
            )
        out = TraceNode(
            line=line,
            state_before=tf_state(n.state_before),
            state_after=tf_state(n.state_after),
            subgoals=n.subgoals,
            index=n.index,
            children=tuple(tuple(tf_node(c) for c in cs) for cs in n.children),
            rewrite=rw,
            new_hyps=tuple((h, tf_formula(f)) for h, f in n.new_hyps),
            new_vars=n.new_vars,
            used_hyps=tuple((h, tf_formula(f)) for h, f in n.used_hyps),
            branches=n.branches,
            theorem_used=n.theorem_used,
        )
        out.goal_before = None if n.goal_before is None else tf_goal(n.goal_before)
        return out

    return tuple(tf_node(n) for n in branch)


def _verify(
    report: AnalogyReport, branch_a: tuple[TraceNode, ...], branch_b: tuple[TraceNode, ...]
) -> bool:
    """Transformed reference branch must reproduce the analogous branch's
    recorded lines, goals, and contexts."""
    try:
        ta = transform_branch(branch_a, report)
        for x, y in _walk_pairs(ta, branch_b):
            if x.kind != y.kind or x.line.names != y.line.names:
                return False
            if x.line.term_args != y.line.term_args:
                return False
            gx, gy = _focused(x), _focused(y)
            if (gx is None) != (gy is None):
                return False
            if gx is None:
                continue
            if not T.alpha_eq(gx.target, gy.target):
                return False
            if len(gx.context.hypotheses) != len(gy.context.hypotheses):
                return False
            for (na, fa), (nb, fb) in zip(gx.context.hypotheses, gy.context.hypotheses):
                if na != nb or not T.alpha_eq(fa, fb):
                    return False
    except _Mismatch:
        return False
    return True
