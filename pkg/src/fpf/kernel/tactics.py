"""Tactic semantics: strict, shape-directed transformations of proof states.

Every rule applies only to its exact goal or hypothesis shape and fails
with a typed KernelError otherwise.  `use_imp` additionally accepts a
negation for its major premise (`¬A` behaves as `A → False`); without
this no negated hypothesis could ever be consumed.
"""
from __future__ import annotations

from dataclasses import replace

from .. import terms as T
from ..errors import KernelError, ScopeError, Span, kernel_error, shape_name
from ..parser import TacticLine
from ..printer import pretty, pretty_sort, pretty_term
from .reduce import convertible, normalize, rewrite_formula
from .signature import Signature, infer_sort
from .state import BULLET_CYCLE, Context, Frame, Goal, ProofState
from .theorems import TheoremDB
from .trace import BranchInfo, RewriteInfo, TraceNode


def init_state(thm: T.Formula, sig: Signature, db: TheoremDB) -> ProofState:
    """Initial state: one goal, empty context."""
    from ..parser import check_statement_scope

    check_statement_scope(thm, sig)
    return ProofState(goals=(Goal(Context(), thm),))


def apply_tactic(
    state: ProofState, line: TacticLine, sig: Signature, db: TheoremDB
) -> tuple[ProofState, TraceNode]:
    """Apply one script line (bullet prefix included) to a state."""
    try:
        before = state
        if line.bullet is not None:
            state = _bullet(state, line.bullet)
        if line.kind == "bullet":
            after = replace(state, step=state.step + 1)
            node = TraceNode(line, before, after, subgoals=None)
            node.goal_before = after.focused
            return after, node
        if not state.goals:
            if state.open_goal_count:
                raise kernel_error(
                    "BULLET_EXPECTED",
                    f"the previous subproof is finished; focus the next goal "
                    f"with the bullet {state.frames[-1].marker!r}",
                )
            raise kernel_error("NO_OPEN_GOAL", "there is no goal left to work on")
        focused = state.goals[0]
        new_state, node = _dispatch(state, line, sig, db)
        new_state = replace(new_state.settle(), step=state.step + 1)
        node.state_before = before
        node.state_after = new_state
        node.goal_before = focused
        return new_state, node
    except KernelError as e:
        raise KernelError(e.code, e.message, line.span) from None


def _dispatch(state, line, sig, db):
    goal = state.goals[0]
    handler = _HANDLERS[line.kind]
    return handler(state, goal, line, sig, db)


# ------------------------------------------------------------------ helpers


def _focus(state: ProofState, new_goals: list[Goal]) -> ProofState:
    return replace(state, goals=tuple(new_goals) + state.goals[1:])


def _fresh(ctx: Context, sig: Signature, name: str) -> None:
    if name in ctx.names():
        raise kernel_error("NAME_COLLISION", f"the name {name!r} is already in use")
    if sig.is_symbol(name) or sig.is_sort(name):
        raise kernel_error(
            "NAME_COLLISION", f"{name!r} already names a declared symbol"
        )


def _hyp(ctx: Context, name: str) -> T.Formula:
    f = ctx.hyp(name)
    if f is None:
        raise kernel_error("UNKNOWN_HYPOTHESIS", f"there is no hypothesis named {name!r}")
    return f


def _goal_shape_error(kind: str, expected: str, goal: Goal, code: str) -> KernelError:
    return kernel_error(
        code,
        f"{kind} expects the current goal to be {expected}; the goal here is "
        f"{shape_name(goal.target)} ({pretty(goal.target)})",
    )


def _hyp_shape_error(kind: str, expected: str, name: str, f: T.Formula, code: str) -> KernelError:
    return kernel_error(
        code,
        f"{kind} expects {name} to be {expected}; {name} here is "
        f"{shape_name(f)} ({pretty(f)})",
    )


def _resolve_term(t: T.Term, ctx: Context, sig: Signature) -> T.Term:
    """Resolve a tactic-argument term against the goal context."""
    if isinstance(t, T.Var):
        if ctx.var_sort(t.name) is not None:
            return t
        if sig.is_symbol(t.name):
            if sig.arity(t.name) == 0:
                return T.App(t.name)
            raise kernel_error(
                "ARITY_MISMATCH", f"{t.name!r} expects {sig.arity(t.name)} argument(s)"
            )
        raise kernel_error("UNKNOWN_VARIABLE", f"unknown variable {t.name!r}")
    if not sig.is_symbol(t.head):
        raise kernel_error("UNKNOWN_FUNCTION", f"unknown symbol {t.head!r}")
    if sig.arity(t.head) != len(t.args):
        raise kernel_error(
            "ARITY_MISMATCH",
            f"{t.head!r} expects {sig.arity(t.head)} argument(s), got {len(t.args)}",
        )
    return T.App(t.head, tuple(_resolve_term(a, ctx, sig) for a in t.args))


def _sort_of(t: T.Term, ctx: Context, sig: Signature) -> T.Sort:
    try:
        return infer_sort(sig, ctx.var_env(), t, Span(1, 1))
    except ScopeError as e:
        raise kernel_error("SORT_MISMATCH", e.message)


def _check_sort(t: T.Term, expected: T.Sort, ctx: Context, sig: Signature) -> None:
    got = _sort_of(t, ctx, sig)
    if got != expected:
        raise kernel_error(
            "SORT_MISMATCH",
            f"the term {pretty_term(t)} has sort {pretty_sort(got)}, "
            f"but {pretty_sort(expected)} is required",
        )


# ------------------------------------------------------------------ bullets


def _bullet(state: ProofState, marker: str) -> ProofState:
    if not state.goals:
        if not state.frames:
            raise kernel_error("NO_OPEN_GOAL", "there is no goal left to focus")
        top = state.frames[-1]
        if marker != top.marker:
            raise kernel_error(
                "BULLET_WRONG_MARKER",
                f"the open bullet level uses {top.marker!r}; found {marker!r}",
            )
        goals = (top.deferred[0],)
        frames = state.frames[:-1] + (Frame(marker, top.deferred[1:]),)
        return replace(state, goals=goals, frames=frames)
    if state.frames and state.frames[-1].marker == marker:
        raise kernel_error(
            "BULLET_SIBLING_OPEN",
            f"the current {marker!r} subproof is not finished yet "
            f"({len(state.goals)} goal(s) remain), so a new {marker!r} bullet "
            f"cannot be opened",
        )
    required = BULLET_CYCLE[len(state.frames) % 3]
    if marker != required:
        raise kernel_error(
            "BULLET_WRONG_MARKER",
            f"at this nesting depth the bullet must be {required!r}; found {marker!r}",
        )
    frame = Frame(marker, state.goals[1:])
    return replace(state, goals=(state.goals[0],), frames=state.frames + (frame,))


# ------------------------------------------------------------- prove_* side


def _prove_imp(state, goal, line, sig, db):
    if not isinstance(goal.target, T.Imp):
        raise _goal_shape_error("prove_imp", "an implication", goal, "GOAL_NOT_IMPLICATION")
    (h,) = line.names
    _fresh(goal.context, sig, h)
    ctx = goal.context.with_hyp(h, goal.target.left)
    new = _focus(state, [Goal(ctx, goal.target.right)])
    return new, TraceNode(
        line, state, new, subgoals=1, new_hyps=((h, goal.target.left),)
    )


def _prove_all(state, goal, line, sig, db):
    if not isinstance(goal.target, T.Forall):
        raise _goal_shape_error(
            "prove_all", "universally quantified", goal, "GOAL_NOT_UNIVERSAL"
        )
    (x,) = line.names
    _fresh(goal.context, sig, x)
    ctx = goal.context.with_var(x, goal.target.sort)
    body = T.subst_formula(goal.target.body, {goal.target.var: T.Var(x)})
    new = _focus(state, [Goal(ctx, body)])
    return new, TraceNode(
        line, state, new, subgoals=1, new_vars=((x, goal.target.sort),)
    )


def _prove_not(state, goal, line, sig, db):
    if not isinstance(goal.target, T.Not):
        raise _goal_shape_error("prove_not", "a negation", goal, "GOAL_NOT_NEGATION")
    (h,) = line.names
    _fresh(goal.context, sig, h)
    ctx = goal.context.with_hyp(h, goal.target.body)
    new = _focus(state, [Goal(ctx, T.FALSE)])
    return new, TraceNode(
        line, state, new, subgoals=1, new_hyps=((h, goal.target.body),)
    )


def _prove_and(state, goal, line, sig, db):
    if not isinstance(goal.target, T.And):
        raise _goal_shape_error("prove_and", "a conjunction", goal, "GOAL_NOT_CONJUNCTION")
    left = Goal(goal.context, goal.target.left)
    right = Goal(goal.context, goal.target.right)
    new = _focus(state, [left, right])
    return new, TraceNode(
        line,
        state,
        new,
        subgoals=2,
        branches=(
            BranchInfo("subgoal", target=goal.target.left),
            BranchInfo("subgoal", target=goal.target.right),
        ),
    )


def _prove_or(side: str):
    def h(state, goal, line, sig, db):
        kind = f"prove_or_{side}"
        if not isinstance(goal.target, T.Or):
            raise _goal_shape_error(kind, "a disjunction", goal, "GOAL_NOT_DISJUNCTION")
        target = goal.target.left if side == "left" else goal.target.right
        new = _focus(state, [Goal(goal.context, target)])
        return new, TraceNode(line, state, new, subgoals=1)

    return h


def _prove_exists(state, goal, line, sig, db):
    if not isinstance(goal.target, T.Exists):
        raise _goal_shape_error(
            "prove_exists", "existentially quantified", goal, "GOAL_NOT_EXISTENTIAL"
        )
    t = _resolve_term(line.term_args[0], goal.context, sig)
    _check_sort(t, goal.target.sort, goal.context, sig)
    body = T.subst_formula(goal.target.body, {goal.target.var: t})
    new = _focus(state, [Goal(goal.context, body)])
    return new, TraceNode(line, state, new, subgoals=1)


# --------------------------------------------------------------- use_* side


def _use_and(state, goal, line, sig, db):
    h, h1, h2 = line.names
    f = _hyp(goal.context, h)
    if not isinstance(f, T.And):
        raise _hyp_shape_error("use_and", "a conjunction", h, f, "HYP_NOT_CONJUNCTION")
    _fresh(goal.context, sig, h1)
    ctx = goal.context.with_hyp(h1, f.left)
    _fresh(ctx, sig, h2)
    ctx = ctx.with_hyp(h2, f.right)
    new = _focus(state, [Goal(ctx, goal.target)])
    return new, TraceNode(
        line, state, new, subgoals=1, new_hyps=((h1, f.left), (h2, f.right))
    )


def _use_or(state, goal, line, sig, db):
    (h,) = line.names
    f = _hyp(goal.context, h)
    if not isinstance(f, T.Or):
        raise _hyp_shape_error("use_or", "a disjunction", h, f, "HYP_NOT_DISJUNCTION")
    left = Goal(goal.context.replace_hyp(h, f.left), goal.target)
    right = Goal(goal.context.replace_hyp(h, f.right), goal.target)
    new = _focus(state, [left, right])
    return new, TraceNode(
        line,
        state,
        new,
        subgoals=2,
        branches=(
            BranchInfo("or", hyps=((h, f.left),)),
            BranchInfo("or", hyps=((h, f.right),)),
        ),
    )


def _use_exists(state, goal, line, sig, db):
    h, x, hx = line.names
    f = _hyp(goal.context, h)
    if not isinstance(f, T.Exists):
        raise _hyp_shape_error("use_exists", "existentially quantified", h, f, "HYP_NOT_EXISTENTIAL")
    _fresh(goal.context, sig, x)
    ctx = goal.context.with_var(x, f.sort)
    _fresh(ctx, sig, hx)
    inst = T.subst_formula(f.body, {f.var: T.Var(x)})
    ctx = ctx.with_hyp(hx, inst)
    new = _focus(state, [Goal(ctx, goal.target)])
    return new, TraceNode(
        line, state, new, subgoals=1, new_hyps=((hx, inst),), new_vars=((x, f.sort),)
    )


def _use_all(state, goal, line, sig, db):
    h, h2 = line.names
    f = _hyp(goal.context, h)
    if not isinstance(f, T.Forall):
        raise _hyp_shape_error("use_all", "universally quantified", h, f, "HYP_NOT_UNIVERSAL")
    t = _resolve_term(line.term_args[0], goal.context, sig)
    _check_sort(t, f.sort, goal.context, sig)
    _fresh(goal.context, sig, h2)
    inst = T.subst_formula(f.body, {f.var: t})
    ctx = goal.context.with_hyp(h2, inst)
    new = _focus(state, [Goal(ctx, goal.target)])
    return new, TraceNode(line, state, new, subgoals=1, new_hyps=((h2, inst),))


def _use_imp(state, goal, line, sig, db):
    h, ha, h2 = line.names
    f = _hyp(goal.context, h)
    if isinstance(f, T.Imp):
        premise, conclusion = f.left, f.right
    elif isinstance(f, T.Not):
        premise, conclusion = f.body, T.FALSE
    else:
        raise _hyp_shape_error(
            "use_imp", "an implication (or a negation)", h, f, "HYP_NOT_IMPLICATION"
        )
    fa = _hyp(goal.context, ha)
    if not T.alpha_eq(fa, premise):
        raise kernel_error(
            "HYP_MISMATCH",
            f"use_imp needs {ha} to state the premise of {h}: expected "
            f"{pretty(premise)}, but {ha} states {pretty(fa)}",
        )
    _fresh(goal.context, sig, h2)
    ctx = goal.context.with_hyp(h2, conclusion)
    new = _focus(state, [Goal(ctx, goal.target)])
    return new, TraceNode(
        line,
        state,
        new,
        subgoals=1,
        new_hyps=((h2, conclusion),),
        used_hyps=((h, f), (ha, fa)),
    )


def _use_false(state, goal, line, sig, db):
    (h,) = line.names
    f = _hyp(goal.context, h)
    if not isinstance(f, T.Falsity):
        raise _hyp_shape_error("use_false", "False", h, f, "HYP_NOT_FALSITY")
    new = _focus(state, [])
    return new, TraceNode(line, state, new, subgoals=0, used_hyps=((h, f),))


def _use_theorem(state, goal, line, sig, db):
    rec = db.lookup(line.theorem)
    if rec is None:
        raise kernel_error("UNKNOWN_THEOREM", f"there is no theorem named {line.theorem!r}")
    (h2,) = line.names
    _fresh(goal.context, sig, h2)
    if rec.schematic_fun is not None:
        inst = _instantiate_schema(rec, line, goal.context, sig)
    else:
        inst = _instantiate(rec.statement, line, goal.context, sig)
    ctx = goal.context.with_hyp(h2, inst)
    new = _focus(state, [Goal(ctx, goal.target)])
    return new, TraceNode(
        line,
        state,
        new,
        subgoals=1,
        new_hyps=((h2, inst),),
        theorem_used=line.theorem,
    )


def _instantiate(stmt: T.Formula, line, ctx: Context, sig: Signature) -> T.Formula:
    binders = []
    body = stmt
    while isinstance(body, T.Forall):
        binders.append((body.var, body.sort))
        body = body.body
    if len(line.term_args) != len(binders):
        raise kernel_error(
            "ARITY_MISMATCH",
            f"theorem {line.theorem} takes {len(binders)} instantiation "
            f"term(s), got {len(line.term_args)}",
        )
    sub: dict[str, T.Term] = {}
    for (v, s), raw in zip(binders, line.term_args):
        t = _resolve_term(raw, ctx, sig)
        _check_sort(t, s, ctx, sig)
        sub[v] = t
    return T.subst_formula(_strip_binders(stmt, len(binders)), sub)


def _strip_binders(f: T.Formula, k: int) -> T.Formula:
    for _ in range(k):
        assert isinstance(f, T.Forall)
        f = f.body
    return f


def _instantiate_schema(rec, line, ctx: Context, sig: Signature) -> T.Formula:
    if len(line.term_args) != 3:
        raise kernel_error(
            "ARITY_MISMATCH",
            f"theorem {rec.name} takes a unary function symbol and 2 terms",
        )
    fn_arg = line.term_args[0]
    if not isinstance(fn_arg, T.Var) or fn_arg.name not in sig.functions:
        raise kernel_error(
            "UNKNOWN_FUNCTION",
            f"{rec.name}'s first argument must name a unary function symbol",
        )
    fn = sig.functions[fn_arg.name]
    if len(fn.params) != 1:
        raise kernel_error(
            "ARITY_MISMATCH", f"{fn_arg.name!r} is not unary, so {rec.name} cannot use it"
        )
    x = _resolve_term(line.term_args[1], ctx, sig)
    y = _resolve_term(line.term_args[2], ctx, sig)
    _check_sort(x, fn.params[0][1], ctx, sig)
    _check_sort(y, fn.params[0][1], ctx, sig)
    return T.Imp(
        T.Eq(x, y), T.Eq(T.App(fn_arg.name, (x,)), T.App(fn_arg.name, (y,)))
    )


# ----------------------------------------------------------------- rewrite


def _equation_parts(name: str, f: T.Formula):
    """(pattern vars, conditions, equation) of a justification formula."""
    pvars: list[str] = []
    while isinstance(f, T.Forall):
        pvars.append(f.var)
        f = f.body
    conditions: list[T.Formula] = []
    while isinstance(f, T.Imp):
        conditions.append(f.left)
        f = f.right
    if not isinstance(f, T.Eq):
        raise kernel_error(
            "HYP_NOT_EQUATION",
            f"{name} is not usable for rewriting: after stripping quantifiers "
            f"and premises it is {shape_name(f)} ({pretty(f)}), not an equality",
        )
    return frozenset(pvars), tuple(conditions), f


def _rewrite(state, goal, line, sig, db):
    name = line.theorem
    hyp_formula = goal.context.hyp(name)
    if hyp_formula is not None:
        source, is_hyp = hyp_formula, True
    else:
        rec = db.lookup(name)
        if rec is None or rec.schematic_fun is not None:
            raise kernel_error(
                "UNKNOWN_THEOREM", f"{name!r} names neither a hypothesis nor a theorem"
            )
        source, is_hyp = rec.statement, False
    pvars, conditions, eq = _equation_parts(name, source)
    pattern, repl_template = (eq.rhs, eq.lhs) if line.reverse else (eq.lhs, eq.rhs)

    if line.in_hyp is not None:
        target_formula = _hyp(goal.context, line.in_hyp)
    else:
        target_formula = goal.target
    hit = rewrite_formula(target_formula, pattern, pvars, repl_template)
    if hit is None:
        raise kernel_error(
            "REWRITE_REDEX_NOT_FOUND",
            f"no occurrence of {pretty_term(pattern)} (from {name}) in "
            + (f"hypothesis {line.in_hyp}" if line.in_hyp else "the goal"),
        )
    undetermined = sorted(
        (T.term_vars(repl_template) | set().union(set(), *map(T.formula_vars, conditions)))
        & pvars - set(hit.binding)
    )
    if undetermined:
        raise kernel_error(
            "CANNOT_INFER_INSTANCE",
            f"matching {name} leaves {', '.join(undetermined)} undetermined",
        )
    conds = tuple(T.subst_formula(c, hit.binding) for c in conditions)
    instantiated_eq = T.Eq(
        T.subst_term(eq.lhs, hit.binding), T.subst_term(eq.rhs, hit.binding)
    )

    if line.in_hyp is not None:
        ctx = goal.context.replace_hyp(line.in_hyp, hit.formula)
        main = Goal(ctx, goal.target)
        before_f, after_f = target_formula, hit.formula
    else:
        main = Goal(goal.context, hit.formula)
        before_f, after_f = goal.target, hit.formula
    side_before = side_after = None
    if hit.slot in ("lhs", "rhs"):
        eq_before = target_formula.body if isinstance(target_formula, T.Not) else target_formula
        eq_after = hit.formula.body if isinstance(hit.formula, T.Not) else hit.formula
        side_before = getattr(eq_before, hit.slot)
        side_after = getattr(eq_after, hit.slot)
    info = RewriteInfo(
        justification=name,
        is_hypothesis=is_hyp,
        equation=instantiated_eq,
        reverse=line.reverse,
        target_hyp=line.in_hyp,
        slot=hit.slot,
        side_before=side_before,
        side_after=side_after,
        redex=hit.redex,
        replacement=hit.replacement,
        conditions=conds,
        formula_before=before_f,
        formula_after=after_f,
    )
    cond_goals = [Goal(goal.context, c) for c in conds]
    new = _focus(state, [main] + cond_goals)
    branches = ()
    if conds:
        branches = (
            BranchInfo("main"),
            *(BranchInfo("condition", condition=c) for c in conds),
        )
    return new, TraceNode(
        line, state, new, subgoals=1 + len(conds), rewrite=info, branches=branches
    )


def _unfold(state, goal, line, sig, db):
    fname = line.theorem
    if fname not in sig.functions and sig.projection_info(fname) is None:
        raise kernel_error("UNKNOWN_FUNCTION", f"there is no definition named {fname!r}")
    if line.in_hyp is not None:
        target_formula = _hyp(goal.context, line.in_hyp)
    else:
        target_formula = goal.target
    out = _unfold_formula(target_formula, fname, sig)
    if out is None:
        raise kernel_error(
            "REWRITE_REDEX_NOT_FOUND",
            f"nothing to unfold: no reducible occurrence of {fname!r} in "
            + (f"hypothesis {line.in_hyp}" if line.in_hyp else "the goal"),
        )
    new_formula, before_t, after_t, slot = out
    if line.in_hyp is not None:
        ctx = goal.context.replace_hyp(line.in_hyp, new_formula)
        main = Goal(ctx, goal.target)
    else:
        main = Goal(goal.context, new_formula)
    side_before = side_after = None
    if slot in ("lhs", "rhs"):
        eq_b = target_formula.body if isinstance(target_formula, T.Not) else target_formula
        eq_a = new_formula.body if isinstance(new_formula, T.Not) else new_formula
        side_before, side_after = getattr(eq_b, slot), getattr(eq_a, slot)
    info = RewriteInfo(
        justification=fname,
        is_hypothesis=False,
        equation=T.Eq(before_t, after_t),
        reverse=False,
        target_hyp=line.in_hyp,
        slot=slot,
        side_before=side_before,
        side_after=side_after,
        redex=before_t,
        replacement=after_t,
        formula_before=target_formula,
        formula_after=new_formula,
    )
    new = _focus(state, [main])
    return new, TraceNode(line, state, new, subgoals=1, rewrite=info)


def _unfold_term(t: T.Term, fname: str, sig: Signature):
    from .reduce import head_step

    if isinstance(t, T.App):
        if t.head == fname:
            stepped = head_step(t, sig)
            if stepped is not None:
                return stepped, t, stepped
        for i, a in enumerate(t.args):
            hit = _unfold_term(a, fname, sig)
            if hit is not None:
                new_a, before, after = hit
                return T.App(t.head, t.args[:i] + (new_a,) + t.args[i + 1 :]), before, after
    return None


def _unfold_formula(f: T.Formula, fname: str, sig: Signature, _top=True):
    def on_terms(terms, rebuild, slots=None):
        for i, t in enumerate(terms):
            hit = _unfold_term(t, fname, sig)
            if hit is not None:
                new_t, before, after = hit
                slot = slots[i] if slots and _top else "whole"
                return rebuild(i, new_t), before, after, slot
        return None

    if isinstance(f, T.Atom):
        return on_terms(
            f.args, lambda i, nt: T.Atom(f.pred, f.args[:i] + (nt,) + f.args[i + 1 :])
        )
    if isinstance(f, T.Eq):
        return on_terms(
            (f.lhs, f.rhs),
            lambda i, nt: T.Eq(nt, f.rhs) if i == 0 else T.Eq(f.lhs, nt),
            slots=("lhs", "rhs"),
        )
    if isinstance(f, T.Falsity):
        return None
    if isinstance(f, T.Not):
        out = _unfold_formula(f.body, fname, sig, _top=_top and isinstance(f.body, T.Eq))
        if out is not None:
            g, b, a, slot = out
            return T.Not(g), b, a, slot
        return None
    if isinstance(f, (T.And, T.Or, T.Imp)):
        out = _unfold_formula(f.left, fname, sig, _top=False)
        if out is not None:
            g, b, a, slot = out
            return type(f)(g, f.right), b, a, "whole"
        out = _unfold_formula(f.right, fname, sig, _top=False)
        if out is not None:
            g, b, a, slot = out
            return type(f)(f.left, g), b, a, "whole"
        return None
    if isinstance(f, (T.Forall, T.Exists)):
        out = _unfold_formula(f.body, fname, sig, _top=False)
        if out is not None:
            g, b, a, slot = out
            return type(f)(f.var, f.sort, g), b, a, "whole"
        return None
    raise TypeError(f)


# --------------------------------------------------------- case & induction


def _case(state, goal, line, sig, db):
    return _case_or_induction(state, goal, line, sig, induction=False)


def _induction(state, goal, line, sig, db):
    return _case_or_induction(state, goal, line, sig, induction=True)


def _case_or_induction(state, goal, line, sig, induction: bool):
    kind = "induction" if induction else "case"
    x = line.names[0]
    as_names = list(line.names[1:])
    sort = goal.context.var_sort(x)
    if sort is None:
        if goal.context.hyp(x) is not None:
            raise kernel_error(
                "NOT_A_VARIABLE", f"{x!r} is a hypothesis; {kind} works on variables"
            )
        raise kernel_error("UNKNOWN_VARIABLE", f"there is no variable named {x!r}")
    if not (isinstance(sort, T.SortName) and sort.name in sig.inductives):
        raise kernel_error(
            "NOT_INDUCTIVE_SORT",
            f"{kind} needs a variable of an inductive sort; {x} has sort {pretty_sort(sort)}",
        )
    if induction:
        for hname, hf in goal.context.hypotheses:
            if x in T.formula_vars(hf):
                raise kernel_error(
                    "VAR_USED_IN_HYPOTHESIS",
                    f"cannot do induction on {x}: hypothesis {hname} "
                    f"({pretty(hf)}) mentions it",
                )
    ctors = sig.inductives[sort.name]
    taken = goal.context.names() - {x}
    # how many fresh names each branch consumes: constructor arguments,
    # then (for induction) one induction hypothesis per recursive argument
    plan = []
    for cname, argsorts in ctors:
        n_ih = sum(1 for s in argsorts if induction and s == sort)
        plan.append((cname, argsorts, n_ih))
    needed = sum(len(a) + n for _, a, n in plan)
    if needed != len(as_names):
        raise kernel_error(
            "WRONG_NAME_COUNT",
            f"{kind} on {x} needs {needed} fresh name(s) after 'as' "
            f"({' ,'.join(c for c, _, _ in plan)}), got {len(as_names)}",
        )
    for n in as_names:
        if n in taken or as_names.count(n) > 1:
            raise kernel_error("NAME_COLLISION", f"the name {n!r} is already in use")
        if sig.is_symbol(n) or sig.is_sort(n):
            raise kernel_error(
                "NAME_COLLISION", f"{n!r} already names a declared symbol"
            )

    goals: list[Goal] = []
    branches: list[BranchInfo] = []
    cursor = 0
    pos = next(i for i, (v, _) in enumerate(goal.context.variables) if v == x)
    for cname, argsorts, n_ih in plan:
        argnames = as_names[cursor : cursor + len(argsorts)]
        ihnames = as_names[cursor + len(argsorts) : cursor + len(argsorts) + n_ih]
        cursor += len(argsorts) + n_ih
        pattern = T.App(cname, tuple(T.Var(a) for a in argnames))
        sub = {x: pattern}
        variables = (
            goal.context.variables[:pos]
            + tuple(zip(argnames, argsorts))
            + goal.context.variables[pos + 1 :]
        )
        if induction:
            hyps = goal.context.hypotheses
        else:
            hyps = tuple(
                (n, T.subst_formula(f, sub)) for n, f in goal.context.hypotheses
            )
        ihs = []
        rec_args = [a for a, s in zip(argnames, argsorts) if s == sort]
        for ih, arg in zip(ihnames, rec_args):
            ihs.append((ih, T.subst_formula(goal.target, {x: T.Var(arg)})))
        ctx = Context(variables, hyps + tuple(ihs))
        target = T.subst_formula(goal.target, sub)
        goals.append(Goal(ctx, target))
        branches.append(
            BranchInfo(
                "ind" if induction else "case",
                vars=tuple(zip(argnames, argsorts)),
                ihs=tuple(ihs),
                pattern=pattern,
                target=target,
            )
        )
    new = _focus(state, goals)
    return new, TraceNode(
        line, state, new, subgoals=len(goals), branches=tuple(branches)
    )


# ----------------------------------------------------------------- closers


def _assumption(state, goal, line, sig, db):
    for n, f in goal.context.hypotheses:
        if convertible(f, goal.target, sig):
            new = _focus(state, [])
            return new, TraceNode(line, state, new, subgoals=0, used_hyps=((n, f),))
    raise kernel_error(
        "ASSUMPTION_NOT_FOUND",
        f"no hypothesis is convertible to the goal {pretty(goal.target)}",
    )


def _reflexivity(state, goal, line, sig, db):
    if not isinstance(goal.target, T.Eq):
        raise _goal_shape_error("reflexivity", "an equality", goal, "GOAL_NOT_EQUALITY")
    l = normalize(goal.target.lhs, sig)
    r = normalize(goal.target.rhs, sig)
    if l != r:
        raise kernel_error(
            "REFLEXIVITY_FAILED",
            f"the two sides are not equal by computation: "
            f"{pretty_term(l)} vs {pretty_term(r)}",
        )
    new = _focus(state, [])
    return new, TraceNode(line, state, new, subgoals=0)


_HANDLERS = {
    "prove_imp": _prove_imp,
    "prove_all": _prove_all,
    "prove_not": _prove_not,
    "prove_and": _prove_and,
    "prove_or_left": _prove_or("left"),
    "prove_or_right": _prove_or("right"),
    "prove_exists": _prove_exists,
    "use_and": _use_and,
    "use_or": _use_or,
    "use_exists": _use_exists,
    "use_all": _use_all,
    "use_imp": _use_imp,
    "use_false": _use_false,
    "use_theorem": _use_theorem,
    "rewrite": _rewrite,
    "unfold": _unfold,
    "case": _case,
    "induction": _induction,
    "assumption": _assumption,
    "reflexivity": _reflexivity,
}
