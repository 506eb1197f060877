"""Definitional reduction and the first-order rewrite engine.

`normalize` computes the normal form under delta (plain definitions),
iota (fixpoint equations, when the decreasing argument is constructor
headed; record projections of a constructor), and the beta steps implied
by inlining a definition body.  Fixpoints are guard-checked, so the
reduction is total; stuck terms are returned as they are.

`rewrite_formula` replaces exactly the leftmost-outermost occurrence of
a pattern instance (pre-order over the formula, then over each term),
never rewriting an occurrence that captures a locally bound variable.
"""
from __future__ import annotations

from dataclasses import dataclass

from .. import terms as T
from .signature import Signature


# ---------------------------------------------------------------- normalize


def head_step(t: T.App, sig: Signature) -> T.Term | None:
    """One delta/iota step at the root, or None if the root is stuck."""
    fn = sig.functions.get(t.head)
    if fn is not None and len(t.args) == len(fn.params):
        if fn.body is not None:
            return T.subst_term(fn.body, {p: a for (p, _), a in zip(fn.params, t.args)})
        dec = t.args[fn.dec_index]
        if isinstance(dec, T.App):
            for ctor, argnames, rhs in fn.equations:
                if dec.head == ctor and len(dec.args) == len(argnames):
                    sub = {p: a for (p, _), a in zip(fn.params, t.args)}
                    sub.update(zip(argnames, dec.args))
                    return T.subst_term(rhs, sub)
        return None
    proj = sig.projection_info(t.head)
    if proj is not None and len(t.args) == 1:
        ty, index, _ = proj
        arg = t.args[0]
        ctor = sig.records[ty][0]
        if isinstance(arg, T.App) and arg.head == ctor:
            return arg.args[index]
    return None


def normalize(t: T.Term, sig: Signature) -> T.Term:
    """Normal form of a term; idempotent."""
    if isinstance(t, T.Var):
        return t
    args = tuple(normalize(a, sig) for a in t.args)
    t = T.App(t.head, args)
    stepped = head_step(t, sig)
    if stepped is None:
        return t
    return normalize(stepped, sig)


def normalize_formula(f: T.Formula, sig: Signature) -> T.Formula:
    if isinstance(f, T.Atom):
        return T.Atom(f.pred, tuple(normalize(a, sig) for a in f.args))
    if isinstance(f, T.Eq):
        return T.Eq(normalize(f.lhs, sig), normalize(f.rhs, sig))
    if isinstance(f, T.Falsity):
        return f
    if isinstance(f, T.Not):
        return T.Not(normalize_formula(f.body, sig))
    if isinstance(f, (T.And, T.Or, T.Imp)):
        return type(f)(normalize_formula(f.left, sig), normalize_formula(f.right, sig))
    if isinstance(f, (T.Forall, T.Exists)):
        return type(f)(f.var, f.sort, normalize_formula(f.body, sig))
    raise TypeError(f)


def convertible(f: T.Formula, g: T.Formula, sig: Signature) -> bool:
    """Syntactic equality of normal forms, up to alpha."""
    return T.alpha_eq(normalize_formula(f, sig), normalize_formula(g, sig))


# ---------------------------------------------------------------- matching


def match_term(
    pattern: T.Term, t: T.Term, pvars: frozenset[str], binding: dict[str, T.Term]
) -> dict[str, T.Term] | None:
    """Non-linear first-order matching; extends `binding` or fails."""
    if isinstance(pattern, T.Var):
        if pattern.name in pvars:
            bound = binding.get(pattern.name)
            if bound is None:
                out = dict(binding)
                out[pattern.name] = t
                return out
            return binding if bound == t else None
        return binding if t == pattern else None
    if not isinstance(t, T.App) or t.head != pattern.head or len(t.args) != len(pattern.args):
        return None
    for p, a in zip(pattern.args, t.args):
        binding = match_term(p, a, pvars, binding)
        if binding is None:
            return None
    return binding


# ---------------------------------------------------------------- rewriting


@dataclass(frozen=True)
class RewriteHit:
    formula: T.Formula  # the whole formula after the replacement
    redex: T.Term  # the instance that was replaced
    replacement: T.Term
    binding: dict[str, T.Term]
    slot: str  # "lhs" | "rhs" | "whole": where in an equality the redex sat


def _rewrite_term_once(
    t: T.Term,
    pattern: T.Term,
    pvars: frozenset[str],
    replacement: T.Term,
    shadowed: frozenset[str],
) -> tuple[T.Term, T.Term, T.Term, dict] | None:
    """Leftmost-outermost single replacement inside one term."""
    binding = match_term(pattern, t, pvars, {})
    if binding is not None:
        new = T.subst_term(replacement, binding)
        # skip occurrences involving locally bound variables, in the
        # redex (its variables are not the equation's) or in what would
        # be inserted (the binder would capture it)
        if not ((T.term_vars(t) | T.term_vars(new)) & shadowed):
            return new, t, new, binding
    if isinstance(t, T.App):
        for i, a in enumerate(t.args):
            hit = _rewrite_term_once(a, pattern, pvars, replacement, shadowed)
            if hit is not None:
                new_a, redex, new_sub, binding = hit
                args = t.args[:i] + (new_a,) + t.args[i + 1 :]
                return T.App(t.head, args), redex, new_sub, binding
    return None


def rewrite_formula(
    f: T.Formula,
    pattern: T.Term,
    pvars: frozenset[str],
    replacement: T.Term,
    _shadowed: frozenset[str] = frozenset(),
    _top: bool = True,
) -> RewriteHit | None:
    """Replace the leftmost-outermost pattern occurrence in a formula."""
    if isinstance(f, T.Atom):
        for i, a in enumerate(f.args):
            hit = _rewrite_term_once(a, pattern, pvars, replacement, _shadowed)
            if hit is not None:
                new_a, redex, new_sub, binding = hit
                args = f.args[:i] + (new_a,) + f.args[i + 1 :]
                return RewriteHit(T.Atom(f.pred, args), redex, new_sub, binding, "whole")
        return None
    if isinstance(f, T.Eq):
        hit = _rewrite_term_once(f.lhs, pattern, pvars, replacement, _shadowed)
        if hit is not None:
            new_t, redex, new_sub, binding = hit
            slot = "lhs" if _top else "whole"
            return RewriteHit(T.Eq(new_t, f.rhs), redex, new_sub, binding, slot)
        hit = _rewrite_term_once(f.rhs, pattern, pvars, replacement, _shadowed)
        if hit is not None:
            new_t, redex, new_sub, binding = hit
            slot = "rhs" if _top else "whole"
            return RewriteHit(T.Eq(f.lhs, new_t), redex, new_sub, binding, slot)
        return None
    if isinstance(f, T.Falsity):
        return None
    if isinstance(f, T.Not):
        # a top-level negated equality still reports lhs/rhs (it displays
        # as a disequality, and chains track its sides)
        inner = rewrite_formula(
            f.body, pattern, pvars, replacement, _shadowed, _top=_top and isinstance(f.body, T.Eq)
        )
        if inner is not None:
            return RewriteHit(T.Not(inner.formula), inner.redex, inner.replacement, inner.binding, inner.slot)
        return None
    if isinstance(f, (T.And, T.Or, T.Imp)):
        left = rewrite_formula(f.left, pattern, pvars, replacement, _shadowed, _top=False)
        if left is not None:
            return RewriteHit(
                type(f)(left.formula, f.right), left.redex, left.replacement, left.binding, "whole"
            )
        right = rewrite_formula(f.right, pattern, pvars, replacement, _shadowed, _top=False)
        if right is not None:
            return RewriteHit(
                type(f)(f.left, right.formula), right.redex, right.replacement, right.binding, "whole"
            )
        return None
    if isinstance(f, (T.Forall, T.Exists)):
        inner = rewrite_formula(
            f.body, pattern, pvars, replacement, _shadowed | {f.var}, _top=False
        )
        if inner is not None:
            return RewriteHit(
                type(f)(f.var, f.sort, inner.formula),
                inner.redex,
                inner.replacement,
                inner.binding,
                "whole",
            )
        return None
    raise TypeError(f)
