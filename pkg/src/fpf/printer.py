"""Deterministic pretty-printer for terms, sorts, and formulas.

Minimal parentheses under the fixed precedence order (negation binds
tightest, then conjunction, disjunction, implication; quantifier bodies
extend maximally to the right).  Closed Suc-towers print as decimal
numerals, `¬(a = b)` prints as `a ≠ b`, so printing followed by parsing
yields an alpha-equivalent formula.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import terms as T


@dataclass(frozen=True)
class NotationTable:
    """Built-in notation: which function symbols print infix."""

    infix: frozenset[str] = frozenset({T.ADD, T.SUB})


NOTATION = NotationTable()

# formula precedence levels; higher binds tighter
_QUANT, _IMP, _OR, _AND, _NOT, _ATOM = 0, 1, 2, 3, 4, 5


def pretty_term(t: T.Term, notation: NotationTable = NOTATION) -> str:
    return _term(t, 0, notation)


def _term(t: T.Term, prec: int, nt: NotationTable) -> str:
    # term precedence: 0 = top, 1 = infix ⊕/⊖ operand, 2 = application argument
    if isinstance(t, T.Var):
        return t.name
    n = T.as_num(t)
    if n is not None:
        return str(n)
    if t.head in nt.infix and len(t.args) == 2:
        # non-associative: operands themselves may not be bare infix terms
        s = f"{_term(t.args[0], 1, nt)} {t.head} {_term(t.args[1], 1, nt)}"
        return f"({s})" if prec >= 1 else s
    if not t.args:
        return t.head
    parts = [t.head] + [_term(a, 2, nt) for a in t.args]
    s = " ".join(parts)
    return f"({s})" if prec >= 2 else s


def pretty_sort(s: T.Sort) -> str:
    if isinstance(s, T.SortName):
        return s.name
    arg = pretty_sort(s.arg)
    if isinstance(s.arg, T.ArrowSort):
        arg = f"({arg})"
    return f"{arg} → {pretty_sort(s.res)}"


def pretty(f: T.Formula, notation: NotationTable = NOTATION) -> str:
    """Render a formula with minimal parentheses."""
    return _formula(f, _QUANT, notation)


def _formula(f: T.Formula, prec: int, nt: NotationTable) -> str:
    if isinstance(f, T.Atom):
        if not f.args:
            return f.pred
        return " ".join([f.pred] + [_term(a, 2, nt) for a in f.args])
    if isinstance(f, T.Eq):
        return f"{_term(f.lhs, 0, nt)} = {_term(f.rhs, 0, nt)}"
    if isinstance(f, T.Falsity):
        return "False"
    if isinstance(f, T.Not):
        if isinstance(f.body, T.Eq):
            e = f.body
            return f"{_term(e.lhs, 0, nt)} ≠ {_term(e.rhs, 0, nt)}"
        return f"¬{_formula(f.body, _NOT, nt)}"
    if isinstance(f, T.And):
        s = f"{_formula(f.left, _AND, nt)} ∧ {_formula(f.right, _AND - 1, nt)}"
        return f"({s})" if prec >= _AND else s
    if isinstance(f, T.Or):
        s = f"{_formula(f.left, _OR, nt)} ∨ {_formula(f.right, _OR - 1, nt)}"
        return f"({s})" if prec >= _OR else s
    if isinstance(f, T.Imp):
        s = f"{_formula(f.left, _IMP, nt)} → {_formula(f.right, _IMP - 1, nt)}"
        return f"({s})" if prec >= _IMP else s
    if isinstance(f, (T.Forall, T.Exists)):
        q = "∀" if isinstance(f, T.Forall) else "∃"
        s = f"{q} {f.var} : {pretty_sort(f.sort)}, {_formula(f.body, _QUANT, nt)}"
        return f"({s})" if prec > _QUANT else s
    raise TypeError(f)
