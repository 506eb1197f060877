"""Terms, sorts, and formulas of the tactic language.

Everything here is an immutable value; structural sharing is safe and
equality is structural (alpha-equivalence for formulas is a separate
function because dataclass equality on binders is name-sensitive).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Union

# ---------------------------------------------------------------- terms

NAT = "ℕ"  # canonical name of the naturals sort
ADD = "⊕"  # canonical name of the addition function
SUB = "⊖"  # canonical name of truncated subtraction


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    """Application of a constructor or function symbol to argument terms.

    Which of the two it is is a property of the signature, not of the
    term; `head` with zero args covers constants such as `0` or `nil`.
    """

    head: str
    args: tuple["Term", ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.head
        return f"{self.head}({', '.join(map(str, self.args))})"


Term = Union[Var, App]

ZERO = App("0")


def num(n: int) -> Term:
    """The canonical constructor term for a numeral (Suc-iterated 0)."""
    if n < 0:
        raise ValueError("numerals are non-negative")
    t: Term = ZERO
    for _ in range(n):
        t = App("Suc", (t,))
    return t


def as_num(t: Term) -> int | None:
    """Inverse of `num`: the integer denoted by a closed Suc-tower, else None."""
    n = 0
    while isinstance(t, App) and t.head == "Suc" and len(t.args) == 1:
        n += 1
        t = t.args[0]
    if t == ZERO:
        return n
    return None


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    out: set[str] = set()
    for a in t.args:
        out |= term_vars(a)
    return out


def subst_term(t: Term, sub: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return sub.get(t.name, t)
    if not t.args:
        return t
    return App(t.head, tuple(subst_term(a, sub) for a in t.args))


def subterms(t: Term) -> Iterator[Term]:
    """Pre-order (leftmost-outermost) enumeration of all subterms."""
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def term_size(t: Term) -> int:
    return sum(1 for _ in subterms(t))


# ---------------------------------------------------------------- sorts


@dataclass(frozen=True)
class SortName:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class ArrowSort:
    arg: "Sort"
    res: "Sort"

    def __str__(self) -> str:
        return f"{self.arg} → {self.res}"


Sort = Union[SortName, ArrowSort]

NAT_SORT = SortName(NAT)
PROP = SortName("Prop")
TYPE = SortName("Type")


# -------------------------------------------------------------- formulas


@dataclass(frozen=True)
class Atom:
    """Applied predicate: a propositional constant (`A`) or a bound
    predicate variable applied to terms (`P a`)."""

    pred: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Eq:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Falsity:
    pass


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    sort: Sort
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    sort: Sort
    body: "Formula"


Formula = Union[Atom, Eq, Falsity, Not, And, Or, Imp, Forall, Exists]

FALSE = Falsity()


def neq(lhs: Term, rhs: Term) -> Formula:
    return Not(Eq(lhs, rhs))


def formula_vars(f: Formula) -> set[str]:
    """Free variable names of a formula (term variables and the heads of
    variable-headed atoms; binders remove their variable)."""
    if isinstance(f, Atom):
        out = {f.pred}
        for a in f.args:
            out |= term_vars(a)
        return out
    if isinstance(f, Eq):
        return term_vars(f.lhs) | term_vars(f.rhs)
    if isinstance(f, Falsity):
        return set()
    if isinstance(f, Not):
        return formula_vars(f.body)
    if isinstance(f, (And, Or, Imp)):
        return formula_vars(f.left) | formula_vars(f.right)
    if isinstance(f, (Forall, Exists)):
        inner = formula_vars(f.body) - {f.var}
        return inner | sort_vars(f.sort)
    raise TypeError(f)


def sort_vars(s: Sort) -> set[str]:
    if isinstance(s, SortName):
        return {s.name} if s.name not in BUILTIN_SORTS else set()
    return sort_vars(s.arg) | sort_vars(s.res)


BUILTIN_SORTS = {NAT, "Prop", "Type", "list", "tree", "season"}


def subst_formula(f: Formula, sub: Mapping[str, Term]) -> Formula:
    """Capture-avoiding substitution of terms for free variables.

    Binders shadow; substituting a term whose variables would be captured
    renames the binder (primes appended until fresh).
    """
    if isinstance(f, Atom):
        return Atom(f.pred, tuple(subst_term(a, sub) for a in f.args))
    if isinstance(f, Eq):
        return Eq(subst_term(f.lhs, sub), subst_term(f.rhs, sub))
    if isinstance(f, Falsity):
        return f
    if isinstance(f, Not):
        return Not(subst_formula(f.body, sub))
    if isinstance(f, (And, Or, Imp)):
        return type(f)(subst_formula(f.left, sub), subst_formula(f.right, sub))
    if isinstance(f, (Forall, Exists)):
        sub2 = {k: v for k, v in sub.items() if k != f.var}
        sort = _subst_sort(f.sort, sub)
        if not sub2:
            return type(f)(f.var, sort, f.body) if sort != f.sort else f
        incoming = set().union(*(term_vars(v) for v in sub2.values()))
        var, body = f.var, f.body
        if var in incoming:
            fresh = var
            taken = incoming | formula_vars(body)
            while fresh in taken:
                fresh += "'"
            body = subst_formula(body, {var: Var(fresh)})
            var = fresh
        return type(f)(var, sort, subst_formula(body, sub2))
    raise TypeError(f)


def _subst_sort(s: Sort, sub: Mapping[str, Term]) -> Sort:
    """Rename sort variables along a substitution (only variable-for-
    variable entries can touch a sort; compound terms never legally
    instantiate a type variable)."""
    if isinstance(s, SortName):
        v = sub.get(s.name)
        if isinstance(v, Var):
            return SortName(v.name)
        return s
    return ArrowSort(_subst_sort(s.arg, sub), _subst_sort(s.res, sub))


def alpha_eq(f: Formula, g: Formula, _ren: Mapping[str, str] | None = None) -> bool:
    """Equality of formulas up to consistent renaming of bound variables."""
    ren = _ren or {}
    if type(f) is not type(g):
        return False
    if isinstance(f, Atom):
        assert isinstance(g, Atom)
        head_f = ren.get(f.pred, f.pred)
        return head_f == g.pred and len(f.args) == len(g.args) and all(
            _alpha_eq_term(a, b, ren) for a, b in zip(f.args, g.args)
        )
    if isinstance(f, Eq):
        assert isinstance(g, Eq)
        return _alpha_eq_term(f.lhs, g.lhs, ren) and _alpha_eq_term(f.rhs, g.rhs, ren)
    if isinstance(f, Falsity):
        return True
    if isinstance(f, Not):
        assert isinstance(g, Not)
        return alpha_eq(f.body, g.body, ren)
    if isinstance(f, (And, Or, Imp)):
        assert isinstance(g, (And, Or, Imp))
        return alpha_eq(f.left, g.left, ren) and alpha_eq(f.right, g.right, ren)
    if isinstance(f, (Forall, Exists)):
        assert isinstance(g, (Forall, Exists))
        if _alpha_sort(f.sort, g.sort, ren) is False:
            return False
        return alpha_eq(f.body, g.body, {**ren, f.var: g.var})
    raise TypeError(f)


def _alpha_sort(s: Sort, t: Sort, ren: Mapping[str, str]) -> bool:
    if isinstance(s, SortName) and isinstance(t, SortName):
        return ren.get(s.name, s.name) == t.name
    if isinstance(s, ArrowSort) and isinstance(t, ArrowSort):
        return _alpha_sort(s.arg, t.arg, ren) and _alpha_sort(s.res, t.res, ren)
    return False


def _alpha_eq_term(a: Term, b: Term, ren: Mapping[str, str]) -> bool:
    if isinstance(a, Var):
        return isinstance(b, Var) and ren.get(a.name, a.name) == b.name
    if isinstance(b, Var):
        return False
    return a.head == b.head and len(a.args) == len(b.args) and all(
        _alpha_eq_term(x, y, ren) for x, y in zip(a.args, b.args)
    )
