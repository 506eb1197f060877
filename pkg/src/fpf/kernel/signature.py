"""Signature: inductive types, records, and function symbols.

Functions are either plain definitions (a body over parameters) or
fixpoints given as one defining equation per constructor of the declared
decreasing argument.  Every fixpoint passes the structural guard check
on construction, which is what makes `normalize` total.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .. import terms as T
from ..errors import ScopeError, Span
from ..parser import (
    DefinitionDecl,
    FixpointDecl,
    InductiveDecl,
    RecordDecl,
)


@dataclass(frozen=True)
class FunctionDef:
    name: str
    params: tuple[tuple[str, T.Sort], ...]
    result: T.Sort
    body: T.Term | None = None  # plain definition
    dec_index: int | None = None  # fixpoint
    equations: tuple[tuple[str, tuple[str, ...], T.Term], ...] = ()

    @property
    def is_fixpoint(self) -> bool:
        return self.dec_index is not None


@dataclass(frozen=True)
class Signature:
    inductives: dict[str, tuple[tuple[str, tuple[T.Sort, ...]], ...]] = field(
        default_factory=dict
    )
    records: dict[str, tuple[str, tuple[tuple[str, T.Sort], ...]]] = field(
        default_factory=dict
    )
    functions: dict[str, FunctionDef] = field(default_factory=dict)

    # --- derived lookups (computed lazily, object treated as immutable)

    def ctor_info(self, name: str) -> tuple[str, tuple[T.Sort, ...]] | None:
        """(inductive type, argument sorts) for a constructor name."""
        for ty, ctors in self.inductives.items():
            for cname, sorts in ctors:
                if cname == name:
                    return ty, sorts
        for ty, (cname, fields) in self.records.items():
            if cname == name:
                return ty, tuple(s for _, s in fields)
        return None

    def projection_info(self, name: str) -> tuple[str, int, T.Sort] | None:
        for ty, (_, fields) in self.records.items():
            for i, (fname, sort) in enumerate(fields):
                if fname == name:
                    return ty, i, sort
        return None

    def is_symbol(self, name: str) -> bool:
        return (
            name in self.functions
            or self.ctor_info(name) is not None
            or self.projection_info(name) is not None
        )

    def is_sort(self, name: str) -> bool:
        return name in self.inductives or name in self.records

    def arity(self, name: str) -> int:
        if name in self.functions:
            return len(self.functions[name].params)
        info = self.ctor_info(name)
        if info is not None:
            return len(info[1])
        if self.projection_info(name) is not None:
            return 1
        raise KeyError(name)

    def all_names(self) -> list[str]:
        names = list(self.inductives) + list(self.records) + list(self.functions)
        for ctors in self.inductives.values():
            names += [c for c, _ in ctors]
        for cname, fields in self.records.values():
            names.append(cname)
            names += [f for f, _ in fields]
        return names

    def is_constructor_headed(self, t: T.Term) -> bool:
        return isinstance(t, T.App) and self.ctor_info(t.head) is not None


EMPTY_SIGNATURE = Signature()


def extend_signature(sig: Signature, decl) -> Signature:
    """A new signature with `decl` added (validated)."""
    if isinstance(decl, InductiveDecl):
        return replace(sig, inductives={**sig.inductives, decl.name: decl.ctors})
    if isinstance(decl, RecordDecl):
        return replace(sig, records={**sig.records, decl.name: (decl.ctor, decl.fields)})
    if isinstance(decl, DefinitionDecl):
        fn = FunctionDef(
            decl.name,
            decl.params,
            result=_infer_result(sig, decl.params, decl.body, decl.span),
            body=decl.body,
        )
        _check_body_refs(sig, decl.name, decl.body, {p for p, _ in decl.params}, decl.span)
        return replace(sig, functions={**sig.functions, decl.name: fn})
    if isinstance(decl, FixpointDecl):
        guard_check(decl, sig)
        dec_sort = decl.params[decl.dec_index][1]

        def with_result(res: T.Sort) -> Signature:
            fn = FunctionDef(
                decl.name,
                decl.params,
                result=res,
                dec_index=decl.dec_index,
                equations=decl.equations,
            )
            return replace(sig, functions={**sig.functions, decl.name: fn})

        def eq_env(ctor, argnames):
            arg_sorts = _ctor_arg_sorts(sig, dec_sort, ctor, decl.span)
            return dict(decl.params) | dict(zip(argnames, arg_sorts))

        # result sort: first equation whose right-hand side infers without
        # needing the (not yet known) result of a recursive call
        result: T.Sort | None = None
        provisional = with_result(T.SortName("?"))
        for ctor, argnames, rhs in decl.equations:
            try:
                got = infer_sort(provisional, eq_env(ctor, argnames), rhs, decl.span)
            except ScopeError:
                continue
            if got != T.SortName("?"):
                result = got
                break
        if result is None:
            raise ScopeError(
                f"cannot infer the result sort of {decl.name!r}", decl.span
            )
        final = with_result(result)
        for ctor, argnames, rhs in decl.equations:
            got = infer_sort(final, eq_env(ctor, argnames), rhs, decl.span)
            if got != result:
                raise ScopeError(
                    f"equations of {decl.name!r} disagree on the result sort", decl.span
                )
        return final
    raise TypeError(decl)


def _ctor_arg_sorts(sig: Signature, sort: T.Sort, ctor: str, span: Span):
    if not isinstance(sort, T.SortName) or sort.name not in sig.inductives:
        raise ScopeError(f"{sort} is not an inductive sort", span)
    for cname, sorts in sig.inductives[sort.name]:
        if cname == ctor:
            return sorts
    raise ScopeError(f"{ctor!r} is not a constructor of {sort.name}", span)


def guard_check(fix: FixpointDecl, sig: Signature) -> None:
    """Structural-recursion check: in every defining equation, each
    recursive call's decreasing argument must be one of the pattern's
    argument variables.  Raises NON_STRUCTURAL_RECURSION otherwise."""
    from ..errors import kernel_error
    from ..printer import pretty_term

    dec_name, dec_sort = fix.params[fix.dec_index]
    if not isinstance(dec_sort, T.SortName) or dec_sort.name not in sig.inductives:
        raise ScopeError(f"decreasing argument must have an inductive sort", fix.span)
    ctors = dict(sig.inductives[dec_sort.name])
    seen: set[str] = set()
    for ctor, argnames, rhs in fix.equations:
        if ctor not in ctors:
            raise ScopeError(f"{ctor!r} is not a constructor of {dec_sort.name}", fix.span)
        if ctor in seen:
            raise ScopeError(f"duplicate equation for constructor {ctor!r}", fix.span)
        seen.add(ctor)
        if len(argnames) != len(ctors[ctor]):
            raise ScopeError(
                f"constructor {ctor!r} takes {len(ctors[ctor])} argument(s)", fix.span
            )
        # arguments of the pattern that actually descend (same sort)
        descending = {
            a for a, s in zip(argnames, ctors[ctor]) if s == dec_sort
        }
        for call in _calls_of(rhs, fix.name):
            if len(call.args) != len(fix.params):
                raise ScopeError(
                    f"recursive call to {fix.name!r} with wrong arity", fix.span
                )
            arg = call.args[fix.dec_index]
            if not (isinstance(arg, T.Var) and arg.name in descending):
                raise kernel_error(
                    "NON_STRUCTURAL_RECURSION",
                    f"in the equation for {ctor!r}, the recursive call "
                    f"{pretty_term(call)} does not descend on a direct "
                    f"subterm of the matched constructor",
                    fix.span,
                )
    missing = set(ctors) - seen
    if missing:
        raise ScopeError(
            f"missing equation(s) for constructor(s): {', '.join(sorted(missing))}",
            fix.span,
        )


def _calls_of(t: T.Term, name: str):
    for s in T.subterms(t):
        if isinstance(s, T.App) and s.head == name:
            yield s


def _check_body_refs(sig: Signature, own: str, body: T.Term, bound: set[str], span: Span):
    for s in T.subterms(body):
        if isinstance(s, T.App):
            if s.head == own:
                raise ScopeError(
                    f"plain definition {own!r} may not be recursive (use Fixpoint)", span
                )
            if not sig.is_symbol(s.head) and s.head not in bound:
                raise ScopeError(f"unresolved name {s.head!r}", span)
        elif isinstance(s, T.Var):
            if s.name not in bound and not sig.is_symbol(s.name):
                raise ScopeError(f"unbound variable {s.name!r}", span)


def _infer_result(
    sig: Signature, bound: tuple[tuple[str, T.Sort], ...], t: T.Term, span: Span
) -> T.Sort:
    env = dict(bound)
    return infer_sort(sig, env, t, span)


def infer_sort(sig: Signature, env: dict[str, T.Sort], t: T.Term, span: Span) -> T.Sort:
    """Sort of a term whose variables are bound in `env`."""
    if isinstance(t, T.Var):
        if t.name in env:
            return env[t.name]
        if sig.is_symbol(t.name) and _nullary(sig, t.name):
            return infer_sort(sig, env, T.App(t.name), span)
        raise ScopeError(f"unbound variable {t.name!r}", span)
    info = sig.ctor_info(t.head)
    if info is not None:
        ty, sorts = info
        if len(t.args) != len(sorts):
            raise ScopeError(f"{t.head!r} expects {len(sorts)} argument(s)", span)
        for a, s in zip(t.args, sorts):
            got = infer_sort(sig, env, a, span)
            if got != s:
                raise ScopeError(
                    f"argument of {t.head!r} has sort {got}, expected {s}", span
                )
        return T.SortName(ty)
    if t.head in sig.functions:
        fn = sig.functions[t.head]
        if len(t.args) != len(fn.params):
            raise ScopeError(f"{t.head!r} expects {len(fn.params)} argument(s)", span)
        for a, (_, s) in zip(t.args, fn.params):
            got = infer_sort(sig, env, a, span)
            if got != s:
                raise ScopeError(
                    f"argument of {t.head!r} has sort {got}, expected {s}", span
                )
        return fn.result
    proj = sig.projection_info(t.head)
    if proj is not None:
        ty, _, sort = proj
        if len(t.args) != 1:
            raise ScopeError(f"projection {t.head!r} expects 1 argument", span)
        got = infer_sort(sig, env, t.args[0], span)
        if got != T.SortName(ty):
            raise ScopeError(f"projection {t.head!r} applies to {ty}", span)
        return sort
    raise ScopeError(f"unresolved name {t.head!r}", span)


def _nullary(sig: Signature, name: str) -> bool:
    try:
        return sig.arity(name) == 0
    except KeyError:
        return False
