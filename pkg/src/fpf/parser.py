"""Recursive-descent parser for `.fpf` scripts.

Produces a resolved `ProofScript`: declarations in order, each theorem
with its tactic lines.  Formulas in declarations are scope-checked
against the signature built so far (stdlib plus earlier declarations);
terms appearing as tactic arguments are only desugared here and are
resolved later by the kernel against the goal context.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from . import terms as T
from .errors import ParseError, ScopeError, Span
from .lexer import Token, tokenize

# ------------------------------------------------------------ declarations


@dataclass(frozen=True)
class TacticLine:
    kind: str
    span: Span
    bullet: str | None = None
    names: tuple[str, ...] = ()
    term_args: tuple[T.Term, ...] = ()
    theorem: str | None = None
    reverse: bool = False
    in_hyp: str | None = None
    text: str = ""


@dataclass(frozen=True)
class InductiveDecl:
    name: str
    ctors: tuple[tuple[str, tuple[T.Sort, ...]], ...]
    span: Span


@dataclass(frozen=True)
class RecordDecl:
    name: str
    ctor: str
    fields: tuple[tuple[str, T.Sort], ...]
    span: Span


@dataclass(frozen=True)
class DefinitionDecl:
    name: str
    params: tuple[tuple[str, T.Sort], ...]
    body: T.Term
    span: Span


@dataclass(frozen=True)
class FixpointDecl:
    name: str
    params: tuple[tuple[str, T.Sort], ...]
    dec_index: int
    # one defining equation per constructor: (ctor, pattern arg names, rhs)
    equations: tuple[tuple[str, tuple[str, ...], T.Term], ...]
    span: Span


@dataclass(frozen=True)
class AxiomDecl:
    name: str
    statement: T.Formula
    span: Span


@dataclass(frozen=True)
class TheoremDecl:
    name: str
    statement: T.Formula
    lines: tuple[TacticLine, ...]
    span: Span
    qed_span: Span = Span(1, 1)


@dataclass(frozen=True)
class ImportDecl:
    module: str
    span: Span


Declaration = (
    InductiveDecl
    | RecordDecl
    | DefinitionDecl
    | FixpointDecl
    | AxiomDecl
    | TheoremDecl
    | ImportDecl
)


@dataclass(frozen=True)
class ProofScript:
    declarations: tuple[Declaration, ...]
    imports: tuple[str, ...]
    source: str


_DECL_KEYWORDS = {"Import", "Inductive", "Record", "Definition", "Fixpoint", "Axiom", "Theorem"}

# kind -> number of plain name arguments, for the simple tactics
_NAME_TACTICS = {
    "prove_imp": 1,
    "prove_all": 1,
    "prove_not": 1,
    "use_or": 1,
    "use_false": 1,
    "use_and": 3,
    "use_exists": 3,
    "use_imp": 3,
}
_NULLARY_TACTICS = {"prove_and", "prove_or_left", "prove_or_right", "assumption", "reflexivity"}

TACTIC_KINDS = (
    "prove_imp",
    "prove_all",
    "prove_not",
    "prove_and",
    "prove_or_left",
    "prove_or_right",
    "prove_exists",
    "use_and",
    "use_or",
    "use_exists",
    "use_all",
    "use_imp",
    "use_false",
    "use_theorem",
    "rewrite",
    "unfold",
    "case",
    "induction",
    "assumption",
    "reflexivity",
    "bullet",
)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.pos = 0
        self.lines = text.splitlines()

    # ---------------- token helpers

    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def at(self, kind: str, value: str | None = None) -> bool:
        t = self.peek()
        return t.kind == kind and (value is None or t.value == value)

    def expect(self, kind: str, what: str | None = None) -> Token:
        t = self.peek()
        if t.kind != kind:
            expected = what or kind
            raise ParseError(
                f"expected {expected}, found {t.value!r}", t.span, expected=(expected,)
            )
        return self.next()

    def fail(self, message: str, expected: tuple[str, ...] = ()) -> ParseError:
        return ParseError(message, self.peek().span, expected=expected)

    # ---------------- entry point

    def script(self) -> ProofScript:
        decls: list[Declaration] = []
        imports: list[str] = []
        while not self.at("EOF"):
            t = self.peek()
            if t.kind != "IDENT" or t.value not in _DECL_KEYWORDS:
                raise self.fail(
                    f"expected a declaration keyword, found {t.value!r}",
                    expected=tuple(sorted(_DECL_KEYWORDS)),
                )
            d = getattr(self, "_decl_" + t.value.lower())()
            decls.append(d)
            if isinstance(d, ImportDecl):
                imports.append(d.module)
        return ProofScript(tuple(decls), tuple(imports), self.text)

    # ---------------- declarations

    def _decl_import(self) -> ImportDecl:
        kw = self.next()
        name = self.expect("IDENT", "module name")
        self.expect("DOT", "'.'")
        return ImportDecl(name.value, kw.span)

    def _decl_inductive(self) -> InductiveDecl:
        kw = self.next()
        name = self.expect("IDENT", "type name")
        self.expect("COLONEQ", "':='")
        ctors = [self._ctor_decl()]
        while self.at("PIPE"):
            self.next()
            ctors.append(self._ctor_decl())
        self.expect("DOT", "'.'")
        return InductiveDecl(name.value, tuple(ctors), kw.span)

    def _ctor_decl(self) -> tuple[str, tuple[T.Sort, ...]]:
        t = self.peek()
        if t.kind == "NUM" and t.value == "0":
            self.next()
            cname = "0"
        else:
            cname = self.expect("IDENT", "constructor name").value
        sorts: list[T.Sort] = []
        while self.at("IDENT") or self.at("LPAREN"):
            sorts.append(self._sort_atom())
        return cname, tuple(sorts)

    def _decl_record(self) -> RecordDecl:
        kw = self.next()
        name = self.expect("IDENT", "record name")
        self.expect("COLONEQ", "':='")
        ctor = self.expect("IDENT", "constructor name")
        self.expect("LBRACE", "'{'")
        fields = []
        while True:
            fname = self.expect("IDENT", "field name")
            self.expect("COLON", "':'")
            fields.append((fname.value, self._sort()))
            if self.at("COMMA"):
                self.next()
                continue
            break
        self.expect("RBRACE", "'}'")
        self.expect("DOT", "'.'")
        return RecordDecl(name.value, ctor.value, tuple(fields), kw.span)

    def _params(self) -> tuple[tuple[str, T.Sort], ...]:
        params = []
        while self.at("LPAREN"):
            self.next()
            pname = self.expect("IDENT", "parameter name")
            self.expect("COLON", "':'")
            params.append((pname.value, self._sort()))
            self.expect("RPAREN", "')'")
        return tuple(params)

    def _fname(self) -> str:
        if self.at("LPAREN"):
            # parenthesized operator name: (⊕)
            save = self.pos
            self.next()
            t = self.peek()
            if t.kind in ("ADD", "SUB"):
                self.next()
                self.expect("RPAREN", "')'")
                return T.ADD if t.kind == "ADD" else T.SUB
            self.pos = save
        return self.expect("IDENT", "function name").value

    def _decl_definition(self) -> DefinitionDecl:
        kw = self.next()
        name = self._fname()
        params = self._params()
        self.expect("COLONEQ", "':='")
        body = self._term()
        self.expect("DOT", "'.'")
        return DefinitionDecl(name, params, body, kw.span)

    def _decl_fixpoint(self) -> FixpointDecl:
        kw = self.next()
        name = self._fname()
        params = self._params()
        on = self.expect("IDENT", "'on'")
        if on.value != "on":
            raise ParseError("expected 'on'", on.span, expected=("on",))
        dec = self.expect("IDENT", "decreasing parameter")
        dec_index = next((i for i, (p, _) in enumerate(params) if p == dec.value), None)
        if dec_index is None:
            raise ParseError(f"'{dec.value}' is not a parameter", dec.span)
        self.expect("COLONEQ", "':='")
        self.expect("LBRACE", "'{'")
        eqs = [self._fix_equation()]
        while self.at("PIPE"):
            self.next()
            eqs.append(self._fix_equation())
        self.expect("RBRACE", "'}'")
        self.expect("DOT", "'.'")
        return FixpointDecl(name, params, dec_index, tuple(eqs), kw.span)

    def _fix_equation(self) -> tuple[str, tuple[str, ...], T.Term]:
        t = self.peek()
        if t.kind == "NUM" and t.value == "0":
            self.next()
            cname = "0"
        else:
            cname = self.expect("IDENT", "constructor name").value
        argnames = []
        while self.at("IDENT"):
            argnames.append(self.next().value)
        self.expect("DARROW", "'=>'")
        rhs = self._term()
        return cname, tuple(argnames), rhs

    def _decl_axiom(self) -> AxiomDecl:
        kw = self.next()
        name = self.expect("IDENT", "axiom name")
        self.expect("COLON", "':'")
        stmt = self._formula()
        self.expect("DOT", "'.'")
        return AxiomDecl(name.value, stmt, kw.span)

    def _decl_theorem(self) -> TheoremDecl:
        kw = self.next()
        name = self.expect("IDENT", "theorem name")
        self.expect("COLON", "':'")
        stmt = self._formula()
        self.expect("DOT", "'.'")
        if self.at("IDENT", "Proof"):
            self.next()
            self.expect("DOT", "'.'")
        lines: list[TacticLine] = []
        while True:
            if self.at("IDENT", "Qed"):
                qed = self.next()
                self.expect("DOT", "'.'")
                qed_span = qed.span
                break
            if self.at("EOF"):
                raise self.fail("expected a tactic or 'Qed'", expected=("Qed", "tactic"))
            lines.append(self._tactic_line())
        return TheoremDecl(name.value, stmt, tuple(lines), kw.span, qed_span)

    # ---------------- tactic lines

    def _tactic_line(self) -> TacticLine:
        bullet = None
        start = self.peek()
        if self.at("BULLET"):
            bullet = self.next().value
            # a bare bullet is a line of its own and takes no dot
            if not self.at("IDENT") or self.peek().value in ("Qed", "Proof"):
                return TacticLine(
                    "bullet", start.span, bullet=bullet, text=self._line_text(start.span)
                )
        kw = self.expect("IDENT", "tactic name")
        kind = kw.value
        if kind not in TACTIC_KINDS or kind == "bullet":
            raise ParseError(f"unknown tactic {kind!r}", kw.span, expected=TACTIC_KINDS[:-1])
        line = self._tactic_args(kind, bullet, start.span)
        self.expect("DOT", "'.'")
        return line

    def _tactic_args(self, kind: str, bullet: str | None, span: Span) -> TacticLine:
        text = self._line_text(span)
        if kind in _NULLARY_TACTICS:
            return TacticLine(kind, span, bullet=bullet, text=text)
        if kind in _NAME_TACTICS:
            names = tuple(
                self.expect("IDENT", "a name").value for _ in range(_NAME_TACTICS[kind])
            )
            return TacticLine(kind, span, bullet=bullet, names=names, text=text)
        if kind == "prove_exists":
            return TacticLine(
                kind, span, bullet=bullet, term_args=(self._arg_term(),), text=text
            )
        if kind == "use_all":
            h = self.expect("IDENT", "a hypothesis name").value
            t = self._arg_term()
            h2 = self.expect("IDENT", "a name").value
            return TacticLine(
                kind, span, bullet=bullet, names=(h, h2), term_args=(t,), text=text
            )
        if kind == "use_theorem":
            thm = self.expect("IDENT", "a theorem name").value
            items: list[tuple[T.Term, bool]] = []  # (term, was bare ident)
            while not self.at("DOT"):
                tok = self.peek()
                items.append((self._arg_term(), tok.kind == "IDENT"))
            if not items or not items[-1][1] or not isinstance(items[-1][0], T.Var):
                raise self.fail("use_theorem needs a final hypothesis name")
            h2 = items[-1][0].name
            args = tuple(t for t, _ in items[:-1])
            return TacticLine(
                kind, span, bullet=bullet, names=(h2,), term_args=args, theorem=thm, text=text
            )
        if kind == "rewrite":
            reverse = False
            if self.at("LARROW"):
                self.next()
                reverse = True
            j = self.expect("IDENT", "an equation name").value
            in_hyp = self._opt_in_hyp()
            return TacticLine(
                kind, span, bullet=bullet, theorem=j, reverse=reverse, in_hyp=in_hyp, text=text
            )
        if kind == "unfold":
            tok = self.peek()
            if tok.kind in ("ADD", "SUB"):
                self.next()
                fname = T.ADD if tok.kind == "ADD" else T.SUB
            else:
                fname = self.expect("IDENT", "a function name").value
            in_hyp = self._opt_in_hyp()
            return TacticLine(kind, span, bullet=bullet, theorem=fname, in_hyp=in_hyp, text=text)
        if kind in ("case", "induction"):
            x = self.expect("IDENT", "a variable name").value
            names: list[str] = []
            if self.at("IDENT", "as"):
                self.next()
                while self.at("IDENT"):
                    names.append(self.next().value)
            return TacticLine(
                kind, span, bullet=bullet, names=(x, *names), text=text
            )
        raise AssertionError(kind)

    def _opt_in_hyp(self) -> str | None:
        if self.at("IDENT", "in"):
            self.next()
            return self.expect("IDENT", "a hypothesis name").value
        return None

    def _arg_term(self) -> T.Term:
        """One tactic argument term: a single token or a parenthesized term."""
        t = self.peek()
        if t.kind == "LPAREN":
            self.next()
            inner = self._term()
            self.expect("RPAREN", "')'")
            return inner
        if t.kind == "NUM":
            self.next()
            return T.num(int(t.value))
        if t.kind == "IDENT":
            self.next()
            return T.Var(t.value)
        raise self.fail("expected a term argument", expected=("term",))

    def _line_text(self, span: Span) -> str:
        if 1 <= span.line <= len(self.lines):
            return self.lines[span.line - 1].strip()
        return ""

    # ---------------- formulas

    def _formula(self) -> T.Formula:
        return self._imp()

    def _imp(self) -> T.Formula:
        left = self._or()
        if self.at("IMP"):
            self.next()
            return T.Imp(left, self._imp())
        return left

    def _or(self) -> T.Formula:
        left = self._and()
        if self.at("OR"):
            self.next()
            return T.Or(left, self._or())
        return left

    def _and(self) -> T.Formula:
        left = self._not()
        if self.at("AND"):
            self.next()
            return T.And(left, self._and())
        return left

    def _not(self) -> T.Formula:
        if self.at("NOT"):
            self.next()
            return T.Not(self._not())
        return self._quant_or_cmp()

    def _quant_or_cmp(self) -> T.Formula:
        t = self.peek()
        if t.kind in ("FORALL", "EXISTS"):
            self.next()
            var = self.expect("IDENT", "a bound variable").value
            self.expect("COLON", "':'")
            sort = self._sort()
            self.expect("COMMA", "','")
            body = self._formula()
            return (T.Forall if t.kind == "FORALL" else T.Exists)(var, sort, body)
        if t.kind == "FALSE":
            self.next()
            return T.FALSE
        return self._cmp()

    def _cmp(self) -> T.Formula:
        # Try a term first; fall back to a parenthesized formula.
        save = self.pos
        term = None
        try:
            term = self._term()
        except ParseError:
            self.pos = save
        if term is not None:
            t = self.peek()
            if t.kind == "EQ":
                self.next()
                return T.Eq(term, self._term())
            if t.kind == "NEQ":
                self.next()
                return T.neq(term, self._term())
            atom = self._term_to_atom(term)
            if atom is None:
                self.pos = save
            else:
                return atom
        if self.at("LPAREN"):
            self.next()
            f = self._formula()
            self.expect("RPAREN", "')'")
            return f
        raise self.fail("expected a formula", expected=("formula",))

    @staticmethod
    def _term_to_atom(t: T.Term) -> T.Formula | None:
        if isinstance(t, T.Var):
            return T.Atom(t.name)
        if isinstance(t, T.App) and t.head not in (T.ADD, T.SUB, "0", "Suc"):
            return T.Atom(t.head, t.args)
        return None

    # ---------------- terms

    def _term(self) -> T.Term:
        left = self._app_term()
        t = self.peek()
        if t.kind in ("ADD", "SUB"):
            self.next()
            right = self._app_term()
            # ⊕/⊖ are non-associative: chains must be parenthesized
            nxt = self.peek()
            if nxt.kind in ("ADD", "SUB"):
                raise ParseError(
                    "chained ⊕/⊖ must be parenthesized", nxt.span, expected=("(",)
                )
            return T.App(T.ADD if t.kind == "ADD" else T.SUB, (left, right))
        return left

    def _app_term(self) -> T.Term:
        head = self._primary()
        args = []
        while self.peek().kind in ("IDENT", "NUM", "LPAREN"):
            args.append(self._primary())
        if not args:
            return head
        if isinstance(head, T.Var):
            return T.App(head.name, tuple(args))
        if isinstance(head, T.App) and not head.args:
            return T.App(head.head, tuple(args))
        raise self.fail("cannot apply this term to arguments")

    def _primary(self) -> T.Term:
        t = self.peek()
        if t.kind == "IDENT":
            self.next()
            return T.Var(t.value)
        if t.kind == "NUM":
            self.next()
            return T.num(int(t.value))
        if t.kind == "LPAREN":
            self.next()
            inner = self._term()
            self.expect("RPAREN", "')'")
            return inner
        raise self.fail("expected a term", expected=("term",))

    # ---------------- sorts

    def _sort(self) -> T.Sort:
        left = self._sort_atom()
        if self.at("IMP"):
            self.next()
            return T.ArrowSort(left, self._sort())
        return left

    def _sort_atom(self) -> T.Sort:
        t = self.peek()
        if t.kind == "IDENT":
            self.next()
            return T.SortName(t.value)
        if t.kind == "LPAREN":
            self.next()
            s = self._sort()
            self.expect("RPAREN", "')'")
            return s
        raise self.fail("expected a sort", expected=("sort",))


def parse_script(text: str, base_signature=None) -> ProofScript:
    """Parse and resolve a proof script.

    Raises ParseError/LexError with spans on malformed input and
    ScopeError on duplicate or unresolved names.  `base_signature`
    defaults to the built-in stdlib signature.
    """
    script = _Parser(text).script()
    from .kernel.signature import extend_signature

    if base_signature is None:
        from .stdlib import load_stdlib

        base_signature = load_stdlib()[0]
    sig = base_signature
    seen: set[str] = set(sig.all_names())
    resolved: list[Declaration] = []
    for d in script.declarations:
        if isinstance(d, ImportDecl):
            resolved.append(d)
            continue
        name = d.name
        if name in seen:
            raise ScopeError(f"name {name!r} is declared twice", d.span)
        seen.add(name)
        d = _resolve_decl(d, sig)
        resolved.append(d)
        if isinstance(d, (AxiomDecl, TheoremDecl)):
            _check_formula_scope(d.statement, sig, d.span)
        else:
            sig = extend_signature(sig, d)
            seen |= set(sig.all_names())
    return ProofScript(tuple(resolved), script.imports, script.source)


def _resolve_decl(d: Declaration, sig) -> Declaration:
    """Turn bare references to nullary symbols (Var) into applications."""
    if isinstance(d, (AxiomDecl, TheoremDecl)):
        return replace(d, statement=_resolve_vars_formula(d.statement, sig, frozenset()))
    if isinstance(d, DefinitionDecl):
        bound = frozenset(p for p, _ in d.params)
        return replace(d, body=_resolve_vars_term(d.body, sig, bound))
    if isinstance(d, FixpointDecl):
        params = frozenset(p for p, _ in d.params)
        eqs = tuple(
            (c, args, _resolve_vars_term(rhs, sig, params | frozenset(args)))
            for c, args, rhs in d.equations
        )
        return replace(d, equations=eqs)
    return d


def _resolve_vars_term(t: T.Term, sig, bound: frozenset[str]) -> T.Term:
    if isinstance(t, T.Var):
        if t.name not in bound and sig.is_symbol(t.name) and sig.arity(t.name) == 0:
            return T.App(t.name)
        return t
    return T.App(t.head, tuple(_resolve_vars_term(a, sig, bound) for a in t.args))


def _resolve_vars_formula(f: T.Formula, sig, bound: frozenset[str]) -> T.Formula:
    if isinstance(f, T.Atom):
        return T.Atom(f.pred, tuple(_resolve_vars_term(a, sig, bound) for a in f.args))
    if isinstance(f, T.Eq):
        return T.Eq(
            _resolve_vars_term(f.lhs, sig, bound), _resolve_vars_term(f.rhs, sig, bound)
        )
    if isinstance(f, T.Falsity):
        return f
    if isinstance(f, T.Not):
        return T.Not(_resolve_vars_formula(f.body, sig, bound))
    if isinstance(f, (T.And, T.Or, T.Imp)):
        return type(f)(
            _resolve_vars_formula(f.left, sig, bound),
            _resolve_vars_formula(f.right, sig, bound),
        )
    if isinstance(f, (T.Forall, T.Exists)):
        return type(f)(f.var, f.sort, _resolve_vars_formula(f.body, sig, bound | {f.var}))
    raise TypeError(f)


def check_statement_scope(f: T.Formula, sig, span: Span | None = None) -> None:
    """Raise ScopeError unless `f` is a closed, well-scoped statement."""
    _check_formula_scope(f, sig, span or Span(1, 1))


def _check_formula_scope(f: T.Formula, sig, span: Span, bound: dict | None = None) -> None:
    """Statements must be closed: every term variable bound, every atom
    head either bound or a fresh nullary propositional constant."""
    bound = dict(bound or {})
    if isinstance(f, T.Atom):
        if f.pred in bound or sig.is_symbol(f.pred):
            pass
        elif f.args:
            raise ScopeError(f"unresolved predicate {f.pred!r}", span)
        for a in f.args:
            _check_term_scope(a, sig, span, bound)
    elif isinstance(f, T.Eq):
        _check_term_scope(f.lhs, sig, span, bound)
        _check_term_scope(f.rhs, sig, span, bound)
        _check_eq_sorts(f, sig, span, bound)
    elif isinstance(f, T.Falsity):
        pass
    elif isinstance(f, T.Not):
        _check_formula_scope(f.body, sig, span, bound)
    elif isinstance(f, (T.And, T.Or, T.Imp)):
        _check_formula_scope(f.left, sig, span, bound)
        _check_formula_scope(f.right, sig, span, bound)
    elif isinstance(f, (T.Forall, T.Exists)):
        _check_sort_scope(f.sort, sig, span, bound)
        bound[f.var] = f.sort
        _check_formula_scope(f.body, sig, span, bound)
    else:
        raise TypeError(f)


def _check_eq_sorts(f: T.Eq, sig, span: Span, bound: dict) -> None:
    """Both sides of an equality must agree on their sort, when it can be
    inferred (type-variable sorts from the context are left alone)."""
    from .kernel.signature import infer_sort

    try:
        left = infer_sort(sig, dict(bound), f.lhs, span)
        right = infer_sort(sig, dict(bound), f.rhs, span)
    except ScopeError:
        return  # sorts involving bound type variables stay unchecked
    if left != right:
        from .printer import pretty_sort

        raise ScopeError(
            f"equality compares a {pretty_sort(left)} with a {pretty_sort(right)}",
            span,
        )


def _check_term_scope(t: T.Term, sig, span: Span, bound: dict) -> None:
    if isinstance(t, T.Var):
        if t.name not in bound and not sig.is_symbol(t.name):
            raise ScopeError(f"unbound variable {t.name!r}", span)
        return
    if sig.is_symbol(t.head):
        arity = sig.arity(t.head)
        if arity != len(t.args):
            raise ScopeError(
                f"{t.head!r} expects {arity} argument(s), got {len(t.args)}", span
            )
    elif t.head not in bound:
        raise ScopeError(f"unresolved name {t.head!r}", span)
    for a in t.args:
        _check_term_scope(a, sig, span, bound)


def _check_sort_scope(s: T.Sort, sig, span: Span, bound: dict) -> None:
    if isinstance(s, T.SortName):
        if s.name in T.BUILTIN_SORTS or s.name in bound or sig.is_sort(s.name):
            return
        raise ScopeError(f"unknown sort {s.name!r}", span)
    _check_sort_scope(s.arg, sig, span, bound)
    _check_sort_scope(s.res, sig, span, bound)


def parse_formula(text: str, resolve: bool = True) -> T.Formula:
    """Parse a standalone formula (tests and tooling); nullary stdlib
    symbols resolve to applications."""
    p = _Parser(text)
    f = p._formula()
    p.expect("EOF", "end of input")
    if resolve:
        f = _resolve_vars_formula(f, _default_signature(), frozenset())
    return f


def parse_term(text: str, resolve: bool = True) -> T.Term:
    p = _Parser(text)
    t = p._term()
    p.expect("EOF", "end of input")
    if resolve:
        t = _resolve_vars_term(t, _default_signature(), frozenset())
    return t


def _default_signature():
    from .stdlib import load_stdlib

    return load_stdlib()[0]
