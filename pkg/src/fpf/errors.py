"""Error types shared by the lexer, parser, kernel, and session layer.

Every error carries a stable machine code and a source span so that the
CLI, the step protocol, and the browser client can all point at the
offending text.  The student-facing message templates live next to the
codes: each one names what the tactic expected and what was found.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    end_line: int = 0
    end_col: int = 0

    def __post_init__(self):
        if self.end_line == 0:
            object.__setattr__(self, "end_line", self.line)
        if self.end_col == 0:
            object.__setattr__(self, "end_col", self.col)

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"

    def as_dict(self) -> dict:
        return {
            "line": self.line,
            "col": self.col,
            "end_line": self.end_line,
            "end_col": self.end_col,
        }


class FpfError(Exception):
    """Base class; `code` is stable across releases."""

    def __init__(self, code: str, message: str, span: Span | None = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.span = span or Span(1, 1)

    def __str__(self) -> str:
        return f"{self.span}: [{self.code}] {self.message}"


class LexError(FpfError):
    def __init__(self, message: str, span: Span):
        super().__init__("LEX_ERROR", message, span)


class ParseError(FpfError):
    def __init__(self, message: str, span: Span, expected: tuple[str, ...] = ()):
        super().__init__("PARSE_ERROR", message, span)
        self.expected = expected


class ScopeError(FpfError):
    def __init__(self, message: str, span: Span | None = None):
        super().__init__("SCOPE_ERROR", message, span)


class KernelError(FpfError):
    """Raised by tactic application; `code` is one of KERNEL_CODES."""


# Stable enumeration of kernel failure codes, documented in the README.
KERNEL_CODES = (
    "GOAL_NOT_IMPLICATION",
    "GOAL_NOT_UNIVERSAL",
    "GOAL_NOT_NEGATION",
    "GOAL_NOT_CONJUNCTION",
    "GOAL_NOT_DISJUNCTION",
    "GOAL_NOT_EXISTENTIAL",
    "GOAL_NOT_EQUALITY",
    "HYP_NOT_CONJUNCTION",
    "HYP_NOT_DISJUNCTION",
    "HYP_NOT_EXISTENTIAL",
    "HYP_NOT_UNIVERSAL",
    "HYP_NOT_IMPLICATION",
    "HYP_NOT_FALSITY",
    "HYP_NOT_EQUATION",
    "HYP_MISMATCH",
    "UNKNOWN_HYPOTHESIS",
    "UNKNOWN_THEOREM",
    "UNKNOWN_FUNCTION",
    "UNKNOWN_VARIABLE",
    "NAME_COLLISION",
    "ARITY_MISMATCH",
    "SORT_MISMATCH",
    "NOT_A_VARIABLE",
    "NOT_INDUCTIVE_SORT",
    "VAR_USED_IN_HYPOTHESIS",
    "WRONG_NAME_COUNT",
    "REWRITE_REDEX_NOT_FOUND",
    "CANNOT_INFER_INSTANCE",
    "ASSUMPTION_NOT_FOUND",
    "REFLEXIVITY_FAILED",
    "NO_OPEN_GOAL",
    "BULLET_WRONG_MARKER",
    "BULLET_SIBLING_OPEN",
    "BULLET_NO_PENDING",
    "BULLET_EXPECTED",
    "NON_STRUCTURAL_RECURSION",
    "INCOMPLETE_PROOF",
    "DUPLICATE_NAME",
)


def kernel_error(code: str, message: str, span: Span | None = None) -> KernelError:
    assert code in KERNEL_CODES, code
    return KernelError(code, message, span)


def shape_name(f) -> str:
    """How a formula's outermost shape is named in error messages."""
    from . import terms as T

    return {
        T.Atom: "an atomic formula",
        T.Eq: "an equality",
        T.Falsity: "falsity",
        T.Not: "a negation",
        T.And: "a conjunction",
        T.Or: "a disjunction",
        T.Imp: "an implication",
        T.Forall: "a universally quantified formula",
        T.Exists: "an existentially quantified formula",
    }[type(f)]
