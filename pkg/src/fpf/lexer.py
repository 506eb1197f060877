"""Tokenizer for `.fpf` proof scripts.

Unicode operators and their ASCII aliases are accepted interchangeably:

    ⊕ +.    ⊖ -.    ∧ /\\    ∨ \\/    → ->    ¬ ~
    ∀ forall   ∃ exists   ≠ <>   ← <-   ℕ N

Comments `(* ... *)` nest and are discarded.  Bare `+`, `*`, `-` are
bullet markers (the arithmetic operators are the dotted/circled forms),
so bullets need no terminating dot, matching the scripts they imitate.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import LexError, Span
from .terms import ADD, NAT, SUB


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    span: Span


_SIMPLE = {
    "⊕": "ADD",
    "⊖": "SUB",
    "∧": "AND",
    "∨": "OR",
    "→": "IMP",
    "¬": "NOT",
    "∀": "FORALL",
    "∃": "EXISTS",
    "≠": "NEQ",
    "←": "LARROW",
    "~": "NOT",
    "=": "EQ",
    ",": "COMMA",
    "(": "LPAREN",
    ")": "RPAREN",
    "{": "LBRACE",
    "}": "RBRACE",
    "|": "PIPE",
    ".": "DOT",
}

# Multi-character ASCII aliases, longest first.
_MULTI = [
    ("+.", "ADD"),
    ("-.", "SUB"),
    ("/\\", "AND"),
    ("\\/", "OR"),
    ("->", "IMP"),
    ("<-", "LARROW"),
    ("<>", "NEQ"),
    (":=", "COLONEQ"),
    ("=>", "DARROW"),
]

_WORDS = {"forall": "FORALL", "exists": "EXISTS", "False": "FALSE"}

_BULLETS = {"+", "*", "-"}


def _ident_start(c: str) -> bool:
    return c.isalpha() or c == "_" or c == NAT


def _ident_char(c: str) -> bool:
    return c.isalnum() or c in "_'" or c == NAT


def tokenize(text: str) -> list[Token]:
    """Token sequence with spans; raises LexError on unrecognized input."""
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def here() -> Span:
        return Span(line, col)

    def advance(k: int):
        nonlocal i, line, col
        for _ in range(k):
            if text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        c = text[i]
        if c in " \t\r\n":
            advance(1)
            continue
        if text.startswith("(*", i):
            start = here()
            depth = 0
            while i < n:
                if text.startswith("(*", i):
                    depth += 1
                    advance(2)
                elif text.startswith("*)", i):
                    depth -= 1
                    advance(2)
                    if depth == 0:
                        break
                else:
                    advance(1)
            if depth != 0:
                raise LexError("unterminated comment", start)
            continue
        matched = False
        for lit, kind in _MULTI:
            if text.startswith(lit, i):
                s = here()
                advance(len(lit))
                toks.append(Token(kind, lit, Span(s.line, s.col, line, col - 1)))
                matched = True
                break
        if matched:
            continue
        if c in _BULLETS:
            s = here()
            advance(1)
            toks.append(Token("BULLET", c, s))
            continue
        if c == ":":
            s = here()
            advance(1)
            toks.append(Token("COLON", c, s))
            continue
        if c in _SIMPLE:
            s = here()
            advance(1)
            toks.append(Token(_SIMPLE[c], c, s))
            continue
        if c.isdigit():
            s = here()
            j = i
            while j < n and text[j].isdigit():
                j += 1
            # digits followed by ident chars form an identifier tail error
            value = text[i:j]
            advance(j - i)
            toks.append(Token("NUM", value, Span(s.line, s.col, line, col - 1)))
            continue
        if _ident_start(c):
            s = here()
            j = i
            while j < n and _ident_char(text[j]):
                j += 1
            word = text[i:j]
            advance(j - i)
            span = Span(s.line, s.col, line, col - 1)
            if word == "N" or word == NAT:
                toks.append(Token("IDENT", NAT, span))
            elif word in _WORDS:
                toks.append(Token(_WORDS[word], word, span))
            else:
                toks.append(Token("IDENT", word, span))
            continue
        raise LexError(f"unrecognized character {c!r}", here())
    toks.append(Token("EOF", "", Span(line, col)))
    return toks


OPERATOR_NAMES = {"ADD": ADD, "SUB": SUB}
