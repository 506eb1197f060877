"""Built-in signature and theorem catalog.

The stdlib ships as `.fpf` sources compiled at import of the first
session: naturals with `⊕`/`⊖`/`pred`, lists, binary trees, the season
enumeration with a record, and the named theorems used as rewrite
justifications.  Set FPF_STDLIB to load the sources from another
directory instead of the packaged ones.

`eval_closed` is an independent model: it interprets closed terms
directly over Python integers/lists/tuples and never consults the
reduction engine, so the two can be cross-checked against each other.
"""
from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from .. import terms as T
from ..errors import ScopeError
from ..kernel.checker import check_script
from ..kernel.signature import EMPTY_SIGNATURE, Signature
from ..kernel.theorems import TheoremDB, equality_congruence_schema
from ..parser import parse_script

_FILES = ("nat.fpf", "list.fpf", "tree.fpf", "season.fpf")

_cache: dict[str, tuple[Signature, TheoremDB]] = {}


def stdlib_dir() -> Path | None:
    override = os.environ.get("FPF_STDLIB")
    return Path(override) if override else None


def load_stdlib() -> tuple[Signature, TheoremDB]:
    """(signature, theorem catalog), compiled once and cached."""
    key = str(stdlib_dir() or "<packaged>")
    if key in _cache:
        return _cache[key]
    sig = EMPTY_SIGNATURE
    db = TheoremDB().with_record(equality_congruence_schema())
    for fname in _FILES:
        text = _read(fname)
        if text is None:
            continue
        script = parse_script(text, base_signature=sig)
        result = check_script(script, db=db, sig=sig)
        sig, db = result.signature, result.theorems
    _cache[key] = (sig, db)
    return sig, db


def _read(fname: str) -> str | None:
    d = stdlib_dir()
    if d is not None:
        p = d / fname
        return p.read_text(encoding="utf-8") if p.exists() else None
    return (
        resources.files("fpf.stdlib").joinpath("data").joinpath(fname).read_text("utf-8")
    )


# ------------------------------------------------------------- evaluation


def eval_closed(t: T.Term):
    """Value of a closed stdlib term in the standard model.

    Naturals map to ints (`⊖` truncates at zero), lists to Python lists,
    trees to nested tuples ("leaf" or (left, label, right)), season
    constructors to their names, records to dicts.
    """
    if isinstance(t, T.Var):
        raise ScopeError(f"eval_closed needs a closed term; {t.name!r} is free")
    head, args = t.head, [eval_closed(a) for a in t.args]
    if head == "0":
        return 0
    if head == "Suc":
        return args[0] + 1
    if head == "pred":
        return max(args[0] - 1, 0)
    if head == T.ADD:
        return args[0] + args[1]
    if head == T.SUB:
        return max(args[0] - args[1], 0)
    if head == "nil":
        return []
    if head == "cons":
        return [args[0]] + args[1]
    if head == "append":
        return args[0] + args[1]
    if head == "length":
        return len(args[0])
    if head == "leaf":
        return "leaf"
    if head == "node":
        return (args[0], args[1], args[2])
    if head == "mirror":
        return _mirror(args[0])
    if head == "size":
        return _size(args[0])
    if head in ("spring", "summer", "autumn", "winter"):
        return head
    if head == "next_season":
        cycle = ("spring", "summer", "autumn", "winter")
        return cycle[(cycle.index(args[0]) + 1) % 4]
    if head == "mk_month_info":
        return {"month_number": args[0], "month_season": args[1]}
    if head in ("month_number", "month_season"):
        return args[0][head]
    raise ScopeError(f"eval_closed does not know the symbol {head!r}")


def _mirror(tree):
    if tree == "leaf":
        return "leaf"
    l, v, r = tree
    return (_mirror(r), v, _mirror(l))


def _size(tree):
    if tree == "leaf":
        return 0
    l, _, r = tree
    return 1 + _size(l) + _size(r)
