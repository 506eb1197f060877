"""Comment template catalog: the wording the renderers instantiate.

Each tactic kind carries two registers: `rule` (level 1, names the exact
logical step) and `intuitive` (level 2/3).  The shipped catalog is a
reconstruction of the kind of formulation hand-out such a course would
distribute; it is a data file so a course can replace it with
`--catalog` without touching code.  `pronoun_lookback` (0 or 1) controls
how aggressively repeated formulas are replaced by "it".
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .. import terms as T
from ..errors import FpfError
from ..parser import TACTIC_KINDS
from ..printer import pretty_sort

_PLACEHOLDER = re.compile(r"\{(\w+)\}")


@dataclass(frozen=True)
class CommentTemplateCatalog:
    data: dict

    def template(self, kind: str, register: str) -> str:
        return self.data["templates"][kind][register]

    def suffix(self, kind: str, level3: bool = False, conditional: bool = False) -> str:
        if level3:
            key = "reflexivity_conditional" if conditional and kind == "reflexivity" else kind
            return self.data["level3_suffixes"][key]
        return self.data["suffixes"][kind]

    def phrase(self, section: str, key: str) -> str:
        return self.data[section][key]

    @property
    def pronoun_lookback(self) -> int:
        return int(self.data.get("options", {}).get("pronoun_lookback", 1))

    @property
    def pronoun_min_length(self) -> int:
        return int(self.data.get("options", {}).get("pronoun_min_length", 5))

    def sort_phrase(self, sort: T.Sort, plural: bool) -> str:
        idx = 1 if plural else 0
        phrases = self.data["sort_phrases"]
        if isinstance(sort, T.SortName) and sort.name in phrases:
            return phrases[sort.name][idx]
        if isinstance(sort, T.ArrowSort) and sort.res == T.PROP:
            return phrases["arrow_to_prop"][idx].format(arg=pretty_sort(sort.arg))
        return phrases["default"][idx].format(sort=pretty_sort(sort))


def validate_catalog(data: dict) -> None:
    """Every kernel tactic kind must carry both registers; placeholders
    must be well-formed."""
    templates = data.get("templates", {})
    for kind in TACTIC_KINDS:
        if kind == "bullet":
            continue
        entry = templates.get(kind)
        if not entry or "rule" not in entry or "intuitive" not in entry:
            raise FpfError(
                "CATALOG_INVALID",
                f"catalog lacks a rule/intuitive template pair for {kind!r}",
            )
    for section in ("suffixes", "level3_suffixes", "sort_phrases", "intro", "level3", "analogy"):
        if section not in data:
            raise FpfError("CATALOG_INVALID", f"catalog lacks the {section!r} section")


def load_catalog(path: str | Path | None = None) -> CommentTemplateCatalog:
    if path is None:
        text = resources.files("fpf.render").joinpath("catalog.json").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    data = json.loads(text)
    validate_catalog(data)
    return CommentTemplateCatalog(data)


def fill(
    template: str,
    fields: dict[str, str],
    formula_fields: tuple[str, ...] = (),
    previous_formulas: tuple[str, ...] = (),
    pronoun_lookback: int = 0,
    pronoun_min_length: int = 5,
) -> tuple[str, tuple[str, ...]]:
    """Instantiate a template.

    Returns (text, formulas actually printed).  With lookback enabled,
    the first formula placeholder whose value was already printed in the
    previous block (and is long enough to be worth suppressing) is
    replaced by "it".
    """
    printed: list[str] = []
    pronoun_done = False

    def sub(m: re.Match) -> str:
        nonlocal pronoun_done
        key = m.group(1)
        if key not in fields:
            raise FpfError("CATALOG_INVALID", f"template references unknown field {{{key}}}")
        value = fields[key]
        if key in formula_fields:
            if (
                pronoun_lookback
                and not pronoun_done
                and len(value) >= pronoun_min_length
                and value in previous_formulas
            ):
                pronoun_done = True
                return "it"
            printed.append(value)
        return value

    return _PLACEHOLDER.sub(sub, template), tuple(printed)
