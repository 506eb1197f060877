"""Rendered documents: ordered blocks with depth, markers, and source links."""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import IntEnum


class FormalityLevel(IntEnum):
    SCRIPT = 0
    LINE_BY_LINE = 1
    WEAKENED = 2
    STRUCTURE_FAITHFUL = 3


@dataclass(frozen=True)
class Block:
    text: str
    depth: int = 0
    marker: str | None = None
    sources: tuple[int, ...] = ()  # trace node indices this block covers
    formulas: tuple[str, ...] = ()  # formula strings printed (smoothing)
    citations: tuple[str, ...] = ()  # justification tokens cited

    def with_suffix(self, suffix: str, extra_sources: tuple[int, ...]) -> "Block":
        text = self.text
        if suffix.startswith(",") or suffix.startswith("."):
            text = text.rstrip()
            if text.endswith("."):
                text = text[:-1]
            text += suffix
        else:
            text = f"{text} {suffix}"
        return replace(self, text=text, sources=self.sources + extra_sources)


@dataclass(frozen=True)
class RenderedDocument:
    level: FormalityLevel
    theorem: str
    blocks: tuple[Block, ...]

    def to_text(self) -> str:
        lines = []
        for b in self.blocks:
            prefix = "  " * b.depth + (f"{b.marker} " if b.marker else "")
            lines.append(prefix + b.text)
        return "\n".join(lines) + "\n"

    def to_records(self) -> str:
        """Structured export: one JSON record per block, newline-delimited."""
        out = []
        for b in self.blocks:
            out.append(
                json.dumps(
                    {
                        "depth": b.depth,
                        "marker": b.marker,
                        "text": b.text,
                        "nodes": list(b.sources),
                    },
                    ensure_ascii=False,
                )
            )
        return "\n".join(out) + "\n"

    @property
    def citation_count(self) -> int:
        return sum(len(b.citations) for b in self.blocks)

    def covered_sources(self) -> list[int]:
        out: list[int] = []
        for b in self.blocks:
            out.extend(b.sources)
        return out
