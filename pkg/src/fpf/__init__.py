"""Didactic proof checker with a formality compiler.

Typical batch use:

    from fpf import check_script, parse_script, render
    result = check_script(parse_script(source))
    print(render(3, result.traces[0]).to_text())
"""

from .kernel.checker import CheckResult, check_script, replay
from .parser import ProofScript, parse_script
from .render.catalog import load_catalog
from .render.document import FormalityLevel, RenderedDocument
from .render.levels import render
from .session import ProtocolSession, Session
from .stdlib import eval_closed, load_stdlib

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "FormalityLevel",
    "ProofScript",
    "ProtocolSession",
    "RenderedDocument",
    "Session",
    "check_script",
    "eval_closed",
    "load_catalog",
    "load_stdlib",
    "parse_script",
    "render",
    "replay",
    "__version__",
]
