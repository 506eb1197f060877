"""Command-line interface.

    fpf check FILE                      exit 0 iff all theorems check
    fpf render FILE --level {0..3}      print a rendered document
    fpf step FILE                       record protocol on stdin/stdout
    fpf serve --port N                  HTTP/WebSocket service for the UI

Exit codes: 0 ok, 1 proof error, 2 parse/lex error, 3 usage or I/O.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import FpfError, KernelError, LexError, ParseError, ScopeError
from .kernel.checker import check_script
from .parser import parse_script
from .render.catalog import load_catalog
from .render.levels import render
from .session import ProtocolSession

EXIT_OK, EXIT_PROOF, EXIT_PARSE, EXIT_USAGE = 0, 1, 2, 3


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="fpf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="check every theorem in a script")
    p_check.add_argument("file")

    p_render = sub.add_parser("render", help="render a checked script")
    p_render.add_argument("file")
    p_render.add_argument("--level", type=int, default=3, choices=(0, 1, 2, 3))
    p_render.add_argument("--catalog", help="template catalog JSON path")
    p_render.add_argument("--out", help="write to a file instead of stdout")
    p_render.add_argument(
        "--records",
        action="store_true",
        help="emit newline-delimited JSON records instead of plain text",
    )

    p_step = sub.add_parser("step", help="interactive protocol on stdin/stdout")
    p_step.add_argument("file")
    p_step.add_argument("--catalog")

    p_serve = sub.add_parser("serve", help="serve the step protocol for the UI")
    p_serve.add_argument("--port", type=int, default=8040)
    p_serve.add_argument("--host", default="127.0.0.1")

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (ParseError, LexError, ScopeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except KernelError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PROOF
    except FpfError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _dispatch(args) -> int:
    if args.command == "check":
        result = check_script(parse_script(_read(args.file)))
        for t in result.traces:
            print(f"{t.name}: accepted ({len(t.tactic_nodes)} steps)")
        return EXIT_OK

    if args.command == "render":
        catalog = load_catalog(args.catalog) if args.catalog else load_catalog()
        result = check_script(parse_script(_read(args.file)))
        parts = []
        for t in result.traces:
            doc = render(args.level, t, catalog)
            parts.append(doc.to_records() if args.records else doc.to_text())
        text = "\n".join(parts)
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return EXIT_OK

    if args.command == "step":
        catalog = load_catalog(args.catalog) if args.catalog else None
        proto = ProtocolSession(catalog)
        import json

        print(json.dumps(proto.handle({"kind": "load", "path": args.file}), ensure_ascii=False), flush=True)
        for raw in sys.stdin:
            raw = raw.strip()
            if not raw:
                continue
            print(json.dumps(proto.handle_line(raw), ensure_ascii=False), flush=True)
        return EXIT_OK

    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
        return EXIT_OK

    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
