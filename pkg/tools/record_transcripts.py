"""Record protocol transcripts for the browser client's replay tests.

Usage: python tools/record_transcripts.py
Writes frontend/fixtures/*.json; run after changing the protocol or the
corpus so the client fixtures stay in sync (tests/test_transcripts.py
fails when they drift).
"""
from __future__ import annotations

import json
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def record(script_path: Path, requests: list[dict]) -> dict:
    from fpf.session import ProtocolSession

    source = script_path.read_text(encoding="utf-8")
    proto = ProtocolSession()
    exchanges = []
    load = {"v": 1, "kind": "load", "source": source}
    exchanges.append({"request": load, "response": proto.handle(load)})
    for req in requests:
        req = {"v": 1, **req}
        exchanges.append({"request": req, "response": proto.handle(req)})
    return {"script": source, "exchanges": exchanges}


def transcripts() -> dict[str, dict]:
    corpus = ROOT / "src" / "fpf" / "corpus"
    stepping = [{"kind": "step_forward"} for _ in range(7)]
    out = {
        "and_comm_stepping": record(
            corpus / "and_commutativity.fpf",
            stepping + [{"kind": "render", "level": 3}, {"kind": "step_back"}],
        ),
        "wrong_start": record(
            corpus / "wrong_start_and_comm.fpf",
            [{"kind": "step_forward"}, {"kind": "step_forward"}, {"kind": "get_state"}],
        ),
    }
    return out


def main() -> None:
    fixtures = ROOT / "frontend" / "fixtures"
    fixtures.mkdir(parents=True, exist_ok=True)
    for name, data in transcripts().items():
        path = fixtures / f"{name}.json"
        path.write_text(
            json.dumps(data, ensure_ascii=False, indent=1, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
