"""HTTP/WebSocket service wrapping the step protocol.

One session per WebSocket connection (each text frame is one protocol
record, exactly as on stdin/stdout), plus plain HTTP endpoints for
clients that prefer request/response.  HTTP sessions live in memory and
are processed strictly in arrival order via a per-session lock.
"""
from __future__ import annotations

import itertools
import threading
from typing import Any, Literal

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from pydantic import BaseModel

from .session import PROTOCOL_VERSION, ProtocolSession

app = FastAPI(
    title="fpf",
    description="Proof stepping and formality rendering service (protocol v1).",
)


class SessionCreate(BaseModel):
    source: str | None = None
    path: str | None = None


class SessionCreated(BaseModel):
    session_id: str
    response: dict


class ProtocolRequest(BaseModel):
    v: int = PROTOCOL_VERSION
    kind: Literal[
        "load", "step_forward", "step_back", "run_to_end", "render", "get_state"
    ]
    source: str | None = None
    path: str | None = None
    level: int | None = None

    def payload(self) -> dict[str, Any]:
        return self.model_dump(exclude_none=True)


class ProtocolResponse(BaseModel):
    v: int
    kind: str
    model_config = {"extra": "allow"}


class _Sessions:
    def __init__(self):
        self._lock = threading.Lock()
        self._counter = itertools.count(1)
        self._sessions: dict[str, tuple[ProtocolSession, threading.Lock]] = {}

    def create(self) -> str:
        with self._lock:
            sid = f"s{next(self._counter)}"
            self._sessions[sid] = (ProtocolSession(), threading.Lock())
            return sid

    def get(self, sid: str) -> tuple[ProtocolSession, threading.Lock]:
        try:
            return self._sessions[sid]
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no session {sid!r}")

    def drop(self, sid: str) -> None:
        self._sessions.pop(sid, None)


SESSIONS = _Sessions()


@app.get("/v1/health")
def health() -> dict:
    return {"status": "ok", "v": PROTOCOL_VERSION}


@app.post("/v1/sessions", response_model=SessionCreated)
def create_session(body: SessionCreate) -> SessionCreated:
    sid = SESSIONS.create()
    proto, lock = SESSIONS.get(sid)
    with lock:
        resp = proto.handle({"kind": "load", "source": body.source, "path": body.path})
    if resp.get("kind") == "error":
        SESSIONS.drop(sid)
        raise HTTPException(status_code=422, detail=resp)
    return SessionCreated(session_id=sid, response=resp)


@app.post("/v1/sessions/{sid}/messages", response_model=ProtocolResponse)
def post_message(sid: str, body: ProtocolRequest) -> ProtocolResponse:
    proto, lock = SESSIONS.get(sid)
    with lock:
        resp = proto.handle(body.payload())
    return ProtocolResponse(**resp)


@app.delete("/v1/sessions/{sid}")
def delete_session(sid: str) -> dict:
    SESSIONS.get(sid)
    SESSIONS.drop(sid)
    return {"status": "deleted"}


@app.websocket("/v1/socket")
async def socket(ws: WebSocket):
    """One fresh session per connection; newline-delimited records."""
    await ws.accept()
    proto = ProtocolSession()
    try:
        while True:
            raw = await ws.receive_text()
            for line in raw.splitlines():
                line = line.strip()
                if not line:
                    continue
                resp = proto.handle_line(line)
                import json

                await ws.send_text(json.dumps(resp, ensure_ascii=False) + "\n")
    except WebSocketDisconnect:
        return


def _mount_ui() -> None:
    """Serve the browser client at /ui when a built frontend sits next to
    the package checkout (development convenience; absent in wheels)."""
    from pathlib import Path

    frontend = Path(__file__).resolve().parent.parent.parent / "frontend"
    if (frontend / "index.html").exists() and (frontend / "dist").exists():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=frontend, html=True), name="ui")


_mount_ui()
