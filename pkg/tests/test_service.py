import json

import pytest
from fastapi.testclient import TestClient

from fpf.service import app

from .conftest import corpus_text


@pytest.fixture()
def client():
    return TestClient(app)


def test_health(client):
    r = client.get("/v1/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok", "v": 1}


def test_session_lifecycle(client):
    r = client.post("/v1/sessions", json={"source": corpus_text("and_commutativity")})
    assert r.status_code == 200
    sid = r.json()["session_id"]
    assert r.json()["response"]["kind"] == "state_view"
    r = client.post(f"/v1/sessions/{sid}/messages", json={"kind": "run_to_end"})
    body = r.json()
    assert body["kind"] == "accepted"
    assert body["state"]["open_goals"] == 0
    r = client.post(f"/v1/sessions/{sid}/messages", json={"kind": "render", "level": 2})
    assert r.json()["kind"] == "document"
    assert client.delete(f"/v1/sessions/{sid}").json() == {"status": "deleted"}
    assert client.post(f"/v1/sessions/{sid}/messages", json={"kind": "get_state"}).status_code == 404


def test_sessions_are_independent(client):
    a = client.post("/v1/sessions", json={"source": corpus_text("and_commutativity")}).json()
    b = client.post("/v1/sessions", json={"source": corpus_text("sub_suc")}).json()
    sa, sb = a["session_id"], b["session_id"]
    client.post(f"/v1/sessions/{sa}/messages", json={"kind": "step_forward"})
    ra = client.post(f"/v1/sessions/{sa}/messages", json={"kind": "get_state"}).json()
    rb = client.post(f"/v1/sessions/{sb}/messages", json={"kind": "get_state"}).json()
    assert ra["cursor"] == 1
    assert rb["cursor"] == 0


def test_bad_script_rejected_on_create(client):
    r = client.post("/v1/sessions", json={"source": "Theorem t : A. prove_and"})
    assert r.status_code == 422


def test_websocket_protocol(client):
    with client.websocket_connect("/v1/socket") as ws:
        ws.send_text(json.dumps({"kind": "load", "source": corpus_text("and_commutativity")}))
        first = json.loads(ws.receive_text())
        assert first["kind"] == "state_view"
        ws.send_text(json.dumps({"kind": "step_forward"}))
        assert json.loads(ws.receive_text())["kind"] == "accepted"
        ws.send_text(json.dumps({"kind": "render", "level": 1}))
        doc = json.loads(ws.receive_text())
        assert doc["kind"] == "document" and len(doc["blocks"]) == 5


def test_websocket_error_keeps_connection(client):
    with client.websocket_connect("/v1/socket") as ws:
        ws.send_text("garbage")
        assert json.loads(ws.receive_text())["code"] == "PROTOCOL"
        ws.send_text(json.dumps({"kind": "load", "source": corpus_text("and_commutativity")}))
        assert json.loads(ws.receive_text())["kind"] == "state_view"
