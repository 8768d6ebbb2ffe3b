"""HTTP API suite; runs entirely offline with the scripted client."""

import json
import shutil
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from a11yassist.service import ServiceConfig, UnknownConfigKey, create_app

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture()
def project(tmp_path):
    root = tmp_path / "proj"
    shutil.copytree(FIXTURES / "kube-like", root)
    return root


@pytest.fixture()
def client(project):
    app = create_app(ServiceConfig(project_root=project))
    with TestClient(app) as tc:
        yield tc


def parse_sse(body: str):
    events = []
    for block in body.strip().split("\n\n"):
        lines = dict(
            line.split(": ", 1) for line in block.splitlines() if ": " in line
        )
        events.append(json.loads(lines["data"]))
    return events


def create_session(client, **kwargs):
    resp = client.post("/sessions", json=kwargs)
    assert resp.status_code == 201
    return resp.json()["session_id"]


class TestSessions:
    def test_create_returns_uuid(self, client):
        session_id = create_session(client)
        assert len(session_id) == 36

    def test_missing_root_no_default_400(self, tmp_path):
        app = create_app(ServiceConfig())
        with TestClient(app) as tc:
            assert tc.post("/sessions", json={}).status_code == 400

    def test_bad_root_400(self, client):
        resp = client.post("/sessions", json={"project_root": "/definitely/missing"})
        assert resp.status_code == 400


class TestMessages:
    def test_unknown_session_404(self, client):
        resp = client.post("/sessions/nope/messages", json={"text": "hi"})
        assert resp.status_code == 404

    def test_empty_text_422(self, client):
        session_id = create_session(client)
        resp = client.post(f"/sessions/{session_id}/messages", json={"text": "  "})
        assert resp.status_code == 422

    def test_figure_style_button_turn_stream(self, client):
        session_id = create_session(client)
        resp = client.post(
            f"/sessions/{session_id}/messages",
            json={"text": "add a button with a hover style"},
        )
        kinds = [e["kind"] for e in parse_sse(resp.text)]
        assert kinds == ["responder_message", "reminder_notification", "turn_done"]

    def test_relevant_findings_add_correction(self, client):
        session_id = create_session(client)
        resp = client.post(
            f"/sessions/{session_id}/messages",
            json={"text": "improve the subscription form in src/index.html"},
        )
        kinds = [e["kind"] for e in parse_sse(resp.text)]
        assert kinds == [
            "responder_message",
            "correction_message",
            "reminder_notification",
            "turn_done",
        ]

    def test_seq_gapless_across_turns(self, client):
        session_id = create_session(client)
        seqs = []
        for text in ("Hi", "add a button with a hover style", "Hi"):
            resp = client.post(f"/sessions/{session_id}/messages", json={"text": text})
            seqs.extend(e["seq"] for e in parse_sse(resp.text))
        assert seqs == list(range(1, len(seqs) + 1))

    def test_reminder_event_carries_session_style(self, project):
        app = create_app(ServiceConfig(project_root=project))
        with TestClient(app) as tc:
            session_id = create_session(tc, notification_style="popup")
            resp = tc.post(
                f"/sessions/{session_id}/messages",
                json={"text": "add a button with a hover style"},
            )
            reminder = [
                e for e in parse_sse(resp.text) if e["kind"] == "reminder_notification"
            ][0]
            assert reminder["payload"]["style"] == "popup"
            assert "\n" not in reminder["payload"]["text"]


class TestFindings:
    def test_fixture_project_findings(self, client):
        session_id = create_session(client)
        resp = client.get(f"/sessions/{session_id}/findings")
        assert resp.status_code == 200
        records = json.loads(resp.text)
        assert [r["rule_id"] for r in records] == ["form-label"]
        assert records[0]["file"] == "src/index.html"

    def test_clean_project_empty(self, tmp_path):
        root = tmp_path / "clean"
        root.mkdir()
        (root / "a.html").write_text("<h1>ok</h1>")
        app = create_app(ServiceConfig(project_root=root))
        with TestClient(app) as tc:
            session_id = create_session(tc)
            assert json.loads(tc.get(f"/sessions/{session_id}/findings").text) == []

    def test_unknown_session_404(self, client):
        assert client.get("/sessions/nope/findings").status_code == 404


class TestHealth:
    def test_fresh_boot_ok(self, client):
        body = client.get("/health").json()
        assert body["status"] == "ok"
        assert body["model_client"] == "scripted"

    def test_snapshot_age_present_after_session(self, client):
        create_session(client)
        body = client.get("/health").json()
        assert body["snapshot_age_s"] is not None


class TestConfig:
    def test_budget_floor(self):
        with pytest.raises(ValueError):
            ServiceConfig(budget_chars=100)

    def test_refresh_floor(self):
        with pytest.raises(ValueError):
            ServiceConfig(refresh_interval_s=0.1)

    def test_from_file(self, tmp_path, project):
        cfg_file = tmp_path / "service.conf"
        cfg_file.write_text(
            f"project_root = {project}\n"
            "port = 9000  # comment\n"
            "notification_style = popup\n"
        )
        cfg = ServiceConfig.from_file(cfg_file)
        assert cfg.port == 9000
        assert cfg.notification_style == "popup"

    def test_unknown_key_named_in_error(self, tmp_path):
        cfg_file = tmp_path / "service.conf"
        cfg_file.write_text("no_such_key = 1\n")
        with pytest.raises(UnknownConfigKey, match="no_such_key"):
            ServiceConfig.from_file(cfg_file)
