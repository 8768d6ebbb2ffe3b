"""HTTP service: session management, streamed turn events, findings.

Turn delivery uses one-directional server-sent events (`event:` /
`data:` line framing); clients poll the findings endpoint separately.
Event sequence numbers are gapless and strictly increasing per session.
"""

from __future__ import annotations

import json
import queue
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import Response, StreamingResponse
from pydantic import BaseModel

from .agents import AgentUnavailable, ModelClient, ScriptedClient
from .linter.report import finding_to_record
from .orchestrator import (
    EmptyPrompt,
    NotificationStyle,
    Session,
    handle_user_message,
    refresh_linter_snapshot,
)

TURN_QUEUE_DEPTH = 4


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8711
    project_root: Path | None = None
    model_client_kind: str = "scripted"  # scripted | remote
    script_file: Path | None = None
    remote_endpoint: str = ""
    notification_style: str = "modal"
    budget_chars: int = 4000
    refresh_interval_s: float = 5.0
    strict_invocation: bool = False
    transcript_export: Path | None = None

    def __post_init__(self) -> None:
        if self.budget_chars < 512:
            raise ValueError("context budget must be >= 512 chars")
        if self.refresh_interval_s < 1.0:
            raise ValueError("refresh interval must be >= 1s")

    KNOWN_KEYS = (
        "host", "port", "project_root", "model_client_kind", "script_file",
        "remote_endpoint", "notification_style", "budget_chars",
        "refresh_interval_s", "strict_invocation", "transcript_export",
    )

    @classmethod
    def from_file(cls, path: Path) -> "ServiceConfig":
        """Load `key = value` lines; '#' starts a comment."""
        values: dict = {}
        for raw_line in Path(path).read_text(encoding="utf-8").splitlines():
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or not key:
                raise UnknownConfigKey(f"malformed config line: {raw_line!r}")
            if key not in cls.KNOWN_KEYS:
                raise UnknownConfigKey(key)
            values[key] = value
        return cls(
            host=values.get("host", "127.0.0.1"),
            port=int(values.get("port", 8711)),
            project_root=Path(values["project_root"]) if values.get("project_root") else None,
            model_client_kind=values.get("model_client_kind", "scripted"),
            script_file=Path(values["script_file"]) if values.get("script_file") else None,
            remote_endpoint=values.get("remote_endpoint", ""),
            notification_style=values.get("notification_style", "modal"),
            budget_chars=int(values.get("budget_chars", 4000)),
            refresh_interval_s=float(values.get("refresh_interval_s", 5.0)),
            strict_invocation=values.get("strict_invocation", "false").lower() == "true",
            transcript_export=(
                Path(values["transcript_export"]) if values.get("transcript_export") else None
            ),
        )


class UnknownConfigKey(ValueError):
    pass


def build_client(config: ServiceConfig) -> ModelClient:
    if config.model_client_kind == "scripted":
        if config.script_file is not None:
            return ScriptedClient.from_file(config.script_file)
        from .scripts import default_script

        return default_script()
    if config.model_client_kind == "remote":
        from .agents import RemoteClient

        return RemoteClient(config.remote_endpoint)
    raise ValueError(f"unknown model client kind {config.model_client_kind!r}")


@dataclass
class SessionHandle:
    session: Session
    seq: int = 0
    seq_lock: threading.Lock = field(default_factory=threading.Lock)
    turn_queue: "queue.Queue[None]" = field(default_factory=lambda: queue.Queue())
    in_flight: int = 0
    booted_at: float = field(default_factory=time.time)

    def next_seq(self) -> int:
        with self.seq_lock:
            self.seq += 1
            return self.seq


class CreateSessionBody(BaseModel):
    project_root: str | None = None
    notification_style: str | None = None


class MessageBody(BaseModel):
    text: str
    active_file: str | None = None
    cursor_line: int | None = None


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    app = FastAPI(title="a11yassist")
    sessions: dict[str, SessionHandle] = {}
    state_lock = threading.Lock()
    app.state.config = config
    app.state.sessions = sessions

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        root = Path(body.project_root) if body.project_root else config.project_root
        if root is None:
            raise HTTPException(400, "no project_root given and no configured default")
        if not root.is_dir():
            raise HTTPException(400, f"project root {root} is not a directory")
        style = NotificationStyle(body.notification_style or config.notification_style)
        session = Session(
            project_root=root,
            client=build_client(config),
            notification_style=style,
            strict_invocation=config.strict_invocation,
            budget_chars=config.budget_chars,
        )
        refresh_linter_snapshot(session)
        handle = SessionHandle(session=session)
        with state_lock:
            sessions[session.session_id] = handle
        return {"session_id": session.session_id}

    def _handle(session_id: str) -> SessionHandle:
        handle = sessions.get(session_id)
        if handle is None:
            raise HTTPException(404, "unknown session")
        return handle

    @app.post("/sessions/{session_id}/messages")
    def post_message(session_id: str, body: MessageBody):
        handle = _handle(session_id)
        if not body.text.strip():
            raise HTTPException(422, "message text is empty")
        with state_lock:
            if handle.in_flight >= TURN_QUEUE_DEPTH:
                raise HTTPException(409, "turn queue full")
            handle.in_flight += 1
        session = handle.session
        if body.active_file is not None:
            session.active_file = body.active_file
        if body.cursor_line is not None:
            session.cursor_line = body.cursor_line

        def event_stream():
            try:
                try:
                    result = handle_user_message(session, body.text)
                    events = list(result.events)
                except EmptyPrompt:
                    yield _sse("turn_error", handle.next_seq(), session_id, {"error": "empty prompt"})
                    yield _sse("turn_done", handle.next_seq(), session_id, {})
                    return
                except AgentUnavailable as exc:
                    yield _sse(
                        "turn_error",
                        handle.next_seq(),
                        session_id,
                        {"error": str(exc), "retriable": exc.retriable},
                    )
                    yield _sse("turn_done", handle.next_seq(), session_id, {})
                    return
                for event in events:
                    yield _sse(event.kind.value, handle.next_seq(), session_id, event.payload)
                yield _sse("turn_done", handle.next_seq(), session_id, {})
                if config.transcript_export is not None:
                    _export_transcript(config.transcript_export, session)
            finally:
                with state_lock:
                    handle.in_flight -= 1

        return StreamingResponse(event_stream(), media_type="text/event-stream")

    @app.get("/sessions/{session_id}/findings")
    def get_findings(session_id: str):
        handle = _handle(session_id)
        snapshot = handle.session.snapshot
        records = [finding_to_record(f) for f in snapshot.findings]
        return Response(json.dumps(records, indent=2) + "\n", media_type="application/json")

    @app.post("/sessions/{session_id}/refresh")
    def refresh(session_id: str):
        handle = _handle(session_id)
        snapshot = refresh_linter_snapshot(handle.session)
        return {"findings": len(snapshot.findings), "degraded": snapshot.degraded}

    @app.get("/health")
    def health():
        degraded = any(h.session.snapshot.degraded for h in sessions.values())
        ages = [
            time.time() - h.session.snapshot.taken_at
            for h in sessions.values()
            if h.session.snapshot.taken_at
        ]
        return {
            "status": "degraded" if degraded else "ok",
            "model_client": config.model_client_kind,
            "snapshot_age_s": max(ages) if ages else None,
        }

    return app


def _sse(kind: str, seq: int, session_id: str, payload: dict) -> str:
    data = {"session_id": session_id, "seq": seq, "kind": kind, "payload": payload}
    return f"event: {kind}\ndata: {json.dumps(data)}\n\n"


def _export_transcript(path: Path, session: Session) -> None:
    lines = [f"{turn.role.value}: {turn.text}" for turn in session.chat.turns]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
