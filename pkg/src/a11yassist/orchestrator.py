"""Session state and the end-to-end chat turn flow.

A turn runs strictly in order: append the user turn, assemble the
bounded context, run the responder, pull relevant linter findings, run
the correction agent, then the reminder agent, emitting delivery events
as it goes. Linter snapshots refresh independently and are replaced
atomically so concurrent readers never see a partial finding set.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .agents import (
    AgentResponse,
    AgentUnavailable,
    ModelClient,
    Reminder,
    correction_run,
    reminder_run,
    responder_run,
)
from .context import (
    ChatContext,
    ChatTurn,
    ContextBundle,
    ProjectContext,
    Role,
    apply_budget,
    extract_code_window,
    gather_project_context,
    get_log_context,
)
from .linter.report import lint_path
from .linter.types import Finding

DEFAULT_MENTION_TOKEN = "@codea11y"
DEFAULT_REFRESH_INTERVAL_S = 5.0


class EmptyPrompt(ValueError):
    pass


class EventKind(str, Enum):
    RESPONDER_MESSAGE = "responder_message"
    CORRECTION_MESSAGE = "correction_message"
    REMINDER_NOTIFICATION = "reminder_notification"
    TURN_ERROR = "turn_error"


class NotificationStyle(str, Enum):
    POPUP = "popup"
    MODAL = "modal"


@dataclass(frozen=True)
class TurnEvent:
    kind: EventKind
    payload: dict


@dataclass(frozen=True)
class TurnResult:
    responder: AgentResponse
    correction: AgentResponse | None
    reminder: Reminder | None
    events: tuple[TurnEvent, ...]


@dataclass
class Snapshot:
    findings: tuple[Finding, ...] = ()
    taken_at: float = 0.0
    degraded: bool = False


@dataclass
class Session:
    project_root: Path | None
    client: ModelClient
    session_id: str = field(default_factory=lambda: str(uuid.uuid4()))
    notification_style: NotificationStyle = NotificationStyle.MODAL
    strict_invocation: bool = False
    mention_token: str = DEFAULT_MENTION_TOKEN
    budget_chars: int = 4000
    chat: ChatContext = field(default_factory=ChatContext)
    active_file: str | None = None
    cursor_line: int = 1
    snapshot: Snapshot = field(default_factory=Snapshot)
    turn_lock: threading.Lock = field(default_factory=threading.Lock)


def parse_invocation(
    raw_message: str,
    mention_token: str = DEFAULT_MENTION_TOKEN,
    strict: bool = False,
) -> tuple[bool, str]:
    """Strip a leading mention token; decide whether the pipeline runs.

    With strict mode off (the default) every message invokes the
    pipeline, mentioned or not.
    """
    stripped = raw_message.strip()
    if stripped.lower().startswith(mention_token.lower()):
        rest = stripped[len(mention_token) :]
        if rest == "" or rest[0].isspace():
            return True, rest.strip()
    return (not strict), stripped


def refresh_linter_snapshot(session: Session) -> Snapshot:
    """Re-lint the project; on IO failure keep the old snapshot, flag degraded."""
    if session.project_root is None:
        new = Snapshot(findings=(), taken_at=time.time())
        session.snapshot = new
        return new
    try:
        findings = tuple(lint_path(Path(session.project_root)))
    except OSError:
        degraded = Snapshot(
            findings=session.snapshot.findings,
            taken_at=session.snapshot.taken_at,
            degraded=True,
        )
        session.snapshot = degraded
        return degraded
    new = Snapshot(findings=findings, taken_at=time.time())
    # Single attribute assignment: readers observe old or new, never a mix.
    session.snapshot = new
    return new


def _assemble_bundle(session: Session, prompt: str) -> ContextBundle:
    code_window = None
    if session.active_file and session.project_root is not None:
        path = Path(session.project_root) / session.active_file
        if path.is_file():
            code_window = extract_code_window(
                path.read_text(encoding="utf-8", errors="replace"),
                session.cursor_line,
                file_path=session.active_file,
            )
    project = (
        gather_project_context(session.project_root)
        if session.project_root is not None
        else ProjectContext()
    )
    bundle = ContextBundle(
        user_prompt=prompt,
        code_window=code_window,
        chat=session.chat,
        project=project,
    )
    return apply_budget(bundle, session.budget_chars)


def handle_user_message(session: Session, raw_message: str) -> TurnResult:
    """Run one full chat turn; see module docstring for the ordering."""
    invoked, prompt = parse_invocation(
        raw_message, session.mention_token, session.strict_invocation
    )
    if not prompt:
        raise EmptyPrompt("message contains no prompt text")

    with session.turn_lock:
        chat_before = session.chat
        session.chat = session.chat.append(ChatTurn(Role.USER, prompt, time.time()))
        events: list[TurnEvent] = []

        try:
            bundle = _assemble_bundle(session, prompt)
            response = responder_run(bundle, session.client)
        except AgentUnavailable as exc:
            # Leave exactly the user turn appended; no partial agent turns.
            session.chat = chat_before.append(ChatTurn(Role.USER, prompt, time.time()))
            events.append(
                TurnEvent(EventKind.TURN_ERROR, {"error": str(exc), "retriable": exc.retriable})
            )
            raise
        session.chat = session.chat.append(
            ChatTurn(Role.RESPONDER, response.markdown, time.time())
        )
        events.append(
            TurnEvent(EventKind.RESPONDER_MESSAGE, {"markdown": response.markdown})
        )

        correction: AgentResponse | None = None
        if invoked:
            log_excerpt = get_log_context(list(session.snapshot.findings), session.chat)
            try:
                correction = correction_run(log_excerpt, session.chat, session.client)
            except AgentUnavailable:
                correction = None  # correction failure never blocks delivery
            if correction is not None:
                session.chat = session.chat.append(
                    ChatTurn(Role.CORRECTION, correction.markdown, time.time())
                )
                events.append(
                    TurnEvent(
                        EventKind.CORRECTION_MESSAGE, {"markdown": correction.markdown}
                    )
                )

        reminder: Reminder | None = None
        if invoked:
            reminder = reminder_run(session.chat, response, session.client)
            if reminder is not None:
                events.append(
                    TurnEvent(
                        EventKind.REMINDER_NOTIFICATION,
                        {
                            "text": reminder.text,
                            "style": session.notification_style.value,
                            "source": reminder.source.value,
                        },
                    )
                )

        return TurnResult(
            responder=response,
            correction=correction,
            reminder=reminder,
            events=tuple(events),
        )
