"""Responder, Correction, and Reminder agents over a model client.

Each agent is a prompt template plus a client call. The Reminder agent
is backstopped by a deterministic placeholder detector so known stub
patterns in generated code always produce a reminder, even when the
model answers with its "No reminders needed." sentinel.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Protocol

from .context import ChatContext, ContextBundle, serialize_bundle
from .linter.types import Finding

REMINDER_SENTINEL = "No reminders needed."
REMINDER_MAX_CHARS = 200

RESPONDER_DIRECTIVES = (
    "I am unfamiliar with accessibility and need to write code that conforms "
    "with WCAG 2.1 level AA criteria.",
    "Be an accessibility coach that makes me account for all accessibility "
    "requirements.",
    "Use reputable sources such as w3.org, webaim.org and provide links and "
    "references for additional learning.",
    "Don't give placeholder variables but tell me where to give meaningful values.",
    'Prioritise my current request and don\'t mention accessibility if I give a '
    'generic request like "Hi".',
)

CORRECTION_DIRECTIVES = (
    "Review the accessibility checker log and provide feedback to fix errors "
    "relevant to current chat context.",
    "If a log error relevant to current chat context occurs, provide a code "
    "snippet to fix it.",
)

REMINDER_DIRECTIVES = (
    "Is there an additional step required by the developer to meet accessibility "
    "standards after pasting code?",
    'Reminder should be single line. Be conservative in your response, if not '
    'needed, say "No reminders needed."',
    "For example, remind the developer to replace the placeholder attributes "
    "with meaningful values or labels, or visually inspect element for colour "
    "contrast when needed.",
)


class AgentKind(str, Enum):
    RESPONDER = "responder"
    CORRECTION = "correction"
    REMINDER = "reminder"


@dataclass(frozen=True)
class PromptTemplate:
    agent: AgentKind
    directives: tuple[str, ...]

    def render(self, body: str) -> str:
        header = "\n".join(f"- {d}" for d in self.directives)
        return f"[{self.agent.value} instructions]\n{header}\n\n{body}"


TEMPLATES = {
    AgentKind.RESPONDER: PromptTemplate(AgentKind.RESPONDER, RESPONDER_DIRECTIVES),
    AgentKind.CORRECTION: PromptTemplate(AgentKind.CORRECTION, CORRECTION_DIRECTIVES),
    AgentKind.REMINDER: PromptTemplate(AgentKind.REMINDER, REMINDER_DIRECTIVES),
}


class AgentUnavailable(RuntimeError):
    def __init__(self, message: str, retriable: bool = True) -> None:
        super().__init__(message)
        self.retriable = retriable


class ModelClient(Protocol):
    def complete(self, prompt: str) -> str: ...


@dataclass
class ScriptEntry:
    match: str
    response: str
    regex: bool = False

    def matches(self, prompt: str) -> bool:
        if self.regex:
            return re.search(self.match, prompt, re.DOTALL) is not None
        return self.match in prompt


class ScriptedClient:
    """Deterministic stand-in for the remote model; first match wins.

    The script must end with a fallback entry (empty substring or a
    match-anything regex) so every prompt has an answer.
    """

    def __init__(self, entries: list[ScriptEntry]) -> None:
        if not entries:
            raise ValueError("script needs at least a fallback entry")
        last = entries[-1]
        if last.match not in ("", ".*") and not (last.regex and last.match == ".*"):
            raise ValueError("final script entry must be a catch-all fallback")
        self.entries = entries
        self.call_count = 0
        self.prompts: list[str] = []

    @classmethod
    def from_file(cls, path: Path) -> "ScriptedClient":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        entries = [
            ScriptEntry(
                match=item["match"],
                response=item["response"],
                regex=bool(item.get("regex", False)),
            )
            for item in raw
        ]
        return cls(entries)

    def complete(self, prompt: str) -> str:
        self.call_count += 1
        self.prompts.append(prompt)
        for entry in self.entries:
            if entry.matches(prompt):
                return entry.response
        return self.entries[-1].response


MODEL_API_KEY_ENV = "A11YASSIST_MODEL_API_KEY"


class RemoteClient:
    """Minimal chat-completion client: prompt in, text out.

    Credentials come from the environment only, never from config files.
    """

    def __init__(self, endpoint: str, model: str = "default", timeout_s: float = 60.0) -> None:
        self.endpoint = endpoint
        self.model = model
        self.timeout_s = timeout_s
        self.api_key = os.environ.get(MODEL_API_KEY_ENV, "")

    def complete(self, prompt: str) -> str:
        import httpx

        try:
            resp = httpx.post(
                self.endpoint,
                json={"model": self.model, "prompt": prompt},
                headers={"Authorization": f"Bearer {self.api_key}"} if self.api_key else {},
                timeout=self.timeout_s,
            )
            resp.raise_for_status()
        except Exception as exc:
            raise AgentUnavailable(f"model endpoint failed: {exc}") from exc
        return resp.json().get("text", "")


_CODE_BLOCK_RE = re.compile(r"```([^\n`]*)\n(.*?)```", re.DOTALL)
_URL_RE = re.compile(r"https?://[^\s)\]>\"']+")


@dataclass(frozen=True)
class AgentResponse:
    markdown: str
    code_blocks: tuple[tuple[str, str], ...]
    citations: tuple[str, ...]

    @classmethod
    def from_markdown(cls, markdown: str) -> "AgentResponse":
        blocks = tuple(
            (lang.strip(), code) for lang, code in _CODE_BLOCK_RE.findall(markdown)
        )
        citations = tuple(dict.fromkeys(_URL_RE.findall(markdown)))
        return cls(markdown=markdown, code_blocks=blocks, citations=citations)


class PlaceholderKind(str, Enum):
    EMPTY_ATTR = "empty_attr"
    TODO_COMMENT = "todo_comment"
    TEMPLATE_IDENTIFIER = "template_identifier"
    LEXICON_PHRASE = "lexicon_phrase"


@dataclass(frozen=True)
class PlaceholderFinding:
    kind: PlaceholderKind
    block_index: int
    line: int  # 1-based within the code block
    excerpt: str


_EMPTY_ATTR_RE = re.compile(r'\b(alt|aria-label|aria-labelledby|title|label)\s*=\s*(""|\'\')')
_TODO_RE = re.compile(
    r"(?://|#|<!--|/\*)\s*"
    r"(?:TODO\b[^\n]*|FIXME\b[^\n]*|add (?:this|your|the)\b[^\n]*?)"
    r"\s*(?:-->|\*/)?\s*$",
    re.IGNORECASE,
)
_TEMPLATE_ATTR_RE = re.compile(
    r"\b([\w-]*(?:alt|label|title|src)[\w-]*)\s*=\s*\{\s*(\w+)\s*\}", re.IGNORECASE
)
_EMPTY_LABEL_RE = re.compile(r"<label\b[^>]*>\s*</label>", re.IGNORECASE)

# Kept narrow on purpose: `placeholder=` is a legitimate HTML attribute,
# so generic words would false-positive on clean code.
PLACEHOLDER_PHRASES = (
    "your actual image attributes",
    "add your text here",
    "replace these with the actual values",
    "your text here",
    "lorem ipsum",
)


def _identifier_defined(name: str, code: str) -> bool:
    pattern = re.compile(
        rf"\b(?:const|let|var|def)\s+{re.escape(name)}\b|\b{re.escape(name)}\s*[:=][^=]"
    )
    return pattern.search(code) is not None


def detect_placeholders(
    code_blocks: tuple[tuple[str, str], ...] | list[tuple[str, str]],
) -> list[PlaceholderFinding]:
    """Flag stub values in generated code that need developer follow-up."""
    findings: list[PlaceholderFinding] = []
    for index, (_lang, code) in enumerate(code_blocks):
        for line_no, line in enumerate(code.splitlines(), start=1):
            for m in _EMPTY_ATTR_RE.finditer(line):
                findings.append(
                    PlaceholderFinding(PlaceholderKind.EMPTY_ATTR, index, line_no, m.group(0))
                )
            if _EMPTY_LABEL_RE.search(line):
                findings.append(
                    PlaceholderFinding(
                        PlaceholderKind.EMPTY_ATTR,
                        index,
                        line_no,
                        _EMPTY_LABEL_RE.search(line).group(0),
                    )
                )
            m = _TODO_RE.search(line)
            if m:
                findings.append(
                    PlaceholderFinding(
                        PlaceholderKind.TODO_COMMENT, index, line_no, m.group(0).strip()
                    )
                )
            for m in _TEMPLATE_ATTR_RE.finditer(line):
                if not _identifier_defined(m.group(2), code):
                    findings.append(
                        PlaceholderFinding(
                            PlaceholderKind.TEMPLATE_IDENTIFIER, index, line_no, m.group(0)
                        )
                    )
            lowered = line.lower()
            for phrase in PLACEHOLDER_PHRASES:
                if phrase in lowered:
                    start = lowered.index(phrase)
                    findings.append(
                        PlaceholderFinding(
                            PlaceholderKind.LEXICON_PHRASE,
                            index,
                            line_no,
                            line[start : start + len(phrase)],
                        )
                    )
    return findings


class ReminderSource(str, Enum):
    MODEL = "model"
    DETECTOR = "detector"
    BOTH = "both"


@dataclass(frozen=True)
class Reminder:
    text: str
    source: ReminderSource

    def __post_init__(self) -> None:
        if "\n" in self.text:
            raise ValueError("reminder must be a single line")
        if len(self.text) > REMINDER_MAX_CHARS:
            raise ValueError(f"reminder longer than {REMINDER_MAX_CHARS} chars")


def _single_line(text: str) -> str:
    collapsed = "; ".join(part.strip() for part in text.splitlines() if part.strip())
    if len(collapsed) > REMINDER_MAX_CHARS:
        collapsed = collapsed[: REMINDER_MAX_CHARS - 1] + "…"
    return collapsed


def responder_run(bundle: ContextBundle, client: ModelClient) -> AgentResponse:
    """Answer the user's request with accessibility-compliant code."""
    prompt = TEMPLATES[AgentKind.RESPONDER].render(serialize_bundle(bundle))
    try:
        text = client.complete(prompt)
    except AgentUnavailable:
        raise
    except Exception as exc:
        raise AgentUnavailable(f"responder client failed: {exc}") from exc
    return AgentResponse.from_markdown(text)


def _render_findings(findings: list[Finding]) -> str:
    return "\n".join(
        f"- [{f.impact.value}] {f.rule_id} in {f.file_path} at {f.element.selector}: "
        f"{f.message}"
        for f in findings
    )


def correction_run(
    log_excerpt: list[Finding], chat: ChatContext, client: ModelClient
) -> AgentResponse | None:
    """Surface fixes for linter findings relevant to the conversation.

    Never calls the client when there is nothing to correct.
    """
    if not log_excerpt:
        return None
    history = "\n".join(f"{t.role.value}: {t.text}" for t in chat.turns)
    body = f"## LOG\n{_render_findings(log_excerpt)}\n\n## HISTORY\n{history}"
    prompt = TEMPLATES[AgentKind.CORRECTION].render(body)
    try:
        text = client.complete(prompt)
    except AgentUnavailable:
        raise
    except Exception as exc:
        raise AgentUnavailable(f"correction client failed: {exc}") from exc
    return AgentResponse.from_markdown(text)


def reminder_run(
    chat: ChatContext, last_response: AgentResponse, client: ModelClient | None
) -> Reminder | None:
    """Decide whether a manual follow-up step needs flagging.

    Fires when the model names a step (non-sentinel output) or the
    placeholder detector finds a stub; absent only when both are quiet.
    A client failure degrades to detector-only mode.
    """
    detector_hits = detect_placeholders(last_response.code_blocks)
    model_text: str | None = None
    if client is not None:
        history = "\n".join(f"{t.role.value}: {t.text}" for t in chat.turns)
        body = f"## LAST RESPONSE\n{last_response.markdown}\n\n## HISTORY\n{history}"
        prompt = TEMPLATES[AgentKind.REMINDER].render(body)
        try:
            raw = client.complete(prompt).strip()
            if raw and raw != REMINDER_SENTINEL:
                model_text = raw
        except Exception:
            model_text = None  # detector-only mode

    if model_text and detector_hits:
        source = ReminderSource.BOTH
    elif model_text:
        source = ReminderSource.MODEL
    elif detector_hits:
        source = ReminderSource.DETECTOR
    else:
        return None

    if model_text:
        text = _single_line(model_text)
    else:
        kinds = sorted({hit.kind.value for hit in detector_hits})
        excerpt = detector_hits[0].excerpt
        text = _single_line(
            f"Replace the placeholder values in the suggested code "
            f"(e.g. {excerpt}) with meaningful content ({', '.join(kinds)})."
        )
    return Reminder(text=text, source=source)
