"""Prompt-context assembly under a fixed character budget.

The serialized context has five sections in fixed order (PROMPT, CODE,
FINDINGS, PROJECT, HISTORY) so budget accounting is reproducible
byte-for-byte. When the serialization exceeds the budget, material is
dropped in a fixed priority order; the user prompt is never touched.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path

from .linter.types import Finding, IMPACT_RANK

DEFAULT_BUDGET_CHARS = 4000
CODE_WINDOW_LINES = 100
PROJECT_FILE_CAP_CHARS = 1500
LOG_CONTEXT_CAP = 10
BUDGET_PROTECTED_FINDINGS = 3
TRUNCATION_MARKER = "…[truncated]"


class InvalidCursor(ValueError):
    pass


class PromptTooLarge(ValueError):
    pass


class IoError(OSError):
    pass


class Role(str, Enum):
    USER = "user"
    RESPONDER = "responder"
    CORRECTION = "correction"


@dataclass(frozen=True)
class ChatTurn:
    role: Role
    text: str
    timestamp: float = 0.0

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("chat turn text must be non-empty")


@dataclass(frozen=True)
class ChatContext:
    turns: tuple[ChatTurn, ...] = ()

    def append(self, turn: ChatTurn) -> "ChatContext":
        return ChatContext(self.turns + (turn,))

    def last_user_turns(self, n: int) -> list[ChatTurn]:
        return [t for t in self.turns if t.role is Role.USER][-n:]

    def last_responder_turn(self) -> ChatTurn | None:
        for turn in reversed(self.turns):
            if turn.role is Role.RESPONDER:
                return turn
        return None


@dataclass(frozen=True)
class CodeWindow:
    file_path: str
    cursor_line: int
    lines: tuple[tuple[int, str], ...]  # (line_no, text), contiguous

    def __post_init__(self) -> None:
        if not self.lines:
            return
        numbers = [n for n, _ in self.lines]
        if numbers != list(range(numbers[0], numbers[0] + len(numbers))):
            raise ValueError("window lines must be contiguous")
        if len(self.lines) > CODE_WINDOW_LINES:
            raise ValueError(f"window exceeds {CODE_WINDOW_LINES} lines")
        if not numbers[0] <= self.cursor_line <= numbers[-1]:
            raise ValueError("cursor outside window")


@dataclass(frozen=True)
class ProjectContext:
    excerpts: tuple[tuple[str, str], ...] = ()  # (file_path, text)


@dataclass(frozen=True)
class ContextBundle:
    user_prompt: str
    code_window: CodeWindow | None = None
    chat: ChatContext = field(default_factory=ChatContext)
    project: ProjectContext = field(default_factory=ProjectContext)
    log_excerpt: tuple[Finding, ...] = ()

    @property
    def total_chars(self) -> int:
        return len(serialize_bundle(self))


def extract_code_window(file_text: str, cursor_line: int, file_path: str = "<memory>") -> CodeWindow:
    """The 100 lines centered on the cursor: 50 above, 49 below.

    Clamping at a file boundary redistributes the remainder to the other
    side while lines remain.
    """
    lines = file_text.splitlines()
    if not 1 <= cursor_line <= max(len(lines), 1):
        raise InvalidCursor(f"cursor line {cursor_line} outside file of {len(lines)} lines")
    total = len(lines)
    if total <= CODE_WINDOW_LINES:
        first, last = 1, total
    else:
        first = cursor_line - 50
        last = cursor_line + 49
        if first < 1:
            last += 1 - first
            first = 1
        if last > total:
            first -= last - total
            last = total
        first = max(first, 1)
    numbered = tuple((n, lines[n - 1]) for n in range(first, last + 1))
    return CodeWindow(file_path=file_path, cursor_line=cursor_line, lines=numbered)


def gather_project_context(project_root: Path) -> ProjectContext:
    """README* at the root plus index.* at root and first-level dirs."""
    root = Path(project_root)
    if not root.is_dir():
        raise IoError(f"project root {root} is not a readable directory")
    candidates: list[Path] = []
    for entry in sorted(root.iterdir()):
        name = entry.name.lower()
        if entry.is_file() and (name.startswith("readme") or name.startswith("index.")):
            candidates.append(entry)
        elif entry.is_dir() and not entry.name.startswith("."):
            for sub in sorted(entry.iterdir()):
                if sub.is_file() and sub.name.lower().startswith("index."):
                    candidates.append(sub)
    excerpts = []
    for path in candidates:
        try:
            text = path.read_text(encoding="utf-8", errors="replace")
        except OSError:
            continue
        if len(text) > PROJECT_FILE_CAP_CHARS:
            text = text[: PROJECT_FILE_CAP_CHARS - len(TRUNCATION_MARKER)] + TRUNCATION_MARKER
        excerpts.append((path.relative_to(root).as_posix(), text))
    return ProjectContext(excerpts=tuple(excerpts))


_TOKEN_RE = re.compile(r"[A-Za-z0-9_\-./]{2,}")


def _chat_reference_tokens(chat: ChatContext) -> set[str]:
    texts = [t.text for t in chat.last_user_turns(2)]
    responder = chat.last_responder_turn()
    if responder is not None:
        blocks = re.findall(r"```[^\n]*\n(.*?)```", responder.text, re.DOTALL)
        texts.extend(blocks)
    tokens: set[str] = set()
    for text in texts:
        tokens.update(tok.lower() for tok in _TOKEN_RE.findall(text))
    return tokens


def get_log_context(findings: list[Finding], chat: ChatContext) -> list[Finding]:
    """Findings relevant to the recent conversation, most severe first.

    Relevance: the finding's file name or selector tokens appear in the
    last two user turns or the last responder code block. Capped at 10.
    """
    tokens = _chat_reference_tokens(chat)
    relevant = []
    for finding in findings:
        file_tokens = {
            finding.file_path.lower(),
            Path(finding.file_path).name.lower(),
            Path(finding.file_path).stem.lower(),
        }
        selector_tokens = {
            tok.lower() for tok in _TOKEN_RE.findall(finding.element.selector)
        }
        selector_tokens.discard("nth-of-type")
        if (file_tokens | selector_tokens) & tokens:
            relevant.append(finding)
    relevant.sort(key=lambda f: (IMPACT_RANK[f.impact], f.sort_key()))
    return relevant[:LOG_CONTEXT_CAP]


def _render_finding(finding: Finding) -> str:
    return (
        f"- [{finding.impact.value}] {finding.rule_id} {finding.file_path}"
        f":{finding.element.span.start_line} ({finding.state.value}) {finding.message}"
    )


def serialize_bundle(bundle: ContextBundle) -> str:
    parts = ["## PROMPT\n" + bundle.user_prompt]
    code_lines = []
    if bundle.code_window is not None:
        header = f"## CODE ({bundle.code_window.file_path})"
        code_lines = [f"{n}: {text}" for n, text in bundle.code_window.lines]
        parts.append("\n".join([header, *code_lines]))
    if bundle.log_excerpt:
        parts.append("\n".join(["## FINDINGS", *(_render_finding(f) for f in bundle.log_excerpt)]))
    if bundle.project.excerpts:
        chunks = [f"### {path}\n{text}" for path, text in bundle.project.excerpts]
        parts.append("\n".join(["## PROJECT", *chunks]))
    if bundle.chat.turns:
        rendered = [f"{t.role.value}: {t.text}" for t in bundle.chat.turns]
        parts.append("\n".join(["## HISTORY", *rendered]))
    return "\n\n".join(parts)


def _shrink_window(window: CodeWindow) -> CodeWindow | None:
    """Drop the line farthest from the cursor; None when nothing is left."""
    if len(window.lines) <= 1:
        return None
    first_no = window.lines[0][0]
    last_no = window.lines[-1][0]
    above = window.cursor_line - first_no
    below = last_no - window.cursor_line
    lines = window.lines[1:] if above >= below else window.lines[:-1]
    return CodeWindow(window.file_path, window.cursor_line, lines)


def apply_budget(bundle: ContextBundle, budget_chars: int = DEFAULT_BUDGET_CHARS) -> ContextBundle:
    """Trim the bundle until its serialization fits the budget.

    Drop order: oldest chat turns, project excerpts, code-window lines
    farthest from the cursor, then findings beyond the top three. The
    user prompt is never dropped or truncated.
    """
    prompt_only = serialize_bundle(ContextBundle(user_prompt=bundle.user_prompt))
    if len(prompt_only) > budget_chars:
        raise PromptTooLarge(
            f"user prompt alone serializes to {len(prompt_only)} chars "
            f"(budget {budget_chars})"
        )
    current = bundle
    while len(serialize_bundle(current)) > budget_chars:
        if current.chat.turns:
            current = replace(current, chat=ChatContext(current.chat.turns[1:]))
        elif current.project.excerpts:
            current = replace(
                current, project=ProjectContext(current.project.excerpts[:-1])
            )
        elif current.code_window is not None:
            shrunk = _shrink_window(current.code_window)
            current = replace(current, code_window=shrunk)
        elif current.log_excerpt:
            # Findings beyond the top three go first; if the prompt plus
            # three findings still overflows, the rest go too.
            current = replace(current, log_excerpt=current.log_excerpt[:-1])
        else:
            break  # only the prompt remains, which fits by precondition
    return current
