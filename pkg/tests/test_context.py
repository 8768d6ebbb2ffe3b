"""Code window, project context, log relevance, and the 4000-char budget."""

from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from a11yassist.context import (
    ChatContext,
    ChatTurn,
    CodeWindow,
    ContextBundle,
    InvalidCursor,
    ProjectContext,
    PromptTooLarge,
    Role,
    apply_budget,
    extract_code_window,
    gather_project_context,
    get_log_context,
    serialize_bundle,
)
from a11yassist.linter import lint_text


def numbered_file(n):
    return "\n".join(f"line {i}" for i in range(1, n + 1))


class TestCodeWindow:
    def test_small_file_returned_whole(self):
        window = extract_code_window(numbered_file(30), 10)
        assert [n for n, _ in window.lines] == list(range(1, 31))

    def test_centered_split_50_above_49_below(self):
        window = extract_code_window(numbered_file(1000), 500)
        numbers = [n for n, _ in window.lines]
        assert numbers[0] == 450 and numbers[-1] == 549
        assert len(numbers) == 100

    def test_clamp_redistributes_at_top(self):
        window = extract_code_window(numbered_file(1000), 3)
        numbers = [n for n, _ in window.lines]
        assert numbers[0] == 1 and numbers[-1] == 100

    def test_clamp_redistributes_at_bottom(self):
        window = extract_code_window(numbered_file(1000), 999)
        numbers = [n for n, _ in window.lines]
        assert numbers[0] == 901 and numbers[-1] == 1000

    def test_cursor_out_of_range(self):
        with pytest.raises(InvalidCursor):
            extract_code_window(numbered_file(10), 11)
        with pytest.raises(InvalidCursor):
            extract_code_window(numbered_file(10), 0)

    @given(st.integers(1, 3000), st.data())
    @settings(max_examples=200, deadline=None)
    def test_window_property(self, size, data):
        cursor = data.draw(st.integers(1, size))
        window = extract_code_window(numbered_file(size), cursor)
        numbers = [n for n, _ in window.lines]
        assert len(numbers) <= 100
        assert numbers == list(range(numbers[0], numbers[0] + len(numbers)))
        assert numbers[0] <= cursor <= numbers[-1]
        if size >= 100:
            assert len(numbers) == 100


class TestProjectContext:
    def test_readme_and_index_files(self, tmp_path):
        (tmp_path / "README.md").write_text("top level readme")
        (tmp_path / "index.html").write_text("<html></html>")
        src = tmp_path / "src"
        src.mkdir()
        (src / "index.js").write_text("console.log(1)")
        (src / "other.js").write_text("ignored")
        ctx = gather_project_context(tmp_path)
        assert [p for p, _ in ctx.excerpts] == ["README.md", "index.html", "src/index.js"]

    def test_large_readme_truncated_with_marker(self, tmp_path):
        (tmp_path / "README.md").write_text("x" * 10_000)
        ctx = gather_project_context(tmp_path)
        _, text = ctx.excerpts[0]
        assert len(text) == 1500
        assert text.endswith("…[truncated]")

    def test_unreadable_root(self, tmp_path):
        with pytest.raises(OSError):
            gather_project_context(tmp_path / "missing")


def findings_for(source, file_path):
    return lint_text(source, file_path)


class TestLogContext:
    def test_file_token_match(self):
        findings = findings_for('<input type="text">', "form.html")
        chat = ChatContext((ChatTurn(Role.USER, "fix the inputs in form.html"),))
        assert get_log_context(findings, chat) == findings

    def test_no_overlap_empty(self):
        findings = findings_for('<img src="a.png">', "gallery.html")
        chat = ChatContext((ChatTurn(Role.USER, "style the nav menu"),))
        assert get_log_context(findings, chat) == []

    def test_cap_ten_most_severe_first(self):
        source = '<img src="a.png">' * 15 + '<a href="/x">here</a>' * 15
        findings = findings_for(source, "page.html")
        chat = ChatContext((ChatTurn(Role.USER, "clean up page.html"),))
        out = get_log_context(findings, chat)
        assert len(out) == 10
        assert all(f.impact.value == "critical" for f in out)

    def test_responder_code_block_tokens_count(self):
        findings = findings_for('<input type="text">', "subscribe.html")
        chat = ChatContext(
            (
                ChatTurn(Role.USER, "make me a form"),
                ChatTurn(Role.RESPONDER, "```html\n<!-- subscribe.html -->\n```"),
            )
        )
        assert get_log_context(findings, chat) == findings

    def test_subset_invariant(self):
        findings = findings_for('<img src="a.png">', "a.html")
        chat = ChatContext((ChatTurn(Role.USER, "a.html please"),))
        out = get_log_context(findings, chat)
        assert all(f in findings for f in out)


def make_bundle(prompt="add a button", chat_turns=3, code_lines=40, excerpts=2, findings=0):
    chat = ChatContext(
        tuple(
            ChatTurn(Role.USER if i % 2 == 0 else Role.RESPONDER, f"turn {i} " + "x" * 50)
            for i in range(chat_turns)
        )
    )
    window = (
        extract_code_window(numbered_file(max(code_lines, 1)), 1)
        if code_lines
        else None
    )
    project = ProjectContext(
        tuple((f"file{i}.md", "content " * 30) for i in range(excerpts))
    )
    log = tuple(findings_for('<img src="a.png">' * findings, "a.html")) if findings else ()
    return ContextBundle(
        user_prompt=prompt, code_window=window, chat=chat, project=project, log_excerpt=log
    )


class TestBudget:
    def test_under_budget_unchanged(self):
        bundle = make_bundle(chat_turns=1, code_lines=5, excerpts=1)
        assert apply_budget(bundle) == bundle

    def test_over_budget_trimmed_prompt_intact(self):
        bundle = make_bundle(prompt="P" * 300, chat_turns=40, code_lines=100, excerpts=5)
        assert len(serialize_bundle(bundle)) > 4000
        out = apply_budget(bundle)
        assert len(serialize_bundle(out)) <= 4000
        assert out.user_prompt == bundle.user_prompt

    def test_oldest_chat_turns_dropped_first(self):
        bundle = make_bundle(chat_turns=60, code_lines=10, excerpts=1)
        out = apply_budget(bundle)
        if out.chat.turns:
            assert out.chat.turns[-1] == bundle.chat.turns[-1]
        assert out.code_window is not None  # window survives while chat absorbs the cut

    def test_window_trimmed_symmetrically_when_alone(self):
        window = extract_code_window(numbered_file(100), 50)
        bundle = ContextBundle(user_prompt="trim me", code_window=window)
        out = apply_budget(bundle, budget_chars=600)
        numbers = [n for n, _ in out.code_window.lines]
        assert numbers[0] <= 50 <= numbers[-1]
        assert len(serialize_bundle(out)) <= 600

    def test_prompt_too_large(self):
        with pytest.raises(PromptTooLarge):
            apply_budget(ContextBundle(user_prompt="x" * 5000))

    def test_idempotent(self):
        bundle = make_bundle(prompt="p" * 200, chat_turns=30, code_lines=100, excerpts=4)
        once = apply_budget(bundle)
        assert apply_budget(once) == once

    @given(
        st.text(min_size=1, max_size=400).filter(str.strip),
        st.integers(0, 30),
        st.integers(0, 300),
        st.integers(0, 6),
        st.integers(0, 12),
    )
    @settings(max_examples=150, deadline=None)
    def test_budget_property(self, prompt, turns, code, excerpts, findings):
        bundle = make_bundle(prompt, turns, code, excerpts, findings)
        out = apply_budget(bundle)
        assert len(serialize_bundle(out)) <= 4000
        assert out.user_prompt == prompt
        assert apply_budget(out) == out


def test_serialization_section_order():
    bundle = make_bundle(findings=1)
    text = serialize_bundle(bundle)
    positions = [text.index(h) for h in ("## PROMPT", "## CODE", "## FINDINGS", "## PROJECT", "## HISTORY")]
    assert positions == sorted(positions)


def test_code_window_contiguity_enforced():
    with pytest.raises(ValueError):
        CodeWindow("f", 1, ((1, "a"), (3, "b")))
