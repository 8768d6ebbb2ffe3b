"""Agent pipeline: templates, scripted client, detector, reminder contract."""

from pathlib import Path

import pytest

from a11yassist.agents import (
    AgentResponse,
    PlaceholderKind,
    Reminder,
    REMINDER_SENTINEL,
    RESPONDER_DIRECTIVES,
    ReminderSource,
    ScriptEntry,
    ScriptedClient,
    correction_run,
    detect_placeholders,
    reminder_run,
    responder_run,
)
from a11yassist.context import ChatContext, ChatTurn, ContextBundle, Role
from a11yassist.linter import lint_text
from a11yassist.scripts import default_script

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


class TestResponder:
    def test_prompt_embeds_every_directive_exactly_once(self):
        client = default_script()
        responder_run(ContextBundle(user_prompt="add a button with hover style"), client)
        prompt = client.prompts[0]
        for directive in RESPONDER_DIRECTIVES:
            assert prompt.count(directive) == 1

    def test_hi_gets_no_accessibility_content(self):
        client = default_script()
        response = responder_run(ContextBundle(user_prompt="Hi"), client)
        assert "accessibility" not in response.markdown.lower()
        assert "wcag" not in response.markdown.lower()

    def test_subscribe_form_has_associated_label(self):
        client = default_script()
        response = responder_run(ContextBundle(user_prompt="add a subscribe form"), client)
        html = next(code for lang, code in response.code_blocks if lang == "html")
        assert lint_text(html, "generated.html") == []
        assert '<label for="email">' in html


class TestScriptedClient:
    def test_first_match_wins(self):
        client = ScriptedClient(
            [
                ScriptEntry("alpha", "first"),
                ScriptEntry("alpha beta", "second"),
                ScriptEntry("", "fallback"),
            ]
        )
        assert client.complete("alpha beta gamma") == "first"
        assert client.complete("nothing matches") == "fallback"
        assert client.call_count == 2

    def test_fallback_required(self):
        with pytest.raises(ValueError):
            ScriptedClient([ScriptEntry("only", "no fallback")])

    def test_from_file(self, tmp_path):
        script = tmp_path / "script.json"
        script.write_text(
            '[{"match": "ping", "response": "pong"}, {"match": "", "response": "fb"}]'
        )
        client = ScriptedClient.from_file(script)
        assert client.complete("ping please") == "pong"


class TestResponseParsing:
    def test_code_blocks_in_order(self):
        md = "a\n```css\nbody{}\n```\nb\n```html\n<p>x</p>\n```\n"
        resp = AgentResponse.from_markdown(md)
        assert [lang for lang, _ in resp.code_blocks] == ["css", "html"]
        assert resp.code_blocks[1][1] == "<p>x</p>\n"

    def test_citations_extracted(self):
        resp = AgentResponse.from_markdown("see https://webaim.org/articles/ for more")
        assert resp.citations == ("https://webaim.org/articles/",)


def load_blocks(path):
    return AgentResponse.from_markdown(path.read_text()).code_blocks


class TestPlaceholderDetector:
    def test_alt_template_with_todo_comment(self):
        hits = detect_placeholders([("jsx", "alt={imgAlt} // Add this line")])
        kinds = {h.kind for h in hits}
        assert kinds == {PlaceholderKind.TEMPLATE_IDENTIFIER, PlaceholderKind.TODO_COMMENT}

    def test_meaningful_alt_clean(self):
        assert detect_placeholders([("html", '<img alt="A coastal town at dusk">')]) == []

    def test_empty_alt_flagged(self):
        hits = detect_placeholders([("html", '<img src="x.png" alt="">')])
        assert [h.kind for h in hits] == [PlaceholderKind.EMPTY_ATTR]

    def test_defined_identifier_not_flagged(self):
        code = 'const imgAlt = "A harbor at dawn";\n<img alt={imgAlt} />'
        assert detect_placeholders([("jsx", code)]) == []

    @pytest.mark.parametrize(
        "name", sorted(p.name for p in (FIXTURES / "transcripts").glob("*.md"))
    )
    def test_every_transcript_fixture_flagged(self, name):
        assert detect_placeholders(load_blocks(FIXTURES / "transcripts" / name))

    @pytest.mark.parametrize(
        "name", sorted(p.name for p in (FIXTURES / "clean_code").glob("*.md"))
    )
    def test_clean_code_zero_false_positives(self, name):
        assert detect_placeholders(load_blocks(FIXTURES / "clean_code" / name)) == []

    def test_excerpt_is_verbatim_substring(self):
        code = 'x\nalt={imgAlt} // Add this line\ny'
        for hit in detect_placeholders([("jsx", code)]):
            assert hit.excerpt in code


class SentinelClient:
    def __init__(self, reply=REMINDER_SENTINEL):
        self.reply = reply
        self.call_count = 0

    def complete(self, prompt):
        self.call_count += 1
        return self.reply


class FailingClient:
    def complete(self, prompt):
        raise ConnectionError("model down")


class TestCorrection:
    def test_empty_findings_no_client_call(self):
        client = SentinelClient()
        assert correction_run([], ChatContext(), client) is None
        assert client.call_count == 0

    def test_finding_produces_snippet(self):
        findings = lint_text('<img src="a.png">', "page.html")
        chat = ChatContext((ChatTurn(Role.USER, "fix page.html"),))
        response = correction_run(findings, chat, default_script())
        assert response is not None
        assert response.code_blocks
        assert "alt" in response.markdown


def response_with(code):
    return AgentResponse.from_markdown(f"```html\n{code}\n```")


class TestReminder:
    def test_sentinel_plus_clean_code_absent(self):
        resp = response_with('<label for="e">Email</label><input id="e">')
        assert reminder_run(ChatContext(), resp, SentinelClient()) is None

    def test_detector_overrides_sentinel(self):
        resp = response_with('<img src="x.png" alt="">')
        reminder = reminder_run(ChatContext(), resp, SentinelClient())
        assert reminder is not None
        assert reminder.source is ReminderSource.DETECTOR
        assert "alt" in reminder.text

    def test_model_reminder_collapsed_to_single_line(self):
        client = SentinelClient("Check contrast.\nAlso check labels.\nAnd tab order.")
        reminder = reminder_run(ChatContext(), response_with("<p>hello</p>"), client)
        assert reminder.text == "Check contrast.; Also check labels.; And tab order."
        assert reminder.source is ReminderSource.MODEL

    def test_both_paths_recorded(self):
        client = SentinelClient("Replace the alt placeholder.")
        reminder = reminder_run(ChatContext(), response_with('<img alt="">'), client)
        assert reminder.source is ReminderSource.BOTH

    def test_client_failure_degrades_to_detector(self):
        reminder = reminder_run(ChatContext(), response_with('<img alt="">'), FailingClient())
        assert reminder is not None
        assert reminder.source is ReminderSource.DETECTOR

    def test_single_line_and_length_invariant(self):
        client = SentinelClient("x " * 300)
        reminder = reminder_run(ChatContext(), response_with("<p>y</p>"), client)
        assert "\n" not in reminder.text
        assert len(reminder.text) <= 200

    def test_reminder_type_rejects_newlines(self):
        with pytest.raises(ValueError):
            Reminder(text="two\nlines", source=ReminderSource.MODEL)
