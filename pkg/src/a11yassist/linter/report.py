"""Machine-readable linter log output and whole-file/project linting."""

from __future__ import annotations

import json
from pathlib import Path

from .parser import parse_document
from .rules import run_rules
from .styles import collect_styles, linked_stylesheet_hrefs
from .types import Finding, RuleConfig

MARKUP_SUFFIXES = (".html", ".htm", ".xhtml")


def finding_to_record(finding: Finding) -> dict:
    span = finding.element.span
    return {
        "rule_id": finding.rule_id,
        "impact": finding.impact.value,
        "selector": finding.element.selector,
        "file": finding.file_path,
        "span": {
            "sl": span.start_line,
            "sc": span.start_col,
            "el": span.end_line,
            "ec": span.end_col,
        },
        "state": finding.state.value,
        "wcag_tag": finding.wcag_tag,
        "message": finding.message,
    }


def findings_to_log(findings: list[Finding]) -> str:
    """Stable JSON array; byte-identical for identical findings."""
    records = [finding_to_record(f) for f in sorted(findings, key=Finding.sort_key)]
    return json.dumps(records, indent=2) + "\n"


def lint_text(
    source_text: str,
    file_path: str = "<memory>",
    extra_css: list[str] | None = None,
    cfg: RuleConfig | None = None,
) -> list[Finding]:
    doc = parse_document(source_text, file_path)
    styles = collect_styles(doc, extra_css=extra_css)
    return run_rules(doc, styles, cfg)


def lint_file(path: Path, cfg: RuleConfig | None = None, root: Path | None = None) -> list[Finding]:
    """Lint one markup file, pulling in stylesheets it links locally."""
    text = path.read_text(encoding="utf-8", errors="replace")
    doc = parse_document(text, _display_path(path, root))
    extra_css = []
    for href in linked_stylesheet_hrefs(doc):
        css_path = (path.parent / href).resolve()
        if css_path.is_file():
            extra_css.append(css_path.read_text(encoding="utf-8", errors="replace"))
    styles = collect_styles(doc, extra_css=extra_css)
    return run_rules(doc, styles, cfg)


def lint_path(path: Path, cfg: RuleConfig | None = None) -> list[Finding]:
    """Lint a file or every markup file under a directory tree."""
    if path.is_file():
        return lint_file(path, cfg)
    findings: list[Finding] = []
    for candidate in sorted(path.rglob("*")):
        if candidate.suffix.lower() in MARKUP_SUFFIXES and candidate.is_file():
            findings.extend(lint_file(candidate, cfg, root=path))
    findings.sort(key=Finding.sort_key)
    return findings


def _display_path(path: Path, root: Path | None) -> str:
    if root is not None:
        try:
            return path.relative_to(root).as_posix()
        except ValueError:
            pass
    return path.name
