"""Command-line entry points: lint, score, chat, serve."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .linter.report import findings_to_log, lint_path
from .linter.types import Impact, RuleConfig
from .rubric import TaskKind, aggregate_to_text, score_text, scores_to_json

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_IO = 2
EXIT_USAGE = 64

_FAILING_IMPACTS = (Impact.CRITICAL, Impact.SERIOUS)


@click.group()
def main() -> None:
    """Accessibility-aware coding assistant."""


@main.command()
@click.argument("path", type=click.Path(path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
@click.option("--rules", default=None, help="Comma-separated rule ids to enable.")
def lint(path: Path, fmt: str, rules: str | None) -> None:
    """Lint markup files; exit 1 when serious-or-worse findings exist."""
    if not path.exists():
        click.echo(f"error: path {path} does not exist", err=True)
        sys.exit(EXIT_IO)
    cfg = RuleConfig(enabled_rules=frozenset(rules.split(",")) if rules else None)
    try:
        findings = lint_path(path, cfg)
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    if fmt == "json":
        click.echo(findings_to_log(findings), nl=False)
    else:
        for f in findings:
            span = f.element.span
            click.echo(
                f"{f.file_path}:{span.start_line}:{span.start_col} "
                f"[{f.impact.value}] {f.rule_id}: {f.message} ({f.element.selector})"
            )
        click.echo(f"{len(findings)} finding(s)")
    failing = any(f.impact in _FAILING_IMPACTS for f in findings)
    sys.exit(EXIT_FINDINGS if failing else EXIT_OK)


@main.command()
@click.argument("path", type=click.Path(path_type=Path))
@click.option("--task", "task_id", required=True)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
def score(path: Path, task_id: str, fmt: str) -> None:
    """Score a submission against one task rubric; exit code is 2 - score."""
    try:
        task = TaskKind(task_id.upper())
    except ValueError:
        click.echo(f"error: unknown task {task_id!r} (expected T1..T4)", err=True)
        sys.exit(EXIT_USAGE)
    if not path.is_file():
        click.echo(f"error: path {path} is not a file", err=True)
        sys.exit(EXIT_IO)
    result = score_text(path.read_text(encoding="utf-8"), task, file_path=str(path))
    if fmt == "json":
        click.echo(scores_to_json([result]), nl=False)
    else:
        labels = {0: "Unacceptable", 1: "Average", 2: "Good"}
        click.echo(f"{task.value}: {result.score} ({labels[result.score]})")
        for ev in result.evidence:
            click.echo(f"  [{'pass' if ev.passed else 'FAIL'}] {ev.criterion}: {ev.detail}")
    sys.exit(2 - result.score)


@main.command()
@click.option("--project", type=click.Path(path_type=Path), default=None)
@click.option("--scripted", "script_file", type=click.Path(path_type=Path), default=None)
@click.option("--transcript", type=click.Path(path_type=Path), default=None)
def chat(project: Path | None, script_file: Path | None, transcript: Path | None) -> None:
    """Line-oriented chat over the assistant pipeline."""
    from .agents import AgentUnavailable, ScriptedClient
    from .orchestrator import Session, handle_user_message, refresh_linter_snapshot
    from .scripts import default_script

    if project is not None and not project.is_dir():
        click.echo(f"error: project root {project} is not readable", err=True)
        sys.exit(EXIT_IO)
    client = ScriptedClient.from_file(script_file) if script_file else default_script()
    session = Session(project_root=project, client=client)
    refresh_linter_snapshot(session)
    click.echo("a11yassist chat (EOF to exit)")
    while True:
        try:
            line = input("> ")
        except EOFError:
            break
        if not line.strip():
            continue
        try:
            result = handle_user_message(session, line)
        except AgentUnavailable as exc:
            click.echo(f"[model unavailable: {exc}; continuing in detector-only mode]")
            continue
        except ValueError as exc:
            click.echo(f"[{exc}]")
            continue
        click.echo(result.responder.markdown)
        if result.correction is not None:
            click.echo("--- correction ---")
            click.echo(result.correction.markdown)
        if result.reminder is not None:
            banner = "=" * 8
            click.echo(f"{banner} REMINDER: {result.reminder.text} {banner}")
    if transcript is not None:
        lines = [f"{t.role.value}: {t.text}" for t in session.chat.turns]
        transcript.write_text("\n".join(lines) + "\n", encoding="utf-8")
    sys.exit(EXIT_OK)


@main.command()
@click.option("--config", "config_file", type=click.Path(path_type=Path), default=None)
def serve(config_file: Path | None) -> None:
    """Run the assistant HTTP service until interrupted."""
    import uvicorn

    from .service import ServiceConfig, UnknownConfigKey, create_app

    try:
        config = ServiceConfig.from_file(config_file) if config_file else ServiceConfig()
    except UnknownConfigKey as exc:
        click.echo(f"error: unknown config key: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    except (OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)
    app = create_app(config)
    click.echo(f"listening on http://{config.host}:{config.port}", err=True)
    try:
        uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    except SystemExit:
        raise
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_IO)


if __name__ == "__main__":
    main()
