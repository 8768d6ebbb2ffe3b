"""Ternary task scoring: 0 Unacceptable, 1 Average, 2 Good.

Four task kinds are scored against static criteria: button contrast
across interaction states, form labeling plus keyboard navigation,
link description quality, and alt-text descriptor coverage.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum

from .linter.colors import contrast_ratio, parse_css_color
from .linter.parser import DocumentModel, Element, parse_document
from .linter.rules import _discernible_text, _is_uninformative  # shared helpers
from .linter.styles import StyleMap, collect_styles, font_size_px, is_bold
from .linter.types import ContrastThresholds, ElementState, RuleConfig


class TaskKind(str, Enum):
    T1_BUTTON_CONTRAST = "T1"
    T2_FORM = "T2"
    T3_LINKS = "T3"
    T4_ALT_TEXT = "T4"


class ScoreError(ValueError):
    pass


class EmptyReport(ValueError):
    pass


@dataclass(frozen=True)
class Evidence:
    criterion: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class RubricScore:
    task: TaskKind
    score: int  # 0 Unacceptable, 1 Average, 2 Good
    evidence: tuple[Evidence, ...]

    def __post_init__(self) -> None:
        if self.score not in (0, 1, 2):
            raise ValueError("score must be 0, 1, or 2")


# Alt-text descriptor categories; keyword lexicons are a configurable,
# deterministic approximation of human descriptor judgments.
DEFAULT_DESCRIPTOR_LEXICONS: dict[str, tuple[str, ...]] = {
    "subject": (
        "person", "people", "woman", "man", "child", "dog", "cat", "car", "boat",
        "building", "house", "tree", "bird", "mountain", "crowd", "team", "player",
        "worker", "student", "town", "city", "ship", "bridge", "flower", "robot",
    ),
    "action": (
        "running", "walking", "standing", "sitting", "holding", "playing", "working",
        "smiling", "jumping", "speaking", "looking", "riding", "flying", "swimming",
        "crossing", "waving", "pointing", "reading", "writing", "climbing",
    ),
    "setting": (
        "beach", "park", "office", "street", "indoors", "outdoors", "field", "forest",
        "kitchen", "stadium", "sunset", "dusk", "dawn", "night", "coastal", "harbor",
        "downtown", "rooftop", "garden", "lake", "river", "snow", "rain",
    ),
    "embedded-text": (
        "sign", "banner", "label", "reads", "reading", "text", "captioned", "titled",
        "logo", "slogan", "headline", "lettering", "inscription", "says",
    ),
}


@dataclass
class DescriptorConfig:
    lexicons: dict[str, tuple[str, ...]] = field(
        default_factory=lambda: dict(DEFAULT_DESCRIPTOR_LEXICONS)
    )
    required_count: int = 3

    def __post_init__(self) -> None:
        if len(self.lexicons) != 4:
            raise ValueError("exactly four descriptor categories are required")
        if not 1 <= self.required_count <= 4:
            raise ValueError("required_count must be in [1, 4]")

    def categories_matched(self, alt_text: str) -> list[str]:
        words = set(re.findall(r"[a-z]+", alt_text.lower()))
        return [
            name
            for name, lexicon in self.lexicons.items()
            if words & set(lexicon)
        ]


def _target_absent(task: TaskKind, what: str) -> RubricScore:
    return RubricScore(
        task=task,
        score=0,
        evidence=(Evidence("target present", False, f"no {what} found in document"),),
    )


def _button_elements(doc: DocumentModel) -> list[Element]:
    buttons = doc.find_all("button")
    buttons += [
        el
        for el in doc.iter_elements()
        if el.tag == "input" and el.attrs.get("type", "").lower() in ("button", "submit")
    ]
    buttons += [el for el in doc.iter_elements() if el.attrs.get("role") == "button"]
    buttons += [
        el
        for el in doc.find_all("a")
        if "btn" in el.attrs.get("class", "") or "button" in el.attrs.get("class", "")
    ]
    return buttons


def _state_ratio(
    styles: StyleMap, el: Element, state: ElementState, thresholds: ContrastThresholds
) -> tuple[float, float]:
    from .linter.rules import _background_for

    fg = parse_css_color(styles.effective(el, "color", state) or "#000000")
    bg = _background_for(styles, el, state)
    if fg is None or bg is None:
        raise ScoreError(f"unresolvable color on <{el.tag}> in {state.value} state")
    ratio = contrast_ratio(fg, bg)
    size = font_size_px(styles.effective(el, "font-size", state))
    bold = is_bold(styles.effective(el, "font-weight", state))
    return ratio, thresholds.minimum_for(size, bold)


def _score_t1(doc: DocumentModel, styles: StyleMap, thresholds: ContrastThresholds) -> RubricScore:
    buttons = _button_elements(doc)
    if not buttons:
        return _target_absent(TaskKind.T1_BUTTON_CONTRAST, "button element")
    evidence: list[Evidence] = []
    default_ok = True
    all_states_ok = True
    for el in buttons:
        for state in styles.states_declared_for(el):
            ratio, minimum = _state_ratio(styles, el, state, thresholds)
            passed = ratio >= minimum
            evidence.append(
                Evidence(
                    f"AA contrast in {state.value} state",
                    passed,
                    f"<{el.tag}> {ratio:.2f}:1 vs minimum {minimum}:1",
                )
            )
            if not passed:
                all_states_ok = False
                if state is ElementState.DEFAULT:
                    default_ok = False
    if all_states_ok:
        score = 2
    elif default_ok:
        score = 1
    else:
        score = 0
    return RubricScore(TaskKind.T1_BUTTON_CONTRAST, score, tuple(evidence))


def _keyboard_navigable(doc: DocumentModel) -> tuple[bool, list[Evidence]]:
    evidence: list[Evidence] = []
    ok = True
    for el in doc.iter_elements():
        raw = el.attrs.get("tabindex")
        if raw is None:
            continue
        try:
            value = int(raw)
        except ValueError:
            continue
        if value > 0:
            ok = False
            evidence.append(
                Evidence("no positive tabindex", False, f"<{el.tag}> tabindex={value}")
            )
        if value < 0 and el.tag in ("input", "select", "textarea", "button"):
            ok = False
            evidence.append(
                Evidence(
                    "required controls focusable", False, f"<{el.tag}> tabindex={value}"
                )
            )
    for el in doc.iter_elements():
        if "onclick" in el.attrs and el.tag not in (
            "a", "button", "input", "select", "textarea",
        ) and "tabindex" not in el.attrs:
            ok = False
            evidence.append(
                Evidence("click targets keyboard-reachable", False, f"<{el.tag}> onclick")
            )
    if ok:
        evidence.append(Evidence("keyboard navigation", True, "natural tab order intact"))
    return ok, evidence


def _score_t2(doc: DocumentModel, styles: StyleMap, cfg: RuleConfig) -> RubricScore:
    from .linter.rules import _check_form_label

    controls = [
        el
        for el in doc.iter_elements()
        if el.tag in ("input", "select", "textarea")
        and el.attrs.get("type", "text").lower() not in ("hidden", "submit", "reset", "button")
    ]
    if not controls:
        return _target_absent(TaskKind.T2_FORM, "form control")
    unlabeled = [el for el, _msg, _state in _check_form_label(doc, styles, cfg)]
    labels_ok = not unlabeled
    evidence = [
        Evidence(
            "every control labeled",
            labels_ok,
            "all controls have associated labels"
            if labels_ok
            else f"{len(unlabeled)} unlabeled control(s), first: <{unlabeled[0].tag}>",
        )
    ]
    keyboard_ok, kb_evidence = _keyboard_navigable(doc)
    evidence.extend(kb_evidence)
    score = int(labels_ok) + int(keyboard_ok)
    return RubricScore(TaskKind.T2_FORM, score, tuple(evidence))


def _descriptive_link_text(text: str, el: Element, cfg: RuleConfig) -> bool:
    return not _is_uninformative(text, el, cfg) and len(text.strip()) >= 4


def _score_t3(doc: DocumentModel, cfg: RuleConfig) -> RubricScore:
    links = [el for el in doc.find_all("a") if "href" in el.attrs]
    if not links:
        return _target_absent(TaskKind.T3_LINKS, "link")
    evidence: list[Evidence] = []
    worst = 2
    for link in links:
        text = _discernible_text(link)
        if not text:
            tier, label = 0, "missing description"
        elif _descriptive_link_text(text, link, cfg):
            tier, label = 2, "descriptive"
        else:
            tier, label = 1, "uninformative"
        evidence.append(Evidence("link description", tier == 2, f"{text!r}: {label}"))
        worst = min(worst, tier)
    return RubricScore(TaskKind.T3_LINKS, worst, tuple(evidence))


def _score_t4(doc: DocumentModel, cfg: RuleConfig, descriptors: DescriptorConfig) -> RubricScore:
    images = [el for el in doc.find_all("img") if el.attrs.get("role") not in ("presentation", "none")]
    if not images:
        return _target_absent(TaskKind.T4_ALT_TEXT, "image")
    evidence: list[Evidence] = []
    worst = 2
    for img in images:
        alt = img.attrs.get("alt", "")
        if "alt" not in img.attrs or not alt.strip() or _is_uninformative(alt, img, cfg):
            tier = 0
            evidence.append(
                Evidence("alt text present and informative", False, f"alt={alt!r}")
            )
        else:
            matched = descriptors.categories_matched(alt)
            tier = 2 if len(matched) >= descriptors.required_count else 1
            evidence.append(
                Evidence(
                    f">= {descriptors.required_count} of 4 descriptor categories",
                    tier == 2,
                    f"alt={alt!r} matched {sorted(matched)}",
                )
            )
        worst = min(worst, tier)
    return RubricScore(TaskKind.T4_ALT_TEXT, worst, tuple(evidence))


def score_task(
    doc: DocumentModel,
    styles: StyleMap,
    task: TaskKind,
    cfg: RuleConfig | None = None,
    descriptors: DescriptorConfig | None = None,
) -> RubricScore:
    """Score one submission against the criteria for its task kind."""
    cfg = cfg or RuleConfig()
    if task is TaskKind.T1_BUTTON_CONTRAST:
        return _score_t1(doc, styles, cfg.thresholds)
    if task is TaskKind.T2_FORM:
        return _score_t2(doc, styles, cfg)
    if task is TaskKind.T3_LINKS:
        return _score_t3(doc, cfg)
    if task is TaskKind.T4_ALT_TEXT:
        return _score_t4(doc, cfg, descriptors or DescriptorConfig())
    raise ScoreError(f"unknown task {task}")


def score_text(source_text: str, task: TaskKind, file_path: str = "<memory>", **kwargs) -> RubricScore:
    doc = parse_document(source_text, file_path)
    styles = collect_styles(doc)
    return score_task(doc, styles, task, **kwargs)


def aggregate_scores(scores: list[RubricScore]) -> dict:
    """Per-task means and counts, for JSON or text reporting."""
    if not scores:
        raise EmptyReport("no scores to aggregate")
    table: dict[str, dict] = {}
    for task in TaskKind:
        values = [s.score for s in scores if s.task is task]
        if values:
            table[task.value] = {
                "mean": sum(values) / len(values),
                "count": len(values),
            }
    return table


def scores_to_json(scores: list[RubricScore]) -> str:
    records = [
        {
            "task": s.task.value,
            "score": s.score,
            "evidence": [
                {"criterion": e.criterion, "passed": e.passed, "detail": e.detail}
                for e in s.evidence
            ],
        }
        for s in scores
    ]
    return json.dumps(records, indent=2) + "\n"


def aggregate_to_text(table: dict) -> str:
    lines = [
        "Task  Mean  N",
        "----  ----  --",
    ]
    for task, row in sorted(table.items()):
        lines.append(f"{task:<4}  {row['mean']:.2f}  {row['count']}")
    return "\n".join(lines) + "\n"
