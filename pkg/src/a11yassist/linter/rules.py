"""WCAG-derived rule registry and the rule runner."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterator

from .colors import contrast_ratio, parse_css_color
from .parser import DocumentModel, Element
from .styles import StyleMap, font_size_px, is_bold
from .types import ElementState, Finding, Impact, RuleConfig

INTERACTIVE_TAGS = frozenset(
    "a button input select textarea summary details audio video".split()
)
_FORM_CONTROLS = frozenset({"input", "select", "textarea"})
_UNLABELED_EXEMPT_INPUT_TYPES = frozenset({"hidden", "submit", "reset", "button", "image"})

RawHit = tuple[Element, str, ElementState]
Checker = Callable[[DocumentModel, StyleMap, RuleConfig], Iterator[RawHit]]


@dataclass(frozen=True)
class RuleSpec:
    rule_id: str
    impact: Impact
    wcag_tag: str
    check: Checker


def _normalize_text(text: str) -> str:
    return re.sub(r"[\s\.\,\!\?\:\;]+", " ", text).strip().lower()


def _is_decorative(img: Element) -> bool:
    if img.attrs.get("role", "").lower() in ("presentation", "none"):
        return True
    if img.attrs.get("aria-hidden", "").lower() == "true":
        return True
    return False


def _discernible_text(el: Element) -> str:
    text = _normalize_text(el.text_content())
    if text:
        return text
    for attr in ("aria-label", "title"):
        if _normalize_text(el.attrs.get(attr, "")):
            return _normalize_text(el.attrs[attr])
    for img in el.find_all("img"):
        alt = _normalize_text(img.attrs.get("alt", ""))
        if alt:
            return alt
    return ""


def _is_uninformative(text: str, el: Element, cfg: RuleConfig) -> bool:
    norm = _normalize_text(text)
    if not norm:
        return False
    if norm in cfg.uninformative_lexicon:
        return True
    # Field echo: the text merely restates the tag or an attribute name.
    return norm == el.tag or norm in el.attrs


def _check_img_alt(doc, styles, cfg):
    for img in doc.find_all("img"):
        if "alt" not in img.attrs and not _is_decorative(img):
            yield img, "image has no alt attribute", ElementState.DEFAULT


def _check_img_alt_empty(doc, styles, cfg):
    # Conventional checkers pass alt="" as decorative; a blank alt on an
    # informative image is a known blind spot, so surface it for review.
    for img in doc.find_all("img"):
        if img.attrs.get("alt") == "" and "alt" in img.attrs and not _is_decorative(img):
            yield (
                img,
                'image has empty alt=""; confirm it is genuinely decorative',
                ElementState.DEFAULT,
            )


def _check_img_alt_uninformative(doc, styles, cfg):
    for img in doc.find_all("img"):
        alt = img.attrs.get("alt", "")
        if alt and _is_uninformative(alt, img, cfg):
            yield img, f"alt text {alt!r} is uninformative", ElementState.DEFAULT


def _label_for_ids(doc: DocumentModel) -> frozenset[str]:
    return frozenset(
        label.attrs["for"] for label in doc.find_all("label") if label.attrs.get("for")
    )


def _check_form_label(doc, styles, cfg):
    labeled_ids = _label_for_ids(doc)
    for control in doc.iter_elements():
        if control.tag not in _FORM_CONTROLS:
            continue
        if control.tag == "input":
            if control.attrs.get("type", "text").lower() in _UNLABELED_EXEMPT_INPUT_TYPES:
                continue
        if control.attrs.get("aria-label", "").strip():
            continue
        if control.attrs.get("aria-labelledby", "").strip():
            continue
        if control.attrs.get("id") in labeled_ids:
            continue
        if any(anc.tag == "label" for anc in control.ancestors()):
            continue
        yield control, f"form {control.tag} has no associated label", ElementState.DEFAULT


def _check_link_name(doc, styles, cfg):
    for link in doc.find_all("a"):
        if "href" not in link.attrs:
            continue
        if not _discernible_text(link):
            yield link, "link has no discernible text", ElementState.DEFAULT


def _check_link_name_uninformative(doc, styles, cfg):
    for link in doc.find_all("a"):
        if "href" not in link.attrs:
            continue
        text = _discernible_text(link)
        if text and _is_uninformative(text, link, cfg):
            yield link, f"link text {text!r} is uninformative", ElementState.DEFAULT


def _check_button_name(doc, styles, cfg):
    for el in doc.iter_elements():
        if el.tag == "button":
            if not _discernible_text(el):
                yield el, "button has no discernible text", ElementState.DEFAULT
        elif el.tag == "input" and el.attrs.get("type", "").lower() in ("button", "submit"):
            if not (el.attrs.get("value") or el.attrs.get("aria-label")):
                yield el, "input button has no label text", ElementState.DEFAULT


def _background_for(styles: StyleMap, el: Element, state: ElementState):
    node: Element | None = el
    while node is not None:
        value = styles.declared(node, state).get("background-color") or styles.declared(
            node, ElementState.DEFAULT
        ).get("background-color")
        if value:
            return parse_css_color(value)
        node = node.parent
    return parse_css_color("#ffffff")


def _check_color_contrast(doc, styles, cfg):
    thresholds = cfg.thresholds
    for el in doc.iter_elements():
        if el.tag in ("style", "script", "head", "title", "meta", "link"):
            continue
        if not el.own_text().strip():
            continue
        # Only elements some style declaration actually touches.
        styled = styles.effective(el, "color", ElementState.DEFAULT) is not None or any(
            styles.declared(node, s).get("background-color")
            for node in [el, *el.ancestors()]
            for s in ElementState
        )
        if not styled:
            continue
        for state in styles.states_declared_for(el):
            fg_value = styles.effective(el, "color", state) or "#000000"
            fg = parse_css_color(fg_value)
            bg = _background_for(styles, el, state)
            if fg is None or bg is None:
                continue  # unresolvable color literal: covered by style-unresolved
            ratio = contrast_ratio(fg, bg)
            size = font_size_px(styles.effective(el, "font-size", state))
            bold = is_bold(styles.effective(el, "font-weight", state))
            minimum = thresholds.minimum_for(size, bold)
            if ratio < minimum:
                yield (
                    el,
                    f"contrast {ratio:.2f}:1 in {state.value} state is below "
                    f"the {minimum}:1 minimum",
                    state,
                )


def _check_heading_order(doc, styles, cfg):
    previous_level = 0
    for el in doc.iter_elements():
        m = re.fullmatch(r"h([1-6])", el.tag)
        if not m:
            continue
        level = int(m.group(1))
        if previous_level and level > previous_level + 1:
            yield (
                el,
                f"heading level skips from h{previous_level} to h{level}",
                ElementState.DEFAULT,
            )
        previous_level = level


def _check_tabindex_positive(doc, styles, cfg):
    for el in doc.iter_elements():
        raw = el.attrs.get("tabindex", "")
        try:
            if int(raw) > 0:
                yield (
                    el,
                    f"positive tabindex={raw} disrupts natural tab order",
                    ElementState.DEFAULT,
                )
        except ValueError:
            continue


def _check_click_handler_focusable(doc, styles, cfg):
    for el in doc.iter_elements():
        if "onclick" not in el.attrs:
            continue
        if el.tag in INTERACTIVE_TAGS:
            continue
        if "tabindex" in el.attrs or el.attrs.get("role"):
            continue
        yield (
            el,
            f"click handler on non-interactive <{el.tag}> without tabindex or role",
            ElementState.DEFAULT,
        )


def _check_style_unresolved(doc, styles, cfg):
    for el in doc.iter_elements():
        missing = styles.unresolved_classes(el)
        if missing:
            yield (
                el,
                f"class(es) {', '.join(missing)} not found in any stylesheet; "
                "styling checks skipped",
                ElementState.DEFAULT,
            )


RULE_REGISTRY: dict[str, RuleSpec] = {
    spec.rule_id: spec
    for spec in [
        RuleSpec("img-alt", Impact.CRITICAL, "1.1.1", _check_img_alt),
        RuleSpec("img-alt-empty", Impact.NEEDS_REVIEW, "1.1.1", _check_img_alt_empty),
        RuleSpec(
            "img-alt-uninformative", Impact.SERIOUS, "1.1.1", _check_img_alt_uninformative
        ),
        RuleSpec("form-label", Impact.CRITICAL, "3.3.2", _check_form_label),
        RuleSpec("link-name", Impact.SERIOUS, "2.4.4", _check_link_name),
        RuleSpec(
            "link-name-uninformative", Impact.SERIOUS, "2.4.4", _check_link_name_uninformative
        ),
        RuleSpec("button-name", Impact.SERIOUS, "4.1.2", _check_button_name),
        RuleSpec("color-contrast", Impact.SERIOUS, "1.4.3", _check_color_contrast),
        RuleSpec("heading-order", Impact.MODERATE, "1.3.1", _check_heading_order),
        RuleSpec("tabindex-positive", Impact.SERIOUS, "2.4.3", _check_tabindex_positive),
        RuleSpec(
            "click-no-keyboard", Impact.MODERATE, "2.1.1", _check_click_handler_focusable
        ),
        RuleSpec("style-unresolved", Impact.NEEDS_REVIEW, "1.4.3", _check_style_unresolved),
    ]
}


def run_rules(doc: DocumentModel, styles: StyleMap, cfg: RuleConfig | None = None) -> list[Finding]:
    """Evaluate every enabled rule; deterministic, sorted by (file, span)."""
    cfg = cfg or RuleConfig()
    findings: list[Finding] = []
    for spec in RULE_REGISTRY.values():
        if not cfg.rule_enabled(spec.rule_id):
            continue
        for element, message, state in spec.check(doc, styles, cfg):
            findings.append(
                Finding(
                    rule_id=spec.rule_id,
                    impact=spec.impact,
                    element=doc.element_ref(element),
                    message=message,
                    wcag_tag=spec.wcag_tag,
                    file_path=doc.file_path,
                    state=state,
                )
            )
    findings.sort(key=Finding.sort_key)
    return findings
