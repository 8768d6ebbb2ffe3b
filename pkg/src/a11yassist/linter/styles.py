"""Static style resolution: inline styles, embedded blocks, class rules.

Deliberately not a CSS cascade engine. Later declarations win over
earlier ones (specificity by source order), the inline style attribute
wins over everything, and hover/active/focus pseudo-class blocks are
kept per state. Selectors are matched on their final compound part
(tag, .class, #id, and combinations thereof).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .parser import DocumentModel, Element
from .types import ElementState

_COMMENT_RE = re.compile(r"/\*.*?\*/", re.DOTALL)
_RULE_RE = re.compile(r"([^{}]+)\{([^{}]*)\}")
_STATES = {
    "hover": ElementState.HOVER,
    "active": ElementState.ACTIVE,
    "focus": ElementState.FOCUS,
}

INHERITED_PROPS = frozenset({"color", "font-size", "font-weight", "font-family"})

DEFAULT_FONT_SIZE_PX = 16.0


@dataclass(frozen=True)
class CssRule:
    tag: str | None
    class_name: str | None
    element_id: str | None
    state: ElementState
    declarations: tuple[tuple[str, str], ...]

    def matches(self, element: Element) -> bool:
        if self.tag and element.tag != self.tag:
            return False
        if self.class_name is not None:
            classes = element.attrs.get("class", "").split()
            if self.class_name not in classes:
                return False
        if self.element_id is not None and element.attrs.get("id") != self.element_id:
            return False
        return self.tag or self.class_name is not None or self.element_id is not None


def _parse_declarations(body: str) -> tuple[tuple[str, str], ...]:
    out = []
    for chunk in body.split(";"):
        prop, _, value = chunk.partition(":")
        prop, value = prop.strip().lower(), value.strip()
        if prop and value:
            out.append((prop, value.removesuffix("!important").strip()))
    return tuple(out)


def _parse_compound(compound: str) -> tuple[str | None, str | None, str | None]:
    """Split e.g. 'a.btn' or '#main' into (tag, class, id)."""
    m = re.fullmatch(r"([a-zA-Z][\w-]*)?(?:\.([\w-]+))?(?:#([\w-]+))?", compound)
    if not m:
        return None, None, None
    tag = m.group(1).lower() if m.group(1) else None
    return tag, m.group(2), m.group(3)


def parse_css(text: str) -> list[CssRule]:
    rules: list[CssRule] = []
    text = _COMMENT_RE.sub("", text)
    for selector_group, body in _RULE_RE.findall(text):
        declarations = _parse_declarations(body)
        if not declarations:
            continue
        for selector in selector_group.split(","):
            selector = selector.strip()
            if not selector or selector.startswith("@"):
                continue
            # Only the final compound part of a combinator chain matters here.
            compound = re.split(r"[\s>+~]+", selector)[-1]
            state = ElementState.DEFAULT
            if ":" in compound:
                compound, _, pseudo = compound.partition(":")
                pseudo = pseudo.split(":")[0].lstrip(":")
                if pseudo in _STATES:
                    state = _STATES[pseudo]
                elif pseudo:  # unsupported pseudo (::before etc.): skip
                    continue
            tag, class_name, element_id = _parse_compound(compound)
            if tag is None and class_name is None and element_id is None:
                continue
            rules.append(CssRule(tag, class_name, element_id, state, declarations))
    return rules


@dataclass
class StyleMap:
    """Resolved per-element, per-state properties plus bookkeeping."""

    doc: DocumentModel
    rules: list[CssRule] = field(default_factory=list)
    known_classes: frozenset[str] = frozenset()
    _cache: dict[tuple[int, ElementState], dict[str, str]] = field(default_factory=dict)

    def declared(self, element: Element, state: ElementState) -> dict[str, str]:
        """Properties declared directly on this element for a state."""
        key = (id(element), state)
        if key in self._cache:
            return self._cache[key]
        props: dict[str, str] = {}
        for rule in self.rules:
            if rule.state is state and rule.matches(element):
                props.update(rule.declarations)
        if state is ElementState.DEFAULT and "style" in element.attrs:
            props.update(_parse_declarations(element.attrs["style"]))
        self._cache[key] = props
        return props

    def effective(self, element: Element, prop: str, state: ElementState) -> str | None:
        """Property value after state fallback and inheritance."""
        own = self.declared(element, state).get(prop)
        if own is None and state is not ElementState.DEFAULT:
            own = self.declared(element, ElementState.DEFAULT).get(prop)
        if own is not None:
            return own
        if prop in INHERITED_PROPS and element.parent is not None:
            return self.effective(element.parent, prop, state)
        return None

    def states_declared_for(self, element: Element) -> list[ElementState]:
        states = [ElementState.DEFAULT]
        for state in (ElementState.HOVER, ElementState.ACTIVE, ElementState.FOCUS):
            if self.declared(element, state):
                states.append(state)
        return states

    def unresolved_classes(self, element: Element) -> list[str]:
        return [
            c
            for c in element.attrs.get("class", "").split()
            if c not in self.known_classes
        ]


def font_size_px(value: str | None) -> float:
    if not value:
        return DEFAULT_FONT_SIZE_PX
    m = re.fullmatch(r"([0-9.]+)\s*(px|pt|em|rem|%)?", value.strip())
    if not m:
        return DEFAULT_FONT_SIZE_PX
    number = float(m.group(1))
    unit = m.group(2) or "px"
    if unit == "px":
        return number
    if unit == "pt":
        return number * 96.0 / 72.0
    if unit in ("em", "rem"):
        return number * DEFAULT_FONT_SIZE_PX
    return number / 100.0 * DEFAULT_FONT_SIZE_PX


def is_bold(value: str | None) -> bool:
    if not value:
        return False
    value = value.strip().lower()
    if value in ("bold", "bolder"):
        return True
    try:
        return float(value) >= 700
    except ValueError:
        return False


def collect_styles(
    doc: DocumentModel,
    extra_css: list[str] | None = None,
) -> StyleMap:
    """Gather embedded <style> blocks plus caller-supplied stylesheets."""
    rules: list[CssRule] = []
    for sheet in extra_css or []:
        rules.extend(parse_css(sheet))
    for style_el in doc.find_all("style"):
        rules.extend(parse_css(style_el.text_content()))
    known = {r.class_name for r in rules if r.class_name is not None}
    return StyleMap(doc=doc, rules=rules, known_classes=frozenset(known))


def linked_stylesheet_hrefs(doc: DocumentModel) -> list[str]:
    hrefs = []
    for link in doc.find_all("link"):
        rel = link.attrs.get("rel", "").lower()
        href = link.attrs.get("href", "")
        if "stylesheet" in rel and href and "://" not in href:
            hrefs.append(href)
    return hrefs
