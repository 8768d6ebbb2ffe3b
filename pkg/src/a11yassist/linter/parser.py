"""Error-recovering HTML parsing with source spans.

Built on html.parser.HTMLParser, which tolerates malformed markup by
design. Recovery policy: unknown end tags are ignored, mismatched end
tags close every element up to the nearest matching open one, and
anything still open at EOF is closed implicitly. Parsing never raises
on text input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from html.parser import HTMLParser

from .types import ElementRef, SourceSpan

VOID_ELEMENTS = frozenset(
    "area base br col embed hr img input link meta param source track wbr".split()
)

# Elements whose open instance is implicitly closed by a new sibling of
# the same kind (the common-case subset of HTML5's implied end tags).
_SELF_CLOSING_SIBLINGS = frozenset({"p", "li", "option", "tr", "td", "th", "dt", "dd"})


class InvalidInput(ValueError):
    """Raised for input that is not text (e.g. binary data)."""


@dataclass
class Element:
    tag: str
    attrs: dict[str, str]
    span: SourceSpan
    parent: "Element | None" = None
    children: list["Element"] = field(default_factory=list)
    text_parts: list[str] = field(default_factory=list)

    def iter_elements(self):
        for child in self.children:
            yield child
            yield from child.iter_elements()

    def text_content(self) -> str:
        parts = list(self.text_parts)
        for child in self.children:
            parts.append(child.text_content())
        return "".join(parts)

    def own_text(self) -> str:
        return "".join(self.text_parts)

    def find_all(self, tag: str) -> list["Element"]:
        return [el for el in self.iter_elements() if el.tag == tag]

    def ancestors(self):
        node = self.parent
        while node is not None:
            yield node
            node = node.parent


@dataclass
class DocumentModel:
    file_path: str
    roots: list[Element]
    source_text: str

    def iter_elements(self):
        for root in self.roots:
            yield root
            yield from root.iter_elements()

    def find_all(self, tag: str) -> list[Element]:
        return [el for el in self.iter_elements() if el.tag == tag]

    def selector_for(self, element: Element) -> str:
        """A selector that resolves to exactly this element."""
        el_id = element.attrs.get("id")
        if el_id and sum(1 for e in self.iter_elements() if e.attrs.get("id") == el_id) == 1:
            return f"#{el_id}"
        segments: list[str] = []
        node: Element | None = element
        while node is not None:
            siblings = node.parent.children if node.parent else self.roots
            same_tag = [s for s in siblings if s.tag == node.tag]
            if len(same_tag) == 1:
                segments.append(node.tag)
            else:
                segments.append(f"{node.tag}:nth-of-type({same_tag.index(node) + 1})")
            node = node.parent
        return " > ".join(reversed(segments))

    def resolve_selector(self, selector: str) -> Element | None:
        """Inverse of selector_for; returns None when nothing matches."""
        selector = selector.strip()
        if selector.startswith("#"):
            matches = [e for e in self.iter_elements() if e.attrs.get("id") == selector[1:]]
            return matches[0] if len(matches) == 1 else None
        candidates = self.roots
        node: Element | None = None
        for segment in selector.split(" > "):
            tag, _, index = segment.partition(":nth-of-type(")
            nth = int(index.rstrip(")")) if index else 1
            same_tag = [s for s in candidates if s.tag == tag]
            if nth > len(same_tag):
                return None
            node = same_tag[nth - 1]
            candidates = node.children
        return node

    def element_ref(self, element: Element) -> ElementRef:
        return ElementRef(
            selector=self.selector_for(element),
            span=element.span,
            tag=element.tag,
            attrs=tuple(sorted(element.attrs.items())),
        )


class _TreeBuilder(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.roots: list[Element] = []
        self.stack: list[Element] = []

    def _span_here(self, raw_text: str) -> SourceSpan:
        line, col0 = self.getpos()
        newlines = raw_text.count("\n")
        if newlines:
            end_line = line + newlines
            end_col = len(raw_text) - raw_text.rfind("\n") - 1
        else:
            end_line = line
            end_col = col0 + len(raw_text)
        return SourceSpan(line, col0 + 1, end_line, max(end_col, 1))

    def _open(self, tag: str, attrs, self_closing: bool) -> None:
        raw = self.get_starttag_text() or f"<{tag}>"
        if self.stack and tag in _SELF_CLOSING_SIBLINGS and self.stack[-1].tag == tag:
            self.stack.pop()
        attr_map: dict[str, str] = {}
        for name, value in attrs:
            attr_map.setdefault(name.lower(), value if value is not None else "")
        element = Element(tag=tag, attrs=attr_map, span=self._span_here(raw))
        if self.stack:
            element.parent = self.stack[-1]
            self.stack[-1].children.append(element)
        else:
            self.roots.append(element)
        if not self_closing and tag not in VOID_ELEMENTS:
            self.stack.append(element)

    def handle_starttag(self, tag, attrs):
        self._open(tag.lower(), attrs, self_closing=False)

    def handle_startendtag(self, tag, attrs):
        self._open(tag.lower(), attrs, self_closing=True)

    def handle_endtag(self, tag):
        tag = tag.lower()
        for i in range(len(self.stack) - 1, -1, -1):
            if self.stack[i].tag == tag:
                del self.stack[i:]
                return
        # No matching open tag: recover by ignoring the stray end tag.

    def handle_data(self, data):
        if self.stack:
            self.stack[-1].text_parts.append(data)


def parse_document(source_text: str, file_path: str = "<memory>") -> DocumentModel:
    """Parse markup into an element tree; never fails on malformed text."""
    if isinstance(source_text, bytes):
        raise InvalidInput("expected text, got bytes; decode before parsing")
    if "\x00" in source_text:
        raise InvalidInput("input contains NUL bytes; not a text document")
    builder = _TreeBuilder()
    builder.feed(source_text)
    builder.close()
    return DocumentModel(file_path=file_path, roots=builder.roots, source_text=source_text)
