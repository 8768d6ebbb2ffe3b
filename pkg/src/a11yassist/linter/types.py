"""Shared domain types for the accessibility linter."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Impact(str, Enum):
    CRITICAL = "critical"
    SERIOUS = "serious"
    MODERATE = "moderate"
    NEEDS_REVIEW = "needs_review"


# Severity order used when ranking findings, most severe first.
IMPACT_RANK = {
    Impact.CRITICAL: 0,
    Impact.SERIOUS: 1,
    Impact.MODERATE: 2,
    Impact.NEEDS_REVIEW: 3,
}


class ElementState(str, Enum):
    DEFAULT = "default"
    HOVER = "hover"
    ACTIVE = "active"
    FOCUS = "focus"


@dataclass(frozen=True, order=True)
class SourceSpan:
    """1-based, inclusive source region."""

    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self) -> None:
        if min(self.start_line, self.start_col, self.end_line, self.end_col) < 1:
            raise ValueError("positions are 1-based")
        if (self.end_line, self.end_col) < (self.start_line, self.start_col):
            raise ValueError("span end precedes start")


@dataclass(frozen=True)
class ContrastThresholds:
    """AA minimum ratios and the large-text size boundary."""

    normal_text_min: float = 4.5
    large_text_min: float = 3.0
    large_text_px: float = 24.0
    large_text_bold_px: float = 18.66

    def __post_init__(self) -> None:
        if not self.normal_text_min > self.large_text_min >= 1.0:
            raise ValueError("require normal_text_min > large_text_min >= 1")

    def minimum_for(self, font_size_px: float, bold: bool) -> float:
        boundary = self.large_text_bold_px if bold else self.large_text_px
        return self.large_text_min if font_size_px >= boundary else self.normal_text_min


@dataclass(frozen=True)
class ElementRef:
    """A findable handle on one element in the analyzed document."""

    selector: str
    span: SourceSpan
    tag: str
    attrs: tuple[tuple[str, str], ...] = ()

    @property
    def attr_map(self) -> dict[str, str]:
        return dict(self.attrs)


@dataclass(frozen=True)
class Finding:
    """One accessibility violation tied to a source element."""

    rule_id: str
    impact: Impact
    element: ElementRef
    message: str
    wcag_tag: str
    file_path: str
    state: ElementState = ElementState.DEFAULT

    def __post_init__(self) -> None:
        if not self.message:
            raise ValueError("finding message must be non-empty")

    def sort_key(self) -> tuple:
        return (self.file_path, self.element.span, self.rule_id, self.state.value)


DEFAULT_UNINFORMATIVE_LEXICON = (
    "click here",
    "alt",
    "image",
    "here",
    "link",
    "photo",
    "picture",
    "img",
    "read more",
    "more",
    "learn more",
)


@dataclass
class RuleConfig:
    """Which rules run and with what thresholds."""

    enabled_rules: frozenset[str] | None = None  # None = all registered
    thresholds: ContrastThresholds = field(default_factory=ContrastThresholds)
    uninformative_lexicon: tuple[str, ...] = DEFAULT_UNINFORMATIVE_LEXICON

    def __post_init__(self) -> None:
        for entry in self.uninformative_lexicon:
            if not entry or entry != entry.lower():
                raise ValueError(f"lexicon entry {entry!r} must be lowercase, non-empty")

    def rule_enabled(self, rule_id: str) -> bool:
        return self.enabled_rules is None or rule_id in self.enabled_rules
