"""Static WCAG accessibility linter: parse markup, resolve styles, run rules."""

from .colors import ColorSRGB, contrast_ratio, parse_css_color, relative_luminance
from .parser import DocumentModel, Element, InvalidInput, parse_document
from .report import finding_to_record, findings_to_log, lint_file, lint_path, lint_text
from .rules import RULE_REGISTRY, run_rules
from .styles import StyleMap, collect_styles, parse_css
from .types import (
    ContrastThresholds,
    ElementRef,
    ElementState,
    Finding,
    Impact,
    IMPACT_RANK,
    RuleConfig,
    SourceSpan,
)

__all__ = [
    "ColorSRGB",
    "ContrastThresholds",
    "DocumentModel",
    "Element",
    "ElementRef",
    "ElementState",
    "Finding",
    "IMPACT_RANK",
    "Impact",
    "InvalidInput",
    "RULE_REGISTRY",
    "RuleConfig",
    "SourceSpan",
    "StyleMap",
    "collect_styles",
    "contrast_ratio",
    "finding_to_record",
    "findings_to_log",
    "lint_file",
    "lint_path",
    "lint_text",
    "parse_css",
    "parse_css_color",
    "parse_document",
    "relative_luminance",
    "run_rules",
]
