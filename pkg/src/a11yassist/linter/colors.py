"""sRGB color parsing, relative luminance, and contrast ratios.

Luminance and contrast follow the WCAG 2.1 definitions: channels are
linearized with the sRGB transfer curve, weighted 0.2126/0.7152/0.0722,
and the ratio is (L_lighter + 0.05) / (L_darker + 0.05).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

# Subset of CSS named colors that shows up in desk-scale fixtures and
# hand-written stylesheets. Unknown names are treated as unresolvable.
NAMED_COLORS: dict[str, str] = {
    "black": "#000000",
    "silver": "#c0c0c0",
    "gray": "#808080",
    "grey": "#808080",
    "white": "#ffffff",
    "maroon": "#800000",
    "red": "#ff0000",
    "purple": "#800080",
    "fuchsia": "#ff00ff",
    "green": "#008000",
    "lime": "#00ff00",
    "olive": "#808000",
    "yellow": "#ffff00",
    "navy": "#000080",
    "blue": "#0000ff",
    "teal": "#008080",
    "aqua": "#00ffff",
    "orange": "#ffa500",
    "darkgray": "#a9a9a9",
    "darkgrey": "#a9a9a9",
    "lightgray": "#d3d3d3",
    "lightgrey": "#d3d3d3",
    "dimgray": "#696969",
    "dimgrey": "#696969",
    "whitesmoke": "#f5f5f5",
    "gainsboro": "#dcdcdc",
    "darkblue": "#00008b",
    "darkgreen": "#006400",
    "darkred": "#8b0000",
    "gold": "#ffd700",
    "indigo": "#4b0082",
    "ivory": "#fffff0",
    "khaki": "#f0e68c",
    "lavender": "#e6e6fa",
    "pink": "#ffc0cb",
    "salmon": "#fa8072",
    "tomato": "#ff6347",
    "transparent": "#00000000",
}

_RGB_RE = re.compile(
    r"rgba?\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*(?:,\s*([0-9.]+)\s*)?\)",
    re.IGNORECASE,
)


@dataclass(frozen=True)
class ColorSRGB:
    """An sRGB color with 0-255 integer channels and 0-1 alpha."""

    r: int
    g: int
    b: int
    a: float = 1.0

    def __post_init__(self) -> None:
        for name in ("r", "g", "b"):
            v = getattr(self, name)
            if not 0 <= v <= 255:
                raise ValueError(f"channel {name}={v} outside 0-255")
        if not 0.0 <= self.a <= 1.0:
            raise ValueError(f"alpha {self.a} outside 0-1")

    def composite_over(self, bg: "ColorSRGB") -> "ColorSRGB":
        """Alpha-composite this color over an opaque background."""
        if self.a >= 1.0:
            return ColorSRGB(self.r, self.g, self.b, 1.0)
        a = self.a
        return ColorSRGB(
            round(self.r * a + bg.r * (1 - a)),
            round(self.g * a + bg.g * (1 - a)),
            round(self.b * a + bg.b * (1 - a)),
            1.0,
        )


def parse_css_color(value: str) -> ColorSRGB | None:
    """Parse a CSS color literal. Returns None when unresolvable."""
    v = value.strip().lower()
    if v in NAMED_COLORS:
        v = NAMED_COLORS[v]
    if v.startswith("#"):
        hexpart = v[1:]
        if len(hexpart) in (3, 4):
            hexpart = "".join(ch * 2 for ch in hexpart)
        if len(hexpart) == 6:
            hexpart += "ff"
        if len(hexpart) != 8:
            return None
        try:
            r, g, b, a = (int(hexpart[i : i + 2], 16) for i in (0, 2, 4, 6))
        except ValueError:
            return None
        return ColorSRGB(r, g, b, a / 255.0)
    m = _RGB_RE.fullmatch(v)
    if m:
        r, g, b = (min(int(m.group(i)), 255) for i in (1, 2, 3))
        a = float(m.group(4)) if m.group(4) is not None else 1.0
        return ColorSRGB(r, g, b, min(a, 1.0))
    return None


def _linearize(channel: int) -> float:
    s = channel / 255.0
    if s <= 0.04045:
        return s / 12.92
    return ((s + 0.055) / 1.055) ** 2.4


def relative_luminance(c: ColorSRGB) -> float:
    """Relative luminance in [0, 1]; 0 for black, 1 for white."""
    return (
        0.2126 * _linearize(c.r)
        + 0.7152 * _linearize(c.g)
        + 0.0722 * _linearize(c.b)
    )


def contrast_ratio(fg: ColorSRGB, bg: ColorSRGB) -> float:
    """Contrast ratio in [1, 21]; symmetric in its arguments.

    Translucent foregrounds are composited over the background first;
    the background itself is treated as opaque.
    """
    bg = ColorSRGB(bg.r, bg.g, bg.b, 1.0)
    fg = fg.composite_over(bg)
    l1 = relative_luminance(fg)
    l2 = relative_luminance(bg)
    lighter, darker = max(l1, l2), min(l1, l2)
    return (lighter + 0.05) / (darker + 0.05)
