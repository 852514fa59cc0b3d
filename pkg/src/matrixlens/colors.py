"""Color scales for the matrix halves, plus contrast color selection.

Edge weights use a sequential scale, node similarity a diverging one
(dissimilar -> red, similar -> green by default). Undefined similarity gets
a dedicated "no data" gray that no domain value can produce. A colorblind-
safe alternate palette pair is selectable globally.
"""

from __future__ import annotations

from dataclasses import dataclass

MISSING_COLOR = "#d9d9d9"
DIAGONAL_COLOR = "#eeeeee"
NO_EDGE_COLOR = "#ffffff"
CONTRAST_LIGHT = "#ffffff"
CONTRAST_DARK = "#333333"
HIGHLIGHT_COLOR = "#e41a1c"

# Categorical palette for per-object marks in multi-object charts.
OBJECT_PALETTE = (
    "#4e79a7",
    "#f28e2b",
    "#59a14f",
    "#b07aa1",
    "#76b7b2",
    "#edc948",
    "#ff9da7",
    "#9c755f",
)

PALETTES = {
    "default": {
        "sequential": ("#f7fbff", "#08306b"),
        "diverging": ("#d73027", "#ffffbf", "#1a9850"),
    },
    "colorblind": {
        "sequential": ("#fff5eb", "#7f2704"),
        "diverging": ("#b35806", "#f7f7f7", "#542788"),
    },
}


def _hex_to_rgb(color: str) -> tuple[int, int, int]:
    c = color.lstrip("#")
    return int(c[0:2], 16), int(c[2:4], 16), int(c[4:6], 16)


def _rgb_to_hex(r: int, g: int, b: int) -> str:
    return f"#{r:02x}{g:02x}{b:02x}"


def interpolate(stops: tuple[str, ...], t: float) -> str:
    """Piecewise-linear RGB interpolation through the stop colors, t in [0,1]."""
    t = 0.0 if t < 0.0 else 1.0 if t > 1.0 else t
    if len(stops) == 1:
        return stops[0]
    segments = len(stops) - 1
    pos = t * segments
    k = min(int(pos), segments - 1)
    frac = pos - k
    r0, g0, b0 = _hex_to_rgb(stops[k])
    r1, g1, b1 = _hex_to_rgb(stops[k + 1])
    return _rgb_to_hex(
        round(r0 + (r1 - r0) * frac),
        round(g0 + (g1 - g0) * frac),
        round(b0 + (b1 - b0) * frac),
    )


def relative_luminance(color: str) -> float:
    """ITU-R BT.709 weighted luminance of an sRGB color, in [0,1]."""
    r, g, b = _hex_to_rgb(color)
    return (0.2126 * r + 0.7152 * g + 0.0722 * b) / 255.0


def contrast_color(background: str) -> str:
    """White on dark backgrounds, dark gray on light ones."""
    return CONTRAST_LIGHT if relative_luminance(background) < 0.45 else CONTRAST_DARK


@dataclass(frozen=True)
class ColorScale:
    kind: str  # "sequential-edge-weight" | "diverging-similarity"
    domain: tuple[float, float]
    stops: tuple[str, ...]
    missing_color: str = MISSING_COLOR

    def t_of(self, v: float) -> float:
        lo, hi = self.domain
        if hi <= lo:
            return 0.5
        t = (v - lo) / (hi - lo)
        return 0.0 if t < 0.0 else 1.0 if t > 1.0 else t

    def color(self, v: float | None) -> str:
        if v is None:
            return self.missing_color
        return interpolate(self.stops, self.t_of(v))

    def lut(self, steps: int = 256) -> list[str]:
        """Quantized lookup table for bulk coloring of matrix cells."""
        return [interpolate(self.stops, i / (steps - 1)) for i in range(steps)]


def make_scales(scheme: str, weight_domain: tuple[float, float]) -> dict[str, ColorScale]:
    pal = PALETTES.get(scheme, PALETTES["default"])
    return {
        "edge": ColorScale("sequential-edge-weight", weight_domain, pal["sequential"]),
        "similarity": ColorScale("diverging-similarity", (0.0, 1.0), pal["diverging"]),
    }
