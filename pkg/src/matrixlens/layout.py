"""Bifocal focus+context layout solver and level-of-detail resolution.

Focus spans receive their requested pixel extents while all context rows or
columns share the remaining space uniformly. When the remainder per context
index would fall below the viewport's minimum context extent, the context is
pinned at that minimum and the focus requests are scaled down proportionally
to fill exactly what is left. Extents are carried as reals; the sums are
conserved to the viewport extent up to float rounding (far below 0.5 px).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import EngineError, E_BOUNDS, E_OVERLAP, E_VALIDATION


class Lod(enum.IntEnum):
    """Discrete rendering tiers, ordered from coarsest to richest."""

    PIXEL = 0
    MINIATURE = 1
    COMPACT = 2
    MEDIUM = 3


# Breakpoints on the minimum cell dimension, in pixels.
MINIATURE_MIN_PX = 16.0
COMPACT_MIN_PX = 48.0
MEDIUM_MIN_PX = 120.0


def lod_for_size(w: float, h: float) -> Lod:
    s = min(w, h)
    if s < MINIATURE_MIN_PX:
        return Lod.PIXEL
    if s < COMPACT_MIN_PX:
        return Lod.MINIATURE
    if s < MEDIUM_MIN_PX:
        return Lod.COMPACT
    return Lod.MEDIUM


@dataclass(frozen=True)
class Viewport:
    width: float
    height: float
    min_context_extent: float = 1.0

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise EngineError(E_VALIDATION, "viewport dimensions must be positive")
        if self.min_context_extent <= 0:
            raise EngineError(E_VALIDATION, "minimum context extent must be positive")


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    w: float
    h: float


@dataclass(frozen=True)
class FocusSpan:
    start: int
    length: int
    requested_px: float


@dataclass
class AxisLayout:
    """Per-index pixel extents along one axis plus their prefix sums."""

    extents: list[float]
    offsets: list[float] = field(default_factory=list)

    def __post_init__(self):
        if not self.offsets:
            acc = 0.0
            offs = [0.0]
            for e in self.extents:
                acc += e
                offs.append(acc)
            self.offsets = offs

    def span_rect(self, start: int, length: int) -> tuple[float, float]:
        """(offset, extent) of the half-open index range [start, start+length)."""
        return self.offsets[start], self.offsets[start + length] - self.offsets[start]


def solve_axis(count: int, spans: list[FocusSpan], extent_px: float, min_context: float = 1.0) -> AxisLayout:
    if count <= 0:
        raise EngineError(E_BOUNDS, "axis needs at least one index")
    ordered = sorted(spans, key=lambda s: s.start)
    prev_end = 0
    for s in ordered:
        if s.length < 1 or s.start < 0 or s.start + s.length > count:
            raise EngineError(E_BOUNDS, f"focus span [{s.start},{s.start + s.length}) out of [0,{count})")
        if s.requested_px <= 0:
            raise EngineError(E_VALIDATION, "focus span must request a positive extent")
        if s.start < prev_end:
            raise EngineError(E_OVERLAP, f"focus spans overlap at index {s.start}")
        prev_end = s.start + s.length

    n_focus = sum(s.length for s in ordered)
    n_ctx = count - n_focus
    requested_total = sum(s.requested_px for s in ordered)

    extents = [0.0] * count
    if not ordered:
        uniform = extent_px / count
        return AxisLayout(extents=[uniform] * count)

    if n_ctx == 0:
        scale = extent_px / requested_total
        for s in ordered:
            per = s.requested_px * scale / s.length
            for i in range(s.start, s.start + s.length):
                extents[i] = per
        return AxisLayout(extents=extents)

    ctx = (extent_px - requested_total) / n_ctx
    if ctx >= min_context:
        focus_scale = 1.0
    else:
        available = extent_px - n_ctx * min_context
        if available <= 0.0:
            # Viewport too small to honor even the context minimum: fall back
            # to a uniform squeeze so conservation and non-negativity hold.
            uniform = extent_px / count
            return AxisLayout(extents=[uniform] * count)
        ctx = min_context
        focus_scale = available / requested_total

    for s in ordered:
        per = s.requested_px * focus_scale / s.length
        for i in range(s.start, s.start + s.length):
            extents[i] = per
    for i in range(count):
        if extents[i] == 0.0:
            extents[i] = ctx
    return AxisLayout(extents=extents)


@dataclass
class LayoutResult:
    rows: AxisLayout
    cols: AxisLayout
    rmc_rects: dict[str, Rect]


def solve_layout(n: int, rmcs: list, vp: Viewport) -> LayoutResult:
    """Solve both axes for a set of focus cells and derive their pixel rects.

    ``rmcs`` supplies, per cell, a region (row0/col0/rows/cols) and requested
    pixel size; regions must be pairwise disjoint in row index ranges and in
    column index ranges, which a consistent cell store guarantees.
    """
    row_spans = [FocusSpan(r.region.row0, r.region.rows, r.requested_h) for r in rmcs]
    col_spans = [FocusSpan(r.region.col0, r.region.cols, r.requested_w) for r in rmcs]
    rows = solve_axis(n, row_spans, vp.height, vp.min_context_extent)
    cols = solve_axis(n, col_spans, vp.width, vp.min_context_extent)
    rects = {}
    for r in rmcs:
        y, h = rows.span_rect(r.region.row0, r.region.rows)
        x, w = cols.span_rect(r.region.col0, r.region.cols)
        rects[r.id] = Rect(x, y, w, h)
    return LayoutResult(rows=rows, cols=cols, rmc_rects=rects)
