"""Renderable marks, scenes, canonical serialization, and scene digests.

A mark is a flat dict: ``kind`` plus kind-specific geometry keys, style keys
(fill, stroke, strokeWidth, fontSize, opacity), optional ``ref`` (the node or
edge id the mark encodes), optional ``edit`` (an edit handle), and ``z``.
Absent keys are omitted. All numbers are rounded to 3 decimals at
construction, so the canonical JSON form is exactly
``json.dumps(mark, sort_keys=True, separators=(",", ":"))``.

Scene digests hash the canonical serialization of the mark list in order;
they are stable across runs and platforms. Scene construction may attach a
precomputed canonical string per mark (a fast path for the bulk matrix
cells); correctness of that fast path against ``json.dumps`` is pinned by
tests.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .layout import Viewport

DIGEST_SEED = 0x524D43  # constant folded into every digest

# z-order bands, ascending
Z_CELL = 0
Z_LABEL = 1
Z_GUIDE = 2
Z_RMC_BG = 3
Z_RMC_MARK = 4
Z_RMC_LABEL = 5
Z_RMC_BORDER = 6


def _r(v: float) -> float:
    return round(float(v), 3)


def rect_mark(x, y, w, h, z, *, fill=None, stroke=None, stroke_width=None, opacity=None, ref=None, edit=None) -> dict:
    m = {"kind": "rect", "x": _r(x), "y": _r(y), "w": _r(w), "h": _r(h), "z": z}
    return _style(m, fill, stroke, stroke_width, None, opacity, ref, edit)


def line_mark(x1, y1, x2, y2, z, *, stroke=None, stroke_width=None, opacity=None, ref=None) -> dict:
    m = {"kind": "line", "x1": _r(x1), "y1": _r(y1), "x2": _r(x2), "y2": _r(y2), "z": z}
    return _style(m, None, stroke, stroke_width, None, opacity, ref, None)


def polyline_mark(points, z, *, stroke=None, stroke_width=None, fill=None, opacity=None, ref=None, closed=False) -> dict:
    m = {
        "kind": "polyline",
        "points": [[_r(px), _r(py)] for px, py in points],
        "z": z,
    }
    if closed:
        m["closed"] = True
    return _style(m, fill, stroke, stroke_width, None, opacity, ref, None)


def circle_mark(cx, cy, r, z, *, fill=None, stroke=None, stroke_width=None, opacity=None, ref=None, edit=None) -> dict:
    m = {"kind": "circle", "cx": _r(cx), "cy": _r(cy), "r": _r(r), "z": z}
    return _style(m, fill, stroke, stroke_width, None, opacity, ref, edit)


def text_mark(x, y, text, z, *, font_size=None, fill=None, anchor=None, opacity=None, ref=None) -> dict:
    m = {"kind": "text", "x": _r(x), "y": _r(y), "text": str(text), "z": z}
    if anchor:
        m["anchor"] = anchor
    return _style(m, fill, None, None, font_size, opacity, ref, None)


def path_mark(d: str, z, *, stroke=None, stroke_width=None, fill=None, opacity=None, ref=None, edit=None) -> dict:
    m = {"kind": "path", "d": d, "z": z}
    return _style(m, fill, stroke, stroke_width, None, opacity, ref, edit)


def _style(m, fill, stroke, stroke_width, font_size, opacity, ref, edit) -> dict:
    if fill is not None:
        m["fill"] = fill
    if stroke is not None:
        m["stroke"] = stroke
    if stroke_width is not None:
        m["strokeWidth"] = _r(stroke_width)
    if font_size is not None:
        m["fontSize"] = _r(font_size)
    if opacity is not None:
        m["opacity"] = _r(opacity)
    if ref is not None:
        m["ref"] = ref
    if edit is not None:
        m["edit"] = edit
    return m


def edit_handle(object_kind: str, object_id: str, attribute: str, pixel_to_value: float) -> dict:
    """Edit handle payload: dragging by one pixel upward changes the value by
    ``pixelToValue`` (already rounded for canonical serialization)."""
    return {
        "objectKind": object_kind,
        "objectId": object_id,
        "attribute": attribute,
        "pixelToValue": round(float(pixel_to_value), 6),
    }


@dataclass
class Scene:
    """Ordered mark list; ordering is (z band, construction order) by build."""

    marks: list[dict]
    viewport: Viewport
    digest_seed: int = DIGEST_SEED
    # Optional precomputed canonical strings, aligned with marks (None = compute).
    canon: list = field(default_factory=list, repr=False, compare=False)

    def mark_count(self) -> int:
        return len(self.marks)


def canonical_mark(m: dict) -> str:
    return json.dumps(m, sort_keys=True, separators=(",", ":"), allow_nan=False)


def canonical_scene(scene: Scene) -> str:
    """Canonical JSON of the whole scene (keys sorted at every level)."""
    vp = scene.viewport
    prefix = '{"digestSeed":%d,"marks":[' % scene.digest_seed
    suffix = '],"viewport":{"height":%s,"minContextExtent":%s,"width":%s}}' % (
        repr(_r(vp.height)),
        repr(_r(vp.min_context_extent)),
        repr(_r(vp.width)),
    )
    canon = scene.canon
    if canon and len(canon) == len(scene.marks):
        parts = [c if c is not None else canonical_mark(m) for m, c in zip(scene.marks, canon)]
    else:
        parts = [canonical_mark(m) for m in scene.marks]
    return prefix + ",".join(parts) + suffix


def scene_digest(scene: Scene) -> str:
    """Order-sensitive 64-bit digest of the canonically serialized scene."""
    return hashlib.blake2b(canonical_scene(scene).encode("utf-8"), digest_size=8).hexdigest()


def empty_scene(viewport: Viewport) -> Scene:
    return Scene(marks=[], viewport=viewport)


def diff_marks(old: list[dict], new: list[dict]) -> list | None:
    """Index-based mark diff, or None when shapes differ too much to diff."""
    if len(old) != len(new):
        return None
    changes = []
    for i, (a, b) in enumerate(zip(old, new)):
        if a != b:
            changes.append([i, b])
    return changes
