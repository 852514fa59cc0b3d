"""Embedded chart renderers for focus cells.

Every renderer honors the level of detail: at Pixel only the residue color
survives; Miniature draws a minimal chart in a contrast color over the
residue background; Compact adds value labels and edit handles; Medium adds
attribute/axis labels and extra context. From Compact upward the residue
moves from the background to the border, restoring a white plot background.

Label dropping is deterministic: a text label is skipped when its estimated
width exceeds 130% of the slot it annotates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cells import ObjectSet, VisSpec
from .colors import CONTRAST_DARK, HIGHLIGHT_COLOR, OBJECT_PALETTE, contrast_color
from .errors import EngineError, E_INCOMPATIBLE_VIS
from .graph import AttributeDef, normalize_value
from .layout import Lod, Rect
from .marks import (
    Z_RMC_BG,
    Z_RMC_LABEL,
    Z_RMC_MARK,
    circle_mark,
    edit_handle,
    line_mark,
    path_mark,
    polyline_mark,
    rect_mark,
    text_mark,
)
from .nodelink import DEFAULT_SEED, layout_nodelink


@dataclass
class ChartContext:
    """Everything a renderer needs beyond the objects themselves."""

    defs: list[AttributeDef]
    object_kind: str = "nodes"
    highlight: frozenset = frozenset()
    # Full-dataset rows for dimmed parallel-coordinates context at Medium.
    dataset: list[tuple[str, dict]] = field(default_factory=list)
    # Induced edges for node-link: (node a, node b, weight, edge id).
    edges: list[tuple[str, str, float, str]] = field(default_factory=list)
    weight_domain: tuple[float, float] = (0.0, 1.0)
    seed: int = DEFAULT_SEED
    editable: bool = True


def render_embedded(
    vis: VisSpec,
    objects: ObjectSet,
    values: dict[str, dict],
    rect: Rect,
    lod: Lod,
    residue_color: str,
    ctx: ChartContext,
) -> list[dict]:
    marks: list[dict] = []
    if lod == Lod.PIXEL:
        ref = objects.ids[0] if len(objects.ids) == 1 else None
        marks.append(rect_mark(rect.x, rect.y, rect.w, rect.h, Z_RMC_BG, fill=residue_color, ref=ref))
        return marks

    if lod == Lod.MINIATURE:
        marks.append(rect_mark(rect.x, rect.y, rect.w, rect.h, Z_RMC_BG, fill=residue_color))
        mono = contrast_color(residue_color)
    else:
        marks.append(
            rect_mark(rect.x, rect.y, rect.w, rect.h, Z_RMC_BG, fill="#ffffff", stroke=residue_color, stroke_width=2)
        )
        mono = None

    if not objects.ids or not ctx.defs and vis.kind != "node-link":
        return marks

    renderer = _RENDERERS.get(vis.kind)
    if renderer is None:
        raise EngineError(E_INCOMPATIBLE_VIS, f"unknown visualization kind: {vis.kind!r}")
    marks.extend(renderer(objects, values, rect, lod, mono, ctx))
    return marks


# -- shared helpers ----------------------------------------------------------


def _plot_rect(rect: Rect, lod: Lod) -> Rect:
    if lod == Lod.MINIATURE:
        pad = 1.5
        return Rect(rect.x + pad, rect.y + pad, max(rect.w - 2 * pad, 1.0), max(rect.h - 2 * pad, 1.0))
    top = 10.0 if lod == Lod.COMPACT else 12.0
    bottom = 4.0 if lod == Lod.COMPACT else 14.0
    pad = 5.0
    return Rect(
        rect.x + pad,
        rect.y + top,
        max(rect.w - 2 * pad, 1.0),
        max(rect.h - top - bottom, 1.0),
    )


def _object_color(i: int, obj_id: str, mono: str | None, ctx: ChartContext, shade: int = 0) -> str:
    if obj_id in ctx.highlight:
        return HIGHLIGHT_COLOR
    if mono is not None:
        return mono
    return OBJECT_PALETTE[(i + shade) % len(OBJECT_PALETTE)]


def _fmt(v: float) -> str:
    return f"{v:.4g}"


def _label_fits(text: str, slot_w: float, font_size: float) -> bool:
    return 0.6 * font_size * len(text) <= 1.3 * slot_w


def _pixel_to_value(d: AttributeDef, pixels: float) -> float:
    span = d.observed_max - d.observed_min
    if span <= 0:
        span = 1.0
    return span / max(pixels, 1e-9)


def _handle(ctx: ChartContext, obj_id: str, d: AttributeDef, pixels: float) -> dict | None:
    if not ctx.editable:
        return None
    kind = "node" if ctx.object_kind == "nodes" else "edge"
    return edit_handle(kind, obj_id, d.name, _pixel_to_value(d, pixels))


def _hatch_path(x: float, y: float, w: float, h: float) -> str:
    """Diagonal hatching covering a box, for missing-value placeholders."""
    lines = []
    steps = max(int((w + h) / 6), 2)
    for i in range(1, steps):
        t = i / steps
        lines.append(f"M{round(x, 3)},{round(y + h * t, 3)}L{round(x + w * t, 3)},{round(y, 3)}")
    return "".join(lines)


# -- bar family --------------------------------------------------------------


def _render_bars(objects, values, rect, lod, mono, ctx) -> list[dict]:
    """Bar chart; one bar per attribute for a single object, attribute groups
    of one bar per object otherwise (row objects leftmost)."""
    marks: list[dict] = []
    plot = _plot_rect(rect, lod)
    defs = ctx.defs
    k = len(defs)
    n_obj = len(objects.ids)
    group_w = plot.w / k
    bar_w = group_w * 0.8 / n_obj
    baseline = plot.y + plot.h
    font = 7.0 if lod == Lod.COMPACT else 8.0

    marks.append(line_mark(plot.x, baseline, plot.x + plot.w, baseline, Z_RMC_MARK, stroke=mono or "#888888", stroke_width=0.75))
    for a, d in enumerate(defs):
        gx = plot.x + a * group_w + group_w * 0.1
        for i, obj_id in enumerate(objects.ids):
            v = values[obj_id].get(d.name)
            x = gx + i * bar_w
            color = _object_color(i, obj_id, mono, ctx)
            if mono is not None and n_obj > 1 and obj_id not in ctx.highlight:
                opacity = 1.0 - 0.45 * (i / (n_obj - 1))
            else:
                opacity = None
            if v is None:
                h = plot.h
                marks.append(
                    path_mark(
                        _hatch_path(x, plot.y, bar_w, h),
                        Z_RMC_MARK,
                        stroke=color,
                        stroke_width=0.5,
                        opacity=0.45,
                        ref=obj_id,
                        edit=_handle(ctx, obj_id, d, plot.h) if lod >= Lod.COMPACT else None,
                    )
                )
                continue
            h = normalize_value(v, d) * plot.h
            marks.append(
                rect_mark(
                    x,
                    baseline - h,
                    bar_w,
                    h,
                    Z_RMC_MARK,
                    fill=color,
                    opacity=opacity,
                    ref=obj_id,
                    edit=_handle(ctx, obj_id, d, plot.h) if lod >= Lod.COMPACT else None,
                )
            )
            if lod >= Lod.COMPACT:
                label = _fmt(v)
                if _label_fits(label, bar_w, font):
                    marks.append(
                        text_mark(x + bar_w / 2, baseline - h - 2, label, Z_RMC_LABEL,
                                  font_size=font, fill=CONTRAST_DARK, anchor="middle", ref=obj_id)
                    )
        if lod >= Lod.MEDIUM and _label_fits(d.name, group_w, font):
            marks.append(
                text_mark(plot.x + a * group_w + group_w / 2, baseline + 10, d.name, Z_RMC_LABEL,
                          font_size=font, fill=CONTRAST_DARK, anchor="middle")
            )
    return marks


def _render_diff_bar(objects, values, rect, lod, mono, ctx) -> list[dict]:
    """Signed per-attribute difference of two objects around a centered zero line."""
    if len(objects.ids) != 2:
        raise EngineError(E_INCOMPATIBLE_VIS, "difference bars need exactly 2 objects")
    a_id, b_id = objects.ids
    marks: list[dict] = []
    plot = _plot_rect(rect, lod)
    defs = ctx.defs
    k = len(defs)
    slot = plot.w / k
    bar_w = slot * 0.64
    mid = plot.y + plot.h / 2
    half = plot.h / 2
    font = 7.0 if lod == Lod.COMPACT else 8.0
    pos_color = mono or OBJECT_PALETTE[0]
    neg_color = mono or OBJECT_PALETTE[1]

    marks.append(line_mark(plot.x, mid, plot.x + plot.w, mid, Z_RMC_MARK, stroke=mono or "#888888", stroke_width=0.75))
    for i, d in enumerate(defs):
        va = values[a_id].get(d.name)
        vb = values[b_id].get(d.name)
        x = plot.x + i * slot + (slot - bar_w) / 2
        if va is None or vb is None:
            marks.append(
                path_mark(_hatch_path(x, mid - half * 0.3, bar_w, half * 0.6), Z_RMC_MARK,
                          stroke=mono or "#999999", stroke_width=0.5, opacity=0.45, ref=a_id if va is None else b_id)
            )
            continue
        diff = normalize_value(va, d) - normalize_value(vb, d)
        h = abs(diff) * half
        y = mid - h if diff >= 0 else mid
        marks.append(
            rect_mark(x, y, bar_w, h, Z_RMC_MARK, fill=pos_color if diff >= 0 else neg_color, ref=a_id)
        )
        if lod >= Lod.COMPACT:
            label = f"{diff:+.2f}"
            if _label_fits(label, slot, font):
                ly = y - 2 if diff >= 0 else y + h + font
                marks.append(text_mark(x + bar_w / 2, ly, label, Z_RMC_LABEL, font_size=font,
                                       fill=CONTRAST_DARK, anchor="middle", ref=a_id))
        if lod >= Lod.MEDIUM and _label_fits(d.name, slot, font):
            marks.append(text_mark(plot.x + i * slot + slot / 2, plot.y + plot.h + 10, d.name,
                                   Z_RMC_LABEL, font_size=font, fill=CONTRAST_DARK, anchor="middle"))
    return marks


# -- star family -------------------------------------------------------------


def star_axis_angles(k: int) -> list[float]:
    """Axis angles 2*pi*i/k, mapped to screen space with angle 0 pointing right
    and angles increasing counterclockwise (screen y grows downward)."""
    return [2.0 * math.pi * i / k for i in range(k)]


def _star_point(cx: float, cy: float, angle: float, r: float) -> tuple[float, float]:
    return cx + r * math.cos(angle), cy - r * math.sin(angle)


def _render_star(objects, values, rect, lod, mono, ctx) -> list[dict]:
    """Star plot; one closed polygon per object, row object drawn on top.
    Missing values leave gaps in the outline."""
    marks: list[dict] = []
    plot = _plot_rect(rect, lod)
    defs = ctx.defs
    k = len(defs)
    if k < 3:
        raise EngineError(E_INCOMPATIBLE_VIS, "star plots need at least 3 shown attributes")
    cx, cy = plot.x + plot.w / 2, plot.y + plot.h / 2
    radius = max(min(plot.w, plot.h) / 2 - (0.0 if lod == Lod.MINIATURE else 6.0), 1.0)
    angles = star_axis_angles(k)
    axis_color = mono or "#aaaaaa"
    font = 6.5 if lod == Lod.COMPACT else 8.0

    for a, d in zip(angles, defs):
        ex, ey = _star_point(cx, cy, a, radius)
        marks.append(line_mark(cx, cy, ex, ey, Z_RMC_MARK, stroke=axis_color, stroke_width=0.5))
        if lod >= Lod.MEDIUM:
            lx, ly = _star_point(cx, cy, a, radius + 9)
            marks.append(text_mark(lx, ly, d.name, Z_RMC_LABEL, font_size=font, fill=CONTRAST_DARK, anchor="middle"))

    n_obj = len(objects.ids)
    for i in range(n_obj - 1, -1, -1):  # row object (index 0) ends up on top
        obj_id = objects.ids[i]
        color = _object_color(i, obj_id, mono, ctx)
        vertices: list[tuple[float, float] | None] = []
        for a, d in zip(angles, defs):
            v = values[obj_id].get(d.name)
            vertices.append(None if v is None else _star_point(cx, cy, a, normalize_value(v, d) * radius))
        segments = _closed_runs(vertices)
        complete = all(p is not None for p in vertices)
        for seg in segments:
            if len(seg) == 1:
                marks.append(circle_mark(seg[0][0], seg[0][1], 1.5, Z_RMC_MARK, fill=color, ref=obj_id))
            else:
                marks.append(
                    polyline_mark(seg, Z_RMC_MARK, stroke=color, stroke_width=1.2, ref=obj_id,
                                  closed=complete, fill=color if complete and n_obj == 1 else None,
                                  opacity=0.85 if complete and n_obj == 1 else None)
                )
        if lod >= Lod.COMPACT:
            for a, d in zip(angles, defs):
                v = values[obj_id].get(d.name)
                if v is None:
                    hx, hy = cx, cy  # placeholder handle at the axis origin
                    marks.append(
                        circle_mark(hx, hy, 2.0, Z_RMC_MARK, fill="#ffffff", stroke=color, stroke_width=0.8,
                                    ref=obj_id, edit=_handle(ctx, obj_id, d, radius))
                    )
                    continue
                px, py = _star_point(cx, cy, a, normalize_value(v, d) * radius)
                marks.append(
                    circle_mark(px, py, 2.0, Z_RMC_MARK, fill=color, ref=obj_id,
                                edit=_handle(ctx, obj_id, d, radius))
                )
                if n_obj <= 2:
                    label = _fmt(v)
                    if _label_fits(label, radius, font):
                        lx, ly = _star_point(cx, cy, a, normalize_value(v, d) * radius + 6)
                        marks.append(text_mark(lx, ly, label, Z_RMC_LABEL, font_size=font,
                                               fill=CONTRAST_DARK, anchor="middle", ref=obj_id))
    return marks


def _closed_runs(vertices: list) -> list[list[tuple[float, float]]]:
    """Split a cyclic vertex list into maximal runs of defined points."""
    n = len(vertices)
    if all(v is not None for v in vertices):
        return [list(vertices)]
    if all(v is None for v in vertices):
        return []
    # rotate so the cycle starts right after a gap, then collect runs
    start = next(i for i in range(n) if vertices[i] is None)
    runs: list[list] = []
    current: list = []
    for off in range(1, n + 1):
        v = vertices[(start + off) % n]
        if v is None:
            if current:
                runs.append(current)
                current = []
        else:
            current.append(v)
    if current:
        runs.append(current)
    return runs


# -- parallel coordinates ----------------------------------------------------


def _render_parallel(objects, values, rect, lod, mono, ctx) -> list[dict]:
    """Parallel coordinates; axes rotate 90 degrees in portrait cells so the
    axis spread follows the longer side. Medium adds the whole dataset as
    dimmed context polylines behind the objects."""
    marks: list[dict] = []
    plot = _plot_rect(rect, lod)
    defs = ctx.defs
    k = len(defs)
    portrait = plot.h > plot.w
    font = 6.0 if lod == Lod.COMPACT else 7.5

    def axis_pos(i: int) -> float:
        span = plot.h if portrait else plot.w
        if k == 1:
            return (plot.y if portrait else plot.x) + span / 2
        return (plot.y if portrait else plot.x) + span * i / (k - 1)

    def point(i: int, t: float) -> tuple[float, float]:
        if portrait:
            return plot.x + t * plot.w, axis_pos(i)
        return axis_pos(i), plot.y + plot.h - t * plot.h

    axis_color = mono or "#aaaaaa"
    for i, d in enumerate(defs):
        p0 = point(i, 0.0)
        p1 = point(i, 1.0)
        marks.append(line_mark(p0[0], p0[1], p1[0], p1[1], Z_RMC_MARK, stroke=axis_color, stroke_width=0.6))
        if lod >= Lod.COMPACT:
            lo, hi = _fmt(d.observed_min), _fmt(d.observed_max)
            marks.append(text_mark(p0[0], p0[1] + (8 if not portrait else 0), lo, Z_RMC_LABEL,
                                   font_size=font, fill=CONTRAST_DARK, anchor="middle"))
            marks.append(text_mark(p1[0], p1[1] - (2 if not portrait else 0), hi, Z_RMC_LABEL,
                                   font_size=font, fill=CONTRAST_DARK, anchor="middle"))
        if lod >= Lod.MEDIUM:
            marks.append(text_mark(p0[0], (p0[1] + 16) if not portrait else p0[1] - 4, d.name, Z_RMC_LABEL,
                                   font_size=font, fill=CONTRAST_DARK, anchor="middle"))

    def polyline_for(vals: dict, color: str, width: float, opacity, ref) -> list[dict]:
        pts: list = []
        for i, d in enumerate(defs):
            v = vals.get(d.name)
            pts.append(None if v is None else point(i, normalize_value(v, d)))
        out = []
        run: list = []
        for p in pts + [None]:
            if p is None:
                if len(run) == 1:
                    out.append(circle_mark(run[0][0], run[0][1], 1.2, Z_RMC_MARK, fill=color, opacity=opacity, ref=ref))
                elif len(run) > 1:
                    out.append(polyline_mark(run, Z_RMC_MARK, stroke=color, stroke_width=width, opacity=opacity, ref=ref))
                run = []
            else:
                run.append(p)
        return out

    if lod >= Lod.MEDIUM:
        shown = set(objects.ids)
        for ds_id, ds_vals in ctx.dataset:
            if ds_id in shown:
                continue
            if ds_id in ctx.highlight:
                marks.extend(polyline_for(ds_vals, HIGHLIGHT_COLOR, 1.0, 0.9, ds_id))
            else:
                marks.extend(polyline_for(ds_vals, "#bbbbbb", 0.5, 0.25, ds_id))

    for i, obj_id in enumerate(objects.ids):
        color = _object_color(i, obj_id, mono, ctx)
        marks.extend(polyline_for(values[obj_id], color, 1.2, None, obj_id))
        if lod >= Lod.COMPACT and ctx.editable:
            for ax, d in enumerate(defs):
                v = values[obj_id].get(d.name)
                if v is None:
                    continue
                px, py = point(ax, normalize_value(v, d))
                extent = plot.w if portrait else plot.h
                marks.append(circle_mark(px, py, 1.8, Z_RMC_MARK, fill=color, ref=obj_id,
                                         edit=_handle(ctx, obj_id, d, extent)))
    return marks


# -- node-link ---------------------------------------------------------------


def _render_node_link(objects, values, rect, lod, mono, ctx) -> list[dict]:
    """Induced subgraph with a seeded force-directed layout. Node radius maps
    the first shown attribute, link width the edge weight."""
    marks: list[dict] = []
    plot = _plot_rect(rect, lod)
    if objects.kind == "nodes":
        node_ids = list(objects.ids)
        edges = [e for e in ctx.edges if e[0] in objects.ids and e[1] in objects.ids]
    else:
        edges = list(ctx.edges)
        node_ids = []
        for a, b, _w, _eid in edges:
            if a not in node_ids:
                node_ids.append(a)
            if b not in node_ids:
                node_ids.append(b)
    if not node_ids:
        return marks

    r_max = max(min(plot.w, plot.h) / 12.0, 3.0)
    r_min = 2.0
    size_def = ctx.defs[0] if ctx.defs else None
    radii = {}
    for nid in node_ids:
        v = values.get(nid, {}).get(size_def.name) if size_def is not None else None
        radii[nid] = r_min + (normalize_value(v, size_def) * (r_max - r_min) if v is not None else 1.0)

    pos = layout_nodelink(tuple(node_ids), tuple((a, b) for a, b, _w, _e in edges), plot,
                          seed=ctx.seed, inset=r_max + 2.0)

    wlo, whi = ctx.weight_domain
    for a, b, w, eid in edges:
        t = 0.5 if whi <= wlo else (w - wlo) / (whi - wlo)
        width = 0.5 + 3.0 * max(0.0, min(1.0, t))
        color = HIGHLIGHT_COLOR if eid in ctx.highlight else (mono or "#777777")
        (x1, y1), (x2, y2) = pos[a], pos[b]
        marks.append(line_mark(x1, y1, x2, y2, Z_RMC_MARK, stroke=color, stroke_width=width, ref=eid))
    for nid in node_ids:
        x, y = pos[nid]
        color = HIGHLIGHT_COLOR if nid in ctx.highlight else (mono or OBJECT_PALETTE[0])
        marks.append(circle_mark(x, y, radii[nid], Z_RMC_MARK, fill=color, stroke="#ffffff", stroke_width=0.5, ref=nid))
        if lod >= Lod.MEDIUM:
            marks.append(text_mark(x, y - radii[nid] - 2, nid, Z_RMC_LABEL, font_size=7.5,
                                   fill=CONTRAST_DARK, anchor="middle", ref=nid))
    return marks


_RENDERERS = {
    "bar": _render_bars,
    "grouped-bar": _render_bars,
    "star": _render_star,
    "overlaid-star": _render_star,
    "diff-bar": _render_diff_bar,
    "parallel-coordinates": _render_parallel,
    "node-link": _render_node_link,
}
