"""Deterministic scene generation: base matrix, embedded charts, highlights.

The composed scene is a pure function of session state. Marks are emitted in
ascending z bands with stable construction order inside each band, so the
mark list is already sorted by (z, construction order). The bulk matrix
cells get precomputed canonical strings so digesting large scenes stays
well inside the interactivity budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .cells import Rmc, unit_cell_objects, collect_objects
from .charts import ChartContext, render_embedded
from .colors import (
    ColorScale,
    DIAGONAL_COLOR,
    HIGHLIGHT_COLOR,
    MISSING_COLOR,
    NO_EDGE_COLOR,
    make_scales,
)
from .errors import EngineError, E_UNKNOWN_ID
from .graph import MultivariateGraph, WEIGHT_ATTR, edge_id
from .layout import LayoutResult, Rect, Viewport, lod_for_size, solve_layout
from .marks import (
    Scene,
    Z_CELL,
    Z_GUIDE,
    Z_LABEL,
    line_mark,
    text_mark,
)
from .nodelink import DEFAULT_SEED
from .ordering import Ordering
from .similarity import SimilarityMatrix


@dataclass(frozen=True)
class HighlightSet:
    nodes: frozenset = frozenset()
    edges: frozenset = frozenset()

    def __bool__(self) -> bool:
        return bool(self.nodes) or bool(self.edges)


def highlight_resolve(g: MultivariateGraph, hovered: dict) -> HighlightSet:
    """Resolve a hovered node or edge into the set of objects to emphasize."""
    if "node" in hovered:
        nid = hovered["node"]
        g.node(nid)
        return HighlightSet(nodes=frozenset([nid]))
    if "edge" in hovered:
        a, b = hovered["edge"]
        e = g.edge_between(a, b)
        if e is None:
            raise EngineError(E_UNKNOWN_ID, f"no edge between {a!r} and {b!r}")
        return HighlightSet(nodes=frozenset([e.source, e.target]), edges=frozenset([e.id]))
    raise EngineError(E_UNKNOWN_ID, "hover payload needs 'node' or 'edge'")


@dataclass
class MatrixModel:
    """Bundle of everything the matrix overview encodes."""

    graph: MultivariateGraph
    ordering: Ordering
    sim: SimilarityMatrix | None = None
    scales: dict[str, ColorScale] = field(default_factory=dict)

    def __post_init__(self):
        if not self.scales:
            wdef = self.graph.edge_def(WEIGHT_ATTR)
            self.scales = make_scales("default", (wdef.observed_min, wdef.observed_max))


class _SceneBuilder:
    """Collects marks into z bands; concatenation yields (z, construction) order."""

    BANDS = 6

    def __init__(self):
        self.marks = [[] for _ in range(self.BANDS)]
        self.canon = [[] for _ in range(self.BANDS)]

    def add(self, band: int, mark: dict, canon: str | None = None):
        self.marks[band].append(mark)
        self.canon[band].append(canon)

    def extend(self, band: int, marks: list[dict]):
        self.marks[band].extend(marks)
        self.canon[band].extend([None] * len(marks))

    def build(self, viewport: Viewport) -> Scene:
        flat_marks: list[dict] = []
        flat_canon: list = []
        for band_marks, band_canon in zip(self.marks, self.canon):
            flat_marks.extend(band_marks)
            flat_canon.extend(band_canon)
        return Scene(marks=flat_marks, viewport=viewport, canon=flat_canon)


def _fmt_num(v: float) -> str:
    return repr(round(float(v), 3))


class CellColors:
    """Per-cell overview colors in display coordinates."""

    def __init__(self, model: MatrixModel):
        g = model.graph
        order = model.ordering
        n = len(order.ids)
        self.n = n
        graph_index = {node.id: i for i, node in enumerate(g.nodes)}
        perm = [graph_index[nid] for nid in order.ids]

        self.sim_lut = model.scales["similarity"].lut()
        if model.sim is not None:
            sim_display = model.sim.values[np.ix_(perm, perm)]
            idx = np.where(
                np.isnan(sim_display), -1, np.clip(np.rint(np.nan_to_num(sim_display) * 255), 0, 255)
            ).astype(np.int16)
            self.sim_idx = idx.tolist()
        else:
            self.sim_idx = None

        edge_scale = model.scales["edge"]
        self.edge_cells: dict[tuple[int, int], tuple[str, str]] = {}
        for e in g.edges:
            pa, pb = order.pos_of(e.source), order.pos_of(e.target)
            r, c = (pa, pb) if pa > pb else (pb, pa)
            self.edge_cells[(r, c)] = (edge_scale.color(e.weight), e.id)

    def color_at(self, r: int, c: int) -> str:
        if r == c:
            return DIAGONAL_COLOR
        if r < c:
            if self.sim_idx is None:
                return MISSING_COLOR
            i = self.sim_idx[r][c]
            return MISSING_COLOR if i < 0 else self.sim_lut[i]
        hit = self.edge_cells.get((r, c))
        return hit[0] if hit else NO_EDGE_COLOR


def base_matrix_scene(
    builder: _SceneBuilder,
    model: MatrixModel,
    layout: LayoutResult,
    rmcs: list[Rmc],
    highlight: HighlightSet,
    hover: dict | None,
    viewport: Viewport,
    pan: tuple[float, float],
    colors: CellColors,
) -> None:
    """Emit the overview matrix: cell rects, row/column labels, hover guides."""
    order = model.ordering
    n = len(order.ids)
    px, py = pan
    row_off = [o - py for o in layout.rows.offsets]
    col_off = [o - px for o in layout.cols.offsets]
    row_ext = layout.rows.extents
    col_ext = layout.cols.extents

    visible_rows = [r for r in range(n) if row_off[r] + row_ext[r] > 0 and row_off[r] < viewport.height]
    visible_cols = [c for c in range(n) if col_off[c] + col_ext[c] > 0 and col_off[c] < viewport.width]

    # Row index -> covering cell, valid because row ranges are disjoint.
    row_rmc: dict[int, Rmc] = {}
    for rmc in rmcs:
        for r in range(*rmc.region.row_range):
            row_rmc[r] = rmc

    ys = [_fmt_num(row_off[r]) for r in range(n)]
    hs = [_fmt_num(row_ext[r]) for r in range(n)]
    xs = [_fmt_num(col_off[c]) for c in range(n)]
    ws = [_fmt_num(col_ext[c]) for c in range(n)]

    hi_nodes, hi_edges = highlight.nodes, highlight.edges
    node_ids = order.ids

    for r in visible_rows:
        rmc = row_rmc.get(r)
        y, h = ys[r], hs[r]
        yf, hf = float(y), float(h)
        row_id = node_ids[r]
        for c in visible_cols:
            if rmc is not None and rmc.region.contains_cell(r, c):
                continue
            fill = colors.color_at(r, c)
            ref = None
            if r == c:
                ref = row_id
            elif r > c:
                hit = colors.edge_cells.get((r, c))
                if hit:
                    ref = hit[1]
            emphasized = ref is not None and (ref in hi_nodes or ref in hi_edges)
            if emphasized:
                mark = {
                    "kind": "rect",
                    "x": float(xs[c]),
                    "y": yf,
                    "w": float(ws[c]),
                    "h": hf,
                    "z": Z_CELL,
                    "fill": fill,
                    "stroke": HIGHLIGHT_COLOR,
                    "strokeWidth": 1.2,
                    "ref": ref,
                }
                builder.add(Z_CELL, mark)
                continue
            if ref is None:
                mark = {"kind": "rect", "x": float(xs[c]), "y": yf, "w": float(ws[c]), "h": hf, "z": Z_CELL, "fill": fill}
                canon = (
                    '{"fill":"' + fill + '","h":' + h + ',"kind":"rect","w":' + ws[c]
                    + ',"x":' + xs[c] + ',"y":' + y + ',"z":0}'
                )
            else:
                mark = {
                    "kind": "rect", "x": float(xs[c]), "y": yf, "w": float(ws[c]), "h": hf,
                    "z": Z_CELL, "fill": fill, "ref": ref,
                }
                canon = (
                    '{"fill":"' + fill + '","h":' + h + ',"kind":"rect","ref":"' + ref
                    + '","w":' + ws[c] + ',"x":' + xs[c] + ',"y":' + y + ',"z":0}'
                )
            builder.add(Z_CELL, mark, canon)

    for r in visible_rows:
        nid = node_ids[r]
        label = model.graph.node(nid).label
        size = min(max(0.7 * row_ext[r], 4.0), 12.0)
        emphasized = nid in hi_nodes
        builder.add(
            Z_LABEL,
            text_mark(
                2.0,
                row_off[r] + row_ext[r] / 2 + size * 0.35,
                label,
                Z_LABEL,
                font_size=size + (1.5 if emphasized else 0.0),
                fill=HIGHLIGHT_COLOR if emphasized else "#555555",
                anchor="start",
                ref=nid,
            ),
        )
    for c in visible_cols:
        nid = node_ids[c]
        label = model.graph.node(nid).label
        size = min(max(0.7 * col_ext[c], 4.0), 12.0)
        emphasized = nid in hi_nodes
        builder.add(
            Z_LABEL,
            text_mark(
                col_off[c] + col_ext[c] / 2,
                9.0,
                label,
                Z_LABEL,
                font_size=size + (1.5 if emphasized else 0.0),
                fill=HIGHLIGHT_COLOR if emphasized else "#555555",
                anchor="middle",
                ref=nid,
            ),
        )

    if hover is not None:
        guide_r, guide_c, ref = _hover_cell(model, hover)
        if guide_r is not None:
            cy = row_off[guide_r] + row_ext[guide_r] / 2
            cx = col_off[guide_c] + col_ext[guide_c] / 2
            builder.add(
                Z_GUIDE,
                line_mark(0.0, cy, viewport.width, cy, Z_GUIDE, stroke="#222222", stroke_width=0.75, opacity=0.8, ref=ref),
            )
            builder.add(
                Z_GUIDE,
                line_mark(cx, 0.0, cx, viewport.height, Z_GUIDE, stroke="#222222", stroke_width=0.75, opacity=0.8, ref=ref),
            )


def _hover_cell(model: MatrixModel, hover: dict):
    order = model.ordering
    if "node" in hover:
        p = order.pos_of(hover["node"])
        return p, p, hover["node"]
    if "edge" in hover:
        a, b = hover["edge"]
        pa, pb = order.pos_of(a), order.pos_of(b)
        r, c = (pa, pb) if pa > pb else (pb, pa)
        return r, c, edge_id(a, b)
    return None, None, None


def compose_scene(
    model: MatrixModel,
    rmcs: list[Rmc],
    viewport: Viewport,
    *,
    zoom: float = 1.0,
    pan: tuple[float, float] = (0.0, 0.0),
    highlight: HighlightSet = HighlightSet(),
    hover: dict | None = None,
    value_of=None,
    seed: int = DEFAULT_SEED,
) -> tuple[Scene, LayoutResult]:
    """Build the full composed scene for the current state.

    ``value_of(kind, obj_id, attr)`` resolves effective attribute values and
    lets an in-flight edit preview overlay the committed graph.
    """
    g = model.graph
    n = len(g.nodes)
    virtual = Viewport(viewport.width * zoom, viewport.height * zoom, viewport.min_context_extent)
    layout = solve_layout(n, rmcs, virtual)
    px = min(max(pan[0], 0.0), max(virtual.width - viewport.width, 0.0))
    py = min(max(pan[1], 0.0), max(virtual.height - viewport.height, 0.0))

    if value_of is None:
        def value_of(kind, obj_id, attr):  # committed values only
            if kind == "nodes":
                return g.node(obj_id).values.get(attr)
            src, dst = obj_id.split("~", 1)
            e = g.edge_between(src, dst)
            return None if e is None else g.edge_value(e, attr)

    builder = _SceneBuilder()
    colors = CellColors(model)
    base_matrix_scene(builder, model, layout, rmcs, highlight, hover, viewport, (px, py), colors)

    for rmc in rmcs:
        _render_rmc(builder, rmc, model, layout, (px, py), highlight, colors, value_of, seed)

    return builder.build(viewport), layout


def _render_rmc(builder, rmc: Rmc, model: MatrixModel, layout, pan, highlight, colors, value_of, seed):
    g = model.graph
    order = model.ordering
    vrect = layout.rmc_rects[rmc.id]
    rect = Rect(vrect.x - pan[0], vrect.y - pan[1], vrect.w, vrect.h)

    schema = g.node_schema if rmc.what == "nodes" else g.edge_schema
    known = {d.name: d for d in schema}
    defs = [known[a] for a in rmc.vis.shown_attributes if a in known]

    wdef = g.edge_def(WEIGHT_ATTR)
    ctx = ChartContext(
        defs=defs,
        object_kind=rmc.what,
        highlight=frozenset(highlight.nodes | highlight.edges),
        weight_domain=(wdef.observed_min, wdef.observed_max),
        seed=seed,
    )

    def values_for(ids) -> dict[str, dict]:
        return {
            oid: {d.name: value_of(rmc.what, oid, d.name) for d in defs}
            for oid in ids
        }

    if rmc.vis.kind == "parallel-coordinates":
        if rmc.what == "nodes":
            ctx.dataset = [
                (node.id, {d.name: value_of("nodes", node.id, d.name) for d in defs}) for node in g.nodes
            ]
        else:
            ctx.dataset = [
                (e.id, {d.name: value_of("edges", e.id, d.name) for d in defs}) for e in g.edges
            ]

    if rmc.where == "meta":
        objects = collect_objects(rmc, g, order)
        if rmc.vis.kind == "node-link":
            ctx.edges = _induced_edges(rmc, objects, g, order)
        lod = lod_for_size(rect.w, rect.h)
        residue = colors.color_at(rmc.region.row0, rmc.region.col0)
        marks = render_embedded(rmc.vis, objects, values_for(objects.ids), rect, lod, residue, ctx)
        for m in marks:
            builder.add(m["z"], m)
        return

    row_off = layout.rows.offsets
    col_off = layout.cols.offsets
    for r, c in rmc.region.cells():
        cell_rect = Rect(
            col_off[c] - pan[0],
            row_off[r] - pan[1],
            layout.cols.extents[c],
            layout.rows.extents[r],
        )
        objects = unit_cell_objects(r, c, g, order)
        lod = lod_for_size(cell_rect.w, cell_rect.h)
        residue = colors.color_at(r, c)
        cell_ctx = ctx
        if rmc.vis.kind == "node-link":
            cell_ctx = ChartContext(
                defs=ctx.defs, object_kind=ctx.object_kind, highlight=ctx.highlight,
                dataset=ctx.dataset, weight_domain=ctx.weight_domain, seed=ctx.seed,
            )
            cell_ctx.edges = _induced_edges(rmc, objects, g, order)
        vis = rmc.vis
        if objects.kind == "nodes" and len(objects.ids) == 1 and vis.kind in ("overlaid-star", "diff-bar", "grouped-bar"):
            vis = replace(vis, kind="bar")
        marks = render_embedded(vis, objects, values_for(objects.ids), cell_rect, lod, residue, cell_ctx)
        for m in marks:
            builder.add(m["z"], m)


def _induced_edges(rmc: Rmc, objects, g: MultivariateGraph, order: Ordering):
    out = []
    if objects.kind == "nodes":
        ids = list(objects.ids)
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                e = g.edge_between(a, b)
                if e is not None:
                    out.append((e.source, e.target, e.weight, e.id))
    else:
        for eid in objects.ids:
            a, b = eid.split("~", 1)
            e = g.edge_between(a, b)
            if e is not None:
                out.append((e.source, e.target, e.weight, e.id))
    return out
