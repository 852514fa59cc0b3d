"""Lifecycle and configuration of the zoomable focus cells of the matrix.

A focus cell (RMC) covers a rectangular index region of the matrix. Cells in
the upper-right (similarity) half describe nodes, cells in the lower-left
(adjacency) half describe edges, and a single diagonal cell describes one
node. A cell renders either one aggregated visualization ("meta") or one
small visualization per covered matrix cell ("unit-grid").

Region index ranges of coexisting cells are pairwise disjoint per axis, which
keeps the bifocal axis solver linear and predictable; transitions that would
violate this are rejected and leave the state untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import (
    EngineError,
    E_BOUNDS,
    E_DIAGONAL,
    E_INCOMPATIBLE_VIS,
    E_OVERLAP,
    E_VALIDATION,
)
from .graph import MultivariateGraph, WEIGHT_ATTR
from .layout import MINIATURE_MIN_PX, Viewport
from .ordering import Ordering

VIS_KINDS = (
    "bar",
    "star",
    "grouped-bar",
    "overlaid-star",
    "diff-bar",
    "parallel-coordinates",
    "node-link",
)


@dataclass(frozen=True)
class Region:
    """Covered sub-matrix: ``rows`` x ``cols`` cells anchored at (row0, col0)."""

    row0: int
    col0: int
    rows: int = 1
    cols: int = 1

    def validate(self, n: int) -> None:
        if self.rows < 1 or self.cols < 1:
            raise EngineError(E_BOUNDS, "region must cover at least one cell")
        if self.row0 < 0 or self.col0 < 0 or self.row0 + self.rows > n or self.col0 + self.cols > n:
            raise EngineError(E_BOUNDS, f"region {self} exceeds the {n}x{n} matrix")

    @property
    def row_range(self) -> tuple[int, int]:
        return (self.row0, self.row0 + self.rows)

    @property
    def col_range(self) -> tuple[int, int]:
        return (self.col0, self.col0 + self.cols)

    @property
    def is_single_diagonal(self) -> bool:
        return self.rows == 1 and self.cols == 1 and self.row0 == self.col0

    def mirrored(self) -> "Region":
        return Region(row0=self.col0, col0=self.row0, rows=self.cols, cols=self.rows)

    def contains_cell(self, r: int, c: int) -> bool:
        return self.row0 <= r < self.row0 + self.rows and self.col0 <= c < self.col0 + self.cols

    def cells(self):
        for r in range(self.row0, self.row0 + self.rows):
            for c in range(self.col0, self.col0 + self.cols):
                yield r, c


@dataclass(frozen=True)
class VisSpec:
    kind: str = "bar"
    shown_attributes: tuple[str, ...] = ()


@dataclass(frozen=True)
class Rmc:
    id: str
    region: Region
    where: str  # "meta" | "unit-grid"
    what: str  # "nodes" | "edges"
    vis: VisSpec
    requested_w: float
    requested_h: float


@dataclass(frozen=True)
class ObjectSet:
    kind: str  # "nodes" | "edges"
    ids: tuple[str, ...]


def _ranges_overlap(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] < b[1] and b[0] < a[1]


def check_disjoint(region: Region, others, ignore_id: str | None = None) -> None:
    for other in others:
        if ignore_id is not None and other.id == ignore_id:
            continue
        if _ranges_overlap(region.row_range, other.region.row_range) or _ranges_overlap(
            region.col_range, other.region.col_range
        ):
            raise EngineError(E_OVERLAP, f"region shares an index range with cell {other.id}")


def what_for_region(region: Region) -> str:
    """Half of the matrix the region is anchored in, by its (row0, col0) cell.

    Anchors above the diagonal (row < col) or on it yield a node focus,
    anchors below it an edge focus.
    """
    return "edges" if region.row0 > region.col0 else "nodes"


def default_shown_attributes(
    g: MultivariateGraph, what: str, sim_attrs: tuple[str, ...] | None, limit: int = 4
) -> tuple[str, ...]:
    if what == "nodes":
        if sim_attrs:
            return tuple(sim_attrs)
        return tuple(d.name for d in g.node_schema[:limit])
    names = [WEIGHT_ATTR] + [d.name for d in g.edge_schema if d.name != WEIGHT_ATTR]
    return tuple(names[:limit])


def create_rmc(
    existing,
    region: Region,
    as_unit_grid: bool,
    n: int,
    rmc_id: str,
    g: MultivariateGraph,
    sim_attrs: tuple[str, ...] | None,
    vp: Viewport | None = None,
) -> Rmc:
    region.validate(n)
    check_disjoint(region, existing)
    what = what_for_region(region)
    shown = default_shown_attributes(g, what, sim_attrs)
    # Created cells start scaled up to the miniature tier per covered cell;
    # cells already larger than that keep their natural footprint.
    w = MINIATURE_MIN_PX * region.cols
    h = MINIATURE_MIN_PX * region.rows
    if vp is not None:
        w = _clamp_extent(max(w, region.cols * vp.width / n), region.cols, n, vp.width, vp.min_context_extent)
        h = _clamp_extent(max(h, region.rows * vp.height / n), region.rows, n, vp.height, vp.min_context_extent)
    return Rmc(
        id=rmc_id,
        region=region,
        where="unit-grid" if as_unit_grid else "meta",
        what=what,
        vis=VisSpec(kind="bar", shown_attributes=shown),
        requested_w=w,
        requested_h=h,
    )


def collect_objects(rmc: Rmc, g: MultivariateGraph, ordering: Ordering) -> ObjectSet:
    """Objects covered by the region, in display order.

    Node focus: deduplicated union of row nodes (top to bottom) then column
    nodes (left to right). Edge focus: existing edges whose endpoint pair
    falls in the region, scanned row-major, deduplicated (a region straddling
    the diagonal sees each pair once, in canonical form).
    """
    region = rmc.region
    if rmc.what == "nodes":
        ids: list[str] = []
        seen: set[str] = set()
        for r in range(*region.row_range):
            nid = ordering.id_at(r)
            if nid not in seen:
                seen.add(nid)
                ids.append(nid)
        for c in range(*region.col_range):
            nid = ordering.id_at(c)
            if nid not in seen:
                seen.add(nid)
                ids.append(nid)
        return ObjectSet(kind="nodes", ids=tuple(ids))

    ids = []
    seen = set()
    for r, c in region.cells():
        a, b = ordering.id_at(r), ordering.id_at(c)
        if a == b:
            continue
        e = g.edge_between(a, b)
        if e is not None and e.id not in seen:
            seen.add(e.id)
            ids.append(e.id)
    return ObjectSet(kind="edges", ids=tuple(ids))


def unit_cell_objects(r: int, c: int, g: MultivariateGraph, ordering: Ordering) -> ObjectSet:
    """Objects of one matrix cell: node pair above the diagonal, single node
    on it, the existing edge (possibly none) below it."""
    if r < c:
        return ObjectSet(kind="nodes", ids=(ordering.id_at(r), ordering.id_at(c)))
    if r == c:
        return ObjectSet(kind="nodes", ids=(ordering.id_at(r),))
    e = g.edge_between(ordering.id_at(r), ordering.id_at(c))
    return ObjectSet(kind="edges", ids=(e.id,) if e is not None else ())


def scale_rmc(
    rmc: Rmc,
    n: int,
    vp: Viewport,
    *,
    absolute: tuple[float, float] | None = None,
    delta: tuple[float, float] | None = None,
    axis_mode: str = "both",
) -> Rmc:
    if axis_mode not in ("both", "x-only", "y-only"):
        raise EngineError(E_VALIDATION, f"unknown axis mode: {axis_mode!r}")
    w, h = rmc.requested_w, rmc.requested_h
    if absolute is not None:
        tw, th = float(absolute[0]), float(absolute[1])
    elif delta is not None:
        tw, th = w + float(delta[0]), h + float(delta[1])
    else:
        raise EngineError(E_VALIDATION, "scale needs an absolute size or a delta")
    if axis_mode in ("both", "x-only"):
        w = _clamp_extent(tw, rmc.region.cols, n, vp.width, vp.min_context_extent)
    if axis_mode in ("both", "y-only"):
        h = _clamp_extent(th, rmc.region.rows, n, vp.height, vp.min_context_extent)
    return replace(rmc, requested_w=w, requested_h=h)


def _clamp_extent(value: float, span: int, n: int, vp_extent: float, min_ctx: float) -> float:
    base_cell = vp_extent / n
    upper = vp_extent - (n - span) * min_ctx
    if upper < base_cell:
        upper = base_cell
    return min(max(value, base_cell), upper)


def resize_region(rmc: Rmc, edge: str, delta_cells: int, n: int, others) -> Rmc:
    r = rmc.region
    if edge == "top":
        region = Region(r.row0 - delta_cells, r.col0, r.rows + delta_cells, r.cols)
    elif edge == "bottom":
        region = Region(r.row0, r.col0, r.rows + delta_cells, r.cols)
    elif edge == "left":
        region = Region(r.row0, r.col0 - delta_cells, r.rows, r.cols + delta_cells)
    elif edge == "right":
        region = Region(r.row0, r.col0, r.rows, r.cols + delta_cells)
    else:
        raise EngineError(E_VALIDATION, f"unknown region edge: {edge!r}")
    if region.rows < 1 or region.cols < 1:
        raise EngineError(E_BOUNDS, "region would vanish")
    region.validate(n)
    check_disjoint(region, others, ignore_id=rmc.id)
    return replace(rmc, region=region)


def switch_what(rmc: Rmc, others) -> Rmc:
    """Mirror the region across the diagonal and toggle node/edge focus."""
    if rmc.region.is_single_diagonal:
        raise EngineError(E_DIAGONAL, "a single diagonal cell has no mirror half")
    region = rmc.region.mirrored()
    check_disjoint(region, others, ignore_id=rmc.id)
    what = "edges" if rmc.what == "nodes" else "nodes"
    return replace(rmc, region=region, what=what)


def toggle_where(rmc: Rmc) -> Rmc:
    return replace(rmc, where="unit-grid" if rmc.where == "meta" else "meta")


def vis_compatible(vis: VisSpec, object_count: int, unit_context: bool) -> bool:
    kind = vis.kind
    if kind in ("star", "overlaid-star") and len(vis.shown_attributes) < 3:
        return False
    if kind in ("diff-bar", "overlaid-star"):
        return object_count == 2
    if kind == "grouped-bar":
        return object_count == 2 if unit_context else object_count >= 2
    return object_count >= 1 or kind in ("bar", "node-link")


def ensure_vis_compatible(rmc: Rmc, vis: VisSpec, object_count: int) -> None:
    if vis.kind not in VIS_KINDS:
        raise EngineError(E_VALIDATION, f"unknown visualization kind: {vis.kind!r}")
    unit_context = rmc.where == "unit-grid"
    if unit_context:
        # A unit cell shows 1 object (diagonal node / single edge) or a node
        # pair; validate against the pair case the grid was created for.
        count = 2 if rmc.what == "nodes" and not rmc.region.is_single_diagonal else 1
    else:
        count = object_count
    if not vis_compatible(vis, count, unit_context):
        raise EngineError(
            E_INCOMPATIBLE_VIS,
            f"{vis.kind} with {len(vis.shown_attributes)} attributes does not fit {count} object(s)",
        )


def fallback_vis(rmc: Rmc, object_count: int) -> Rmc:
    """Reset to the default bar chart when the current vis no longer fits."""
    unit_context = rmc.where == "unit-grid"
    count = 2 if unit_context and rmc.what == "nodes" and not rmc.region.is_single_diagonal else (
        1 if unit_context else object_count
    )
    if vis_compatible(rmc.vis, count, unit_context):
        return rmc
    return replace(rmc, vis=replace(rmc.vis, kind="bar"))
