"""Direct attribute-value editing: preview/commit semantics, snapping, history.

An edit goes through three phases. ``begin`` resolves an edit handle from the
current scene (handles only exist on marks rendered at Compact size or
larger). ``preview`` holds a transient candidate value that overlays the
committed graph without touching it; dependent state (similarity row, scenes)
is recomputed from the overlay. ``commit`` writes the value, records an
undoable operation, and widens the attribute's observed range when exceeded.
Undo restores the value and the prior range exactly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import EngineError, E_BAD_PAYLOAD, E_NOT_EDITABLE, E_VALIDATION
from .graph import AttributeDef, MultivariateGraph, WEIGHT_ATTR

PREVIEW_RANGE_SLACK = 0.10
SNAP_TOLERANCE_PX = 4.0


@dataclass(frozen=True)
class EditTarget:
    object_kind: str  # "node" | "edge"
    object_id: str
    attribute: str
    pixel_to_value: float = 0.0  # value delta per upward pixel of drag


@dataclass(frozen=True)
class EditOp:
    target: EditTarget
    old_value: float | None
    new_value: float | None
    old_range: tuple[float, float]
    new_range: tuple[float, float]
    timestamp: float = 0.0


@dataclass
class History:
    undo_stack: list[EditOp] = field(default_factory=list)
    redo_stack: list[EditOp] = field(default_factory=list)


@dataclass
class PendingEdit:
    target: EditTarget
    old_value: float | None
    current_value: float | None


def snap_value(candidate: float, others: list[float], tolerance_px: float, pixel_to_value: float) -> float:
    """Snap to the nearest other object's value within the pixel tolerance.

    Equidistant neighbors resolve to the smaller value; with no neighbor in
    range the candidate passes through unchanged.
    """
    if pixel_to_value <= 0 or not others:
        return candidate
    best = None
    best_px = None
    for v in sorted(others):
        px = abs(candidate - v) / pixel_to_value
        if px <= tolerance_px and (best_px is None or px < best_px):
            best, best_px = v, px
    return candidate if best is None else best


def clamp_preview(value: float, d: AttributeDef) -> float:
    """Previews stay inside the observed range extended by 10% on each side."""
    span = d.observed_max - d.observed_min
    lo = d.observed_min - PREVIEW_RANGE_SLACK * span
    hi = d.observed_max + PREVIEW_RANGE_SLACK * span
    return min(max(value, lo), hi)


def find_handle(scene_marks: list[dict], target: dict) -> EditTarget:
    """Locate an edit handle in the current scene for the requested target.

    Raises E_NOT_EDITABLE when no visible mark carries one, which is exactly
    the case when the object's cell is below Compact size (or not focused).
    """
    kind = target.get("objectKind")
    obj = target.get("objectId")
    attr = target.get("attribute")
    if kind not in ("node", "edge") or not obj or not attr:
        raise EngineError(E_BAD_PAYLOAD, "edit target needs objectKind, objectId, attribute")
    for m in reversed(scene_marks):
        h = m.get("edit")
        if h and h["objectKind"] == kind and h["objectId"] == obj and h["attribute"] == attr:
            return EditTarget(kind, obj, attr, h["pixelToValue"])
    raise EngineError(E_NOT_EDITABLE, f"{kind} {obj!r} attribute {attr!r} has no edit handle at the current size")


class EditController:
    """Single-writer edit state: one pending preview plus undo/redo history."""

    def __init__(self):
        self.history = History()
        self.pending: PendingEdit | None = None

    # -- preview ----------------------------------------------------------

    def begin(self, graph: MultivariateGraph, target: EditTarget) -> PendingEdit:
        old = read_value(graph, target)
        self.pending = PendingEdit(target=target, old_value=old, current_value=old)
        return self.pending

    def cancel(self) -> None:
        self.pending = None

    def preview(
        self,
        graph: MultivariateGraph,
        *,
        value: float | None = None,
        pixel_delta: float | None = None,
        snap: bool = False,
        snap_candidates: list[float] | None = None,
    ) -> float:
        if self.pending is None:
            raise EngineError(E_NOT_EDITABLE, "no edit in progress")
        t = self.pending.target
        d = _def_for(graph, t)
        if value is None:
            if pixel_delta is None:
                raise EngineError(E_BAD_PAYLOAD, "preview needs a value or a pixelDelta")
            # A missing value materializes from the attribute minimum.
            base = self.pending.current_value
            if base is None:
                base = d.observed_min
            value = base + float(pixel_delta) * t.pixel_to_value
        value = float(value)
        if value != value or value in (float("inf"), float("-inf")):
            raise EngineError(E_VALIDATION, "preview value must be finite")
        value = clamp_preview(value, d)
        if snap and snap_candidates:
            value = snap_value(value, snap_candidates, SNAP_TOLERANCE_PX, t.pixel_to_value)
        self.pending.current_value = value
        return value

    # -- commit / history ---------------------------------------------------

    def commit(
        self,
        graph: MultivariateGraph,
        *,
        value: float | None = None,
        source: str = "drag",
        target: EditTarget | None = None,
    ) -> EditOp:
        if source == "drag":
            if self.pending is None:
                raise EngineError(E_NOT_EDITABLE, "no edit in progress to commit")
            t = self.pending.target
            final = self.pending.current_value if value is None else float(value)
            old = self.pending.old_value
        elif source == "numeric-entry":
            if target is None and self.pending is not None:
                target = self.pending.target
            if target is None:
                raise EngineError(E_BAD_PAYLOAD, "numeric entry needs a target")
            t = target
            if value is None:
                raise EngineError(E_BAD_PAYLOAD, "numeric entry needs a value")
            final = float(value)
            old = read_value(graph, t)
        else:
            raise EngineError(E_BAD_PAYLOAD, f"unknown commit source: {source!r}")
        if final is None or final != final or final in (float("inf"), float("-inf")):
            raise EngineError(E_VALIDATION, "committed value must be finite")

        d = _def_for(graph, t)
        old_range = (d.observed_min, d.observed_max)
        write_value(graph, t, final)
        d.widen(final)
        op = EditOp(
            target=t,
            old_value=old,
            new_value=final,
            old_range=old_range,
            new_range=(d.observed_min, d.observed_max),
            timestamp=time.time(),
        )
        self.history.undo_stack.append(op)
        self.history.redo_stack.clear()
        self.pending = None
        return op

    def undo(self, graph: MultivariateGraph) -> EditOp | None:
        if not self.history.undo_stack:
            return None
        op = self.history.undo_stack.pop()
        write_value(graph, op.target, op.old_value)
        d = _def_for(graph, op.target)
        d.observed_min, d.observed_max = op.old_range
        self.history.redo_stack.append(op)
        return op

    def redo(self, graph: MultivariateGraph) -> EditOp | None:
        if not self.history.redo_stack:
            return None
        op = self.history.redo_stack.pop()
        write_value(graph, op.target, op.new_value)
        d = _def_for(graph, op.target)
        d.observed_min, d.observed_max = op.new_range
        self.history.undo_stack.append(op)
        return op


def _def_for(graph: MultivariateGraph, t: EditTarget) -> AttributeDef:
    return graph.node_def(t.attribute) if t.object_kind == "node" else graph.edge_def(t.attribute)


def read_value(graph: MultivariateGraph, t: EditTarget) -> float | None:
    if t.object_kind == "node":
        return graph.node(t.object_id).values.get(t.attribute)
    a, b = t.object_id.split("~", 1)
    e = graph.edge_between(a, b)
    if e is None:
        raise EngineError("E_UNKNOWN_ID", f"unknown edge: {t.object_id!r}")
    return graph.edge_value(e, t.attribute)


def write_value(graph: MultivariateGraph, t: EditTarget, value: float | None) -> None:
    if t.object_kind == "node":
        node = graph.node(t.object_id)
        if value is None:
            node.values.pop(t.attribute, None)
        else:
            node.values[t.attribute] = float(value)
        return
    a, b = t.object_id.split("~", 1)
    e = graph.edge_between(a, b)
    if e is None:
        raise EngineError("E_UNKNOWN_ID", f"unknown edge: {t.object_id!r}")
    if t.attribute == WEIGHT_ATTR:
        if value is None:
            raise EngineError(E_VALIDATION, "edge weight cannot be removed")
        if value < 0:
            raise EngineError(E_VALIDATION, "edge weight must be >= 0")
        e.weight = float(value)
    elif value is None:
        e.values.pop(t.attribute, None)
    else:
        e.values[t.attribute] = float(value)
