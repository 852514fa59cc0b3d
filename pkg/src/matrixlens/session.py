"""Command/event protocol and the single-writer analysis session.

A session is a pure fold over its command log: commands mutate state
atomically (a failed command leaves state untouched and yields an error
event), every successful command yields at least an ack, and state-changing
commands additionally yield the regenerated scene. Scenes above a mark-count
threshold are transmitted as index diffs against the previous scene; the
digest always covers the full scene.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import cells
from .cells import Region, Rmc, VisSpec, collect_objects
from .editing import EditController, EditTarget, find_handle, read_value, write_value
from .errors import (
    EngineError,
    E_BAD_PAYLOAD,
    E_SEQ,
    E_STATE,
    E_UNKNOWN_ATTR,
    E_UNKNOWN_ID,
    E_UNKNOWN_KIND,
    E_VALIDATION,
)
from .graph import MultivariateGraph, WEIGHT_ATTR, graph_stats, parse_dataset
from .layout import Viewport
from .marks import Scene, diff_marks, empty_scene, scene_digest
from .nodelink import DEFAULT_SEED
from .ordering import OrderStrategy, order_nodes
from .scene import HighlightSet, MatrixModel, compose_scene, highlight_resolve
from .similarity import SimilarityConfig, build_similarity_matrix, update_similarity_row
from .colors import make_scales

COMMAND_KINDS = (
    "load_dataset",
    "set_similarity_attributes",
    "set_ordering",
    "set_color_scale",
    "global_zoom_pan",
    "create_rmc",
    "scale_rmc",
    "resize_region",
    "switch_what",
    "toggle_where",
    "set_vis",
    "add_shown_attribute",
    "remove_shown_attribute",
    "hover",
    "clear_hover",
    "begin_edit",
    "preview_edit",
    "commit_edit",
    "undo",
    "redo",
    "dismiss_rmc",
    "reset",
    "export_svg",
    "query_stats",
)

FULL_SCENE_MARK_LIMIT = 5000

#: Commands that leave a pending drag preview alive; any other command
#: cancels it first (implicit abort), reverting the transient value.
_PRESERVES_PENDING = {"preview_edit", "commit_edit", "hover", "clear_hover", "query_stats", "export_svg"}


def rmc_seed() -> int:
    raw = os.environ.get("RMC_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_SEED


class Session:
    def __init__(self, viewport: Viewport | None = None, seed: int | None = None):
        self.viewport = viewport or Viewport(960.0, 960.0)
        self.seed = rmc_seed() if seed is None else seed
        self.graph: MultivariateGraph | None = None
        self.sim_cfg: SimilarityConfig | None = None
        self.sim = None  # committed similarity matrix
        self.sim_view = None  # what scenes read (preview may differ)
        self.order_strategy = OrderStrategy("input")
        self.ordering = None
        self.color_scheme = "default"
        self.zoom = 1.0
        self.pan = (0.0, 0.0)
        self.rmcs: dict[str, Rmc] = {}
        self._rmc_counter = 0
        self.hover: dict | None = None
        self.edits = EditController()
        self.last_seq = 0
        self.scene: Scene = empty_scene(self.viewport)
        self.digest: str = scene_digest(self.scene)
        self.layout = None
        self._pending_aborted = False

    # -- protocol entry point ----------------------------------------------

    def handle_command(self, cmd: dict) -> list[dict]:
        try:
            seq, kind, payload = self._check_envelope(cmd)
        except EngineError as exc:
            return [_error_event(cmd.get("seq"), exc)]
        prev_marks = self.scene.marks
        prev_digest = self.digest
        saved_pending = None
        try:
            if kind != "load_dataset" and self.graph is None:
                raise EngineError(E_STATE, "no dataset loaded")
            if kind not in _PRESERVES_PENDING and self.edits.pending is not None:
                # Any other command aborts an in-flight drag preview.
                saved_pending = (self.edits.pending, self.sim_view, self._pending_aborted)
                self.edits.cancel()
                self.sim_view = self.sim
                self._pending_aborted = True
            events = getattr(self, "_cmd_" + kind)(seq, payload)
        except EngineError as exc:
            if saved_pending is not None:
                self.edits.pending, self.sim_view, self._pending_aborted = saved_pending
            return [_error_event(seq, exc)]
        self.last_seq = seq
        result = []
        for ev in events:
            if ev is _SCENE_EVENT:
                result.append(self._scene_event(seq, prev_marks, prev_digest, "scene_update"))
            elif ev is _HIGHLIGHT_EVENT:
                result.append(self._scene_event(seq, prev_marks, prev_digest, "highlight_update"))
            else:
                result.append(ev)
        return result

    def _check_envelope(self, cmd: dict):
        if not isinstance(cmd, dict):
            raise EngineError(E_BAD_PAYLOAD, "command must be an object")
        kind = cmd.get("kind")
        if kind not in COMMAND_KINDS:
            raise EngineError(E_UNKNOWN_KIND, f"unknown command kind: {kind!r}")
        seq = cmd.get("seq")
        if not isinstance(seq, int) or isinstance(seq, bool) or seq <= self.last_seq:
            raise EngineError(E_SEQ, f"seq must be an integer greater than {self.last_seq}")
        payload = cmd.get("payload", {}) or {}
        if not isinstance(payload, dict):
            raise EngineError(E_BAD_PAYLOAD, "payload must be an object")
        return seq, kind, payload

    # -- derived state -------------------------------------------------------

    def _reorder(self) -> None:
        self.ordering = order_nodes(self.graph, self.order_strategy, self.sim)

    def _model(self) -> MatrixModel:
        wdef = self.graph.edge_def(WEIGHT_ATTR)
        scales = make_scales(self.color_scheme, (wdef.observed_min, wdef.observed_max))
        return MatrixModel(graph=self.graph, ordering=self.ordering, sim=self.sim_view, scales=scales)

    def _refresh(self) -> None:
        self._pending_aborted = False
        highlight = (
            highlight_resolve(self.graph, self.hover) if self.hover is not None else HighlightSet()
        )
        self.scene, self.layout = compose_scene(
            self._model(),
            list(self.rmcs.values()),
            self.viewport,
            zoom=self.zoom,
            pan=self.pan,
            highlight=highlight,
            hover=self.hover,
            seed=self.seed,
        )
        self.digest = scene_digest(self.scene)

    def _scene_event(self, seq: int, prev_marks, prev_digest, kind: str) -> dict:
        payload: dict = {"digest": self.digest}
        if kind == "highlight_update":
            highlight = (
                highlight_resolve(self.graph, self.hover) if self.hover is not None else HighlightSet()
            )
            payload["highlight"] = {
                "nodes": sorted(highlight.nodes),
                "edges": sorted(highlight.edges),
            }
        changes = None
        if prev_digest is not None and len(self.scene.marks) >= FULL_SCENE_MARK_LIMIT:
            changes = diff_marks(prev_marks, self.scene.marks)
        if changes is not None:
            payload["mode"] = "diff"
            payload["base"] = prev_digest
            payload["changes"] = changes
            payload["length"] = len(self.scene.marks)
        else:
            payload["mode"] = "full"
            payload["scene"] = scene_to_jsonable(self.scene)
        return {"kind": kind, "inReplyTo": seq, "payload": payload}

    def _rmc(self, rmc_id) -> Rmc:
        if not isinstance(rmc_id, str) or rmc_id not in self.rmcs:
            raise EngineError(E_UNKNOWN_ID, f"unknown cell id: {rmc_id!r}")
        return self.rmcs[rmc_id]

    def _rect_payload(self, rmc_id: str) -> dict:
        """Solved pixel rect of a cell, so clients can hit-test without
        recomputing the layout."""
        rect = self.layout.rmc_rects[rmc_id]
        return {"x": rect.x - self.pan[0], "y": rect.y - self.pan[1], "w": rect.w, "h": rect.h}

    @contextmanager
    def _preview_overlay(self):
        """Temporarily apply the pending preview value to the committed graph."""
        p = self.edits.pending
        if p is None:
            yield
            return
        write_value(self.graph, p.target, p.current_value)
        try:
            yield
        finally:
            write_value(self.graph, p.target, p.old_value)

    # -- command handlers ----------------------------------------------------

    def _cmd_load_dataset(self, seq, payload):
        fmt = payload.get("format", "json")
        if "dataset" in payload:
            import json as _json

            data = _json.dumps(payload["dataset"]).encode("utf-8")
            g = parse_dataset(data, "json")
        elif "path" in payload:
            g = load_dataset_file(payload["path"], fmt)
        else:
            raise EngineError(E_BAD_PAYLOAD, "load_dataset needs 'dataset' or 'path'")
        vp = payload.get("viewport")
        if vp:
            self.viewport = Viewport(
                float(vp.get("width", self.viewport.width)),
                float(vp.get("height", self.viewport.height)),
                float(vp.get("minContextExtent", self.viewport.min_context_extent)),
            )
        self.graph = g
        self.sim_cfg = None
        self.sim = self.sim_view = None
        self.rmcs.clear()
        self._rmc_counter = 0
        self.hover = None
        self.zoom, self.pan = 1.0, (0.0, 0.0)
        self.edits = EditController()
        self._reorder()
        self._refresh()
        return [_ack(seq, graph_stats(g)), _SCENE_EVENT]

    def _cmd_set_similarity_attributes(self, seq, payload):
        attrs = payload.get("attributes")
        if not isinstance(attrs, list) or not all(isinstance(a, str) for a in attrs):
            raise EngineError(E_BAD_PAYLOAD, "set_similarity_attributes needs a list of names")
        cfg = SimilarityConfig(selected_attributes=tuple(attrs))
        cfg.validate(self.graph)
        self.sim_cfg = cfg
        self.sim = self.sim_view = build_similarity_matrix(self.graph, cfg)
        self._reorder()
        self._refresh()
        return [_ack(seq, {"attributes": list(attrs)}), _SCENE_EVENT]

    def _cmd_set_ordering(self, seq, payload):
        strategy = payload.get("strategy")
        if not isinstance(strategy, str):
            raise EngineError(E_BAD_PAYLOAD, "set_ordering needs a strategy")
        if strategy in ("attribute", "cluster"):
            parsed = OrderStrategy(
                strategy,
                attribute=payload.get("attribute"),
                descending=bool(payload.get("descending", True)),
            )
        else:
            parsed = OrderStrategy.parse(strategy)  # input|degree|simclust|attr:x|cluster:x
        if parsed.kind == "simclust" and self.sim is None:
            raise EngineError(E_STATE, "similarity-clustering needs similarity attributes first")
        probe = order_nodes(self.graph, parsed, self.sim)  # validates attribute names
        self.order_strategy = parsed
        self.ordering = probe
        self._refresh()
        return [_ack(seq, {"strategy": parsed.kind}), _SCENE_EVENT]

    def _cmd_set_color_scale(self, seq, payload):
        scheme = payload.get("scheme", "default")
        if scheme not in ("default", "colorblind"):
            raise EngineError(E_BAD_PAYLOAD, f"unknown color scheme: {scheme!r}")
        self.color_scheme = scheme
        self._refresh()
        return [_ack(seq, {"scheme": scheme}), _SCENE_EVENT]

    def _cmd_global_zoom_pan(self, seq, payload):
        zoom = float(payload.get("zoom", self.zoom))
        if not (1.0 <= zoom <= 32.0):
            raise EngineError(E_VALIDATION, "zoom must be in [1, 32]")
        pan = payload.get("pan")
        if pan is not None:
            pan = (float(pan[0]), float(pan[1]))
        else:
            pan = self.pan
        self.zoom = zoom
        self.pan = pan
        self._refresh()
        return [_ack(seq, {"zoom": zoom, "pan": list(pan)}), _SCENE_EVENT]

    def _cmd_create_rmc(self, seq, payload):
        region = _parse_region(payload.get("region"), len(self.graph.nodes))
        as_unit = bool(payload.get("asUnitGrid", False))
        rmc_id = f"rmc{self._rmc_counter + 1}"
        sim_attrs = self.sim_cfg.selected_attributes if self.sim_cfg else None
        rmc = cells.create_rmc(
            list(self.rmcs.values()), region, as_unit, len(self.graph.nodes), rmc_id, self.graph, sim_attrs,
            vp=self.viewport,
        )
        self._rmc_counter += 1
        self.rmcs[rmc_id] = rmc
        self._refresh()
        return [
            _ack(seq, {"rmcId": rmc_id, "what": rmc.what, "where": rmc.where, "rect": self._rect_payload(rmc_id)}),
            _SCENE_EVENT,
        ]

    def _cmd_scale_rmc(self, seq, payload):
        rmc = self._rmc(payload.get("id"))
        absolute = payload.get("absolute")
        delta = payload.get("delta")
        updated = cells.scale_rmc(
            rmc,
            len(self.graph.nodes),
            self.viewport,
            absolute=tuple(absolute) if absolute else None,
            delta=tuple(delta) if delta else None,
            axis_mode=payload.get("axisMode", "both"),
        )
        self.rmcs[rmc.id] = updated
        self._refresh()
        return [
            _ack(seq, {"rmcId": rmc.id, "requested": [updated.requested_w, updated.requested_h],
                       "rect": self._rect_payload(rmc.id)}),
            _SCENE_EVENT,
        ]

    def _cmd_resize_region(self, seq, payload):
        rmc = self._rmc(payload.get("id"))
        edge = payload.get("edge")
        delta = payload.get("deltaCells")
        if not isinstance(delta, int) or isinstance(delta, bool):
            raise EngineError(E_BAD_PAYLOAD, "resize_region needs integer deltaCells")
        updated = cells.resize_region(rmc, edge, delta, len(self.graph.nodes), list(self.rmcs.values()))
        updated = cells.fallback_vis(updated, len(collect_objects(updated, self.graph, self.ordering).ids))
        self.rmcs[rmc.id] = updated
        self._refresh()
        return [
            _ack(seq, {"rmcId": rmc.id, "region": _region_jsonable(updated.region),
                       "rect": self._rect_payload(rmc.id)}),
            _SCENE_EVENT,
        ]

    def _cmd_switch_what(self, seq, payload):
        rmc = self._rmc(payload.get("id"))
        updated = cells.switch_what(rmc, list(self.rmcs.values()))
        sim_attrs = self.sim_cfg.selected_attributes if self.sim_cfg else None
        shown = cells.default_shown_attributes(self.graph, updated.what, sim_attrs)
        updated = Rmc(
            id=updated.id, region=updated.region, where=updated.where, what=updated.what,
            vis=VisSpec(kind=updated.vis.kind, shown_attributes=shown),
            requested_w=updated.requested_w, requested_h=updated.requested_h,
        )
        updated = cells.fallback_vis(updated, len(collect_objects(updated, self.graph, self.ordering).ids))
        self.rmcs[rmc.id] = updated
        self._refresh()
        return [
            _ack(seq, {"rmcId": rmc.id, "what": updated.what, "region": _region_jsonable(updated.region),
                       "rect": self._rect_payload(rmc.id)}),
            _SCENE_EVENT,
        ]

    def _cmd_toggle_where(self, seq, payload):
        rmc = self._rmc(payload.get("id"))
        updated = cells.toggle_where(rmc)
        updated = cells.fallback_vis(updated, len(collect_objects(updated, self.graph, self.ordering).ids))
        self.rmcs[rmc.id] = updated
        self._refresh()
        return [
            _ack(seq, {"rmcId": rmc.id, "where": updated.where, "rect": self._rect_payload(rmc.id)}),
            _SCENE_EVENT,
        ]

    def _cmd_set_vis(self, seq, payload):
        rmc = self._rmc(payload.get("id"))
        kind = payload.get("kind", rmc.vis.kind)
        shown = payload.get("shownAttributes")
        if shown is None:
            shown_t = rmc.vis.shown_attributes
        else:
            if not isinstance(shown, list) or not all(isinstance(a, str) for a in shown):
                raise EngineError(E_BAD_PAYLOAD, "shownAttributes must be a list of names")
            shown_t = tuple(shown)
        self._check_attrs(rmc.what, shown_t)
        vis = VisSpec(kind=kind, shown_attributes=shown_t)
        objects = collect_objects(rmc, self.graph, self.ordering)
        cells.ensure_vis_compatible(rmc, vis, len(objects.ids))
        self.rmcs[rmc.id] = Rmc(
            id=rmc.id, region=rmc.region, where=rmc.where, what=rmc.what, vis=vis,
            requested_w=rmc.requested_w, requested_h=rmc.requested_h,
        )
        self._refresh()
        return [_ack(seq, {"rmcId": rmc.id, "vis": kind}), _SCENE_EVENT]

    def _cmd_add_shown_attribute(self, seq, payload):
        rmc = self._rmc(payload.get("id"))
        name = payload.get("attribute")
        self._check_attrs(rmc.what, (name,))
        if name in rmc.vis.shown_attributes:
            shown = rmc.vis.shown_attributes
        else:
            shown = rmc.vis.shown_attributes + (name,)
        return self._replace_shown(seq, rmc, shown)

    def _cmd_remove_shown_attribute(self, seq, payload):
        rmc = self._rmc(payload.get("id"))
        name = payload.get("attribute")
        shown = tuple(a for a in rmc.vis.shown_attributes if a != name)
        if not shown:
            raise EngineError(E_VALIDATION, "cannot remove the last shown attribute")
        return self._replace_shown(seq, rmc, shown)

    def _replace_shown(self, seq, rmc: Rmc, shown: tuple[str, ...]):
        vis = VisSpec(kind=rmc.vis.kind, shown_attributes=shown)
        objects = collect_objects(rmc, self.graph, self.ordering)
        cells.ensure_vis_compatible(rmc, vis, len(objects.ids))
        self.rmcs[rmc.id] = Rmc(
            id=rmc.id, region=rmc.region, where=rmc.where, what=rmc.what, vis=vis,
            requested_w=rmc.requested_w, requested_h=rmc.requested_h,
        )
        self._refresh()
        return [_ack(seq, {"rmcId": rmc.id, "shownAttributes": list(shown)}), _SCENE_EVENT]

    def _check_attrs(self, what: str, names) -> None:
        schema = self.graph.node_schema if what == "nodes" else self.graph.edge_schema
        known = {d.name for d in schema}
        for name in names:
            if not isinstance(name, str) or name not in known:
                raise EngineError(E_UNKNOWN_ATTR, f"unknown {what[:-1]} attribute: {name!r}")

    def _cmd_hover(self, seq, payload):
        highlight_resolve(self.graph, payload)  # validates
        self.hover = {k: payload[k] for k in ("node", "edge") if k in payload}
        with self._preview_overlay():
            self._refresh()
        return [_ack(seq, {}), _HIGHLIGHT_EVENT]

    def _cmd_clear_hover(self, seq, payload):
        self.hover = None
        with self._preview_overlay():
            self._refresh()
        return [_ack(seq, {}), _HIGHLIGHT_EVENT]

    def _cmd_begin_edit(self, seq, payload):
        target = payload.get("target")
        if target is None:
            # Explicit abort; the envelope already cancelled any pending preview.
            if self._pending_aborted:
                self._refresh()
                return [_ack(seq, {"cancelled": True}), _SCENE_EVENT]
            return [_ack(seq, {"cancelled": False})]
        resolved = find_handle(self.scene.marks, target)
        if self._pending_aborted:
            # The scene still shows an aborted preview; restore the committed view.
            self._refresh()
            self.edits.begin(self.graph, resolved)
            return [
                _ack(seq, {"target": _target_jsonable(resolved), "oldValue": self.edits.pending.old_value}),
                _SCENE_EVENT,
            ]
        self.edits.begin(self.graph, resolved)
        return [_ack(seq, {"target": _target_jsonable(resolved), "oldValue": self.edits.pending.old_value})]

    def _cmd_preview_edit(self, seq, payload):
        if self.edits.pending is None:
            raise EngineError(E_STATE, "no edit in progress; send begin_edit first")
        snap_candidates = None
        if payload.get("snap"):
            snap_candidates = self._snap_candidates(self.edits.pending.target)
        value = self.edits.preview(
            self.graph,
            value=payload.get("value"),
            pixel_delta=payload.get("pixelDelta"),
            snap=bool(payload.get("snap")),
            snap_candidates=snap_candidates,
        )
        p = self.edits.pending
        with self._preview_overlay():
            if self.sim is not None and p.target.object_kind == "node":
                self.sim_view = update_similarity_row(self.sim, self.graph, self.sim_cfg, p.target.object_id)
            self._refresh()
        return [_ack(seq, {"value": value}), _SCENE_EVENT]

    def _cmd_commit_edit(self, seq, payload):
        source = payload.get("source", "drag")
        target = None
        if payload.get("target") is not None:
            target = find_handle(self.scene.marks, payload["target"])
        op = self.edits.commit(self.graph, value=payload.get("value"), source=source, target=target)
        self._after_graph_change(op)
        return [
            _ack(seq, {"target": _target_jsonable(op.target), "value": op.new_value, "oldValue": op.old_value}),
            _SCENE_EVENT,
        ]

    def _cmd_undo(self, seq, payload):
        op = self.edits.undo(self.graph)
        if op is None:
            return [_ack(seq, {"noop": True})]
        self._after_graph_change(op, inverse=True)
        return [_ack(seq, {"target": _target_jsonable(op.target), "value": op.old_value}), _SCENE_EVENT]

    def _cmd_redo(self, seq, payload):
        op = self.edits.redo(self.graph)
        if op is None:
            return [_ack(seq, {"noop": True})]
        self._after_graph_change(op)
        return [_ack(seq, {"target": _target_jsonable(op.target), "value": op.new_value}), _SCENE_EVENT]

    def _after_graph_change(self, op, inverse: bool = False) -> None:
        if self.sim is not None:
            if op.target.object_kind == "node":
                if op.old_range != op.new_range:
                    self.sim = build_similarity_matrix(self.graph, self.sim_cfg)
                else:
                    self.sim = update_similarity_row(self.sim, self.graph, self.sim_cfg, op.target.object_id)
            # Edge edits do not feed the node similarity.
        self.sim_view = self.sim
        self._reorder()
        self._refresh()

    def _snap_candidates(self, target: EditTarget) -> list[float]:
        """Values of the same attribute on the other objects of any focus cell
        containing the edited object."""
        out: list[float] = []
        for rmc in self.rmcs.values():
            objects = collect_objects(rmc, self.graph, self.ordering)
            if target.object_id not in objects.ids:
                continue
            for oid in objects.ids:
                if oid == target.object_id:
                    continue
                t = EditTarget(target.object_kind, oid, target.attribute)
                try:
                    v = read_value(self.graph, t)
                except EngineError:
                    continue
                if v is not None:
                    out.append(v)
        return out

    def _cmd_dismiss_rmc(self, seq, payload):
        rmc = self._rmc(payload.get("id"))
        del self.rmcs[rmc.id]
        self._refresh()
        return [_ack(seq, {"rmcId": rmc.id}), _SCENE_EVENT]

    def _cmd_reset(self, seq, payload):
        self.rmcs.clear()
        self.hover = None
        self.zoom, self.pan = 1.0, (0.0, 0.0)
        self._refresh()
        return [_ack(seq, {}), _SCENE_EVENT]

    def _cmd_export_svg(self, seq, payload):
        path = payload.get("path")
        if not path:
            raise EngineError(E_BAD_PAYLOAD, "export_svg needs a path")
        from .svg import export_svg

        count = export_svg(self.scene, path)
        return [_ack(seq, {"path": path, "shapes": count})]

    def _cmd_query_stats(self, seq, payload):
        stats = graph_stats(self.graph)
        stats["digest"] = self.digest
        return [{"kind": "stats", "inReplyTo": seq, "payload": stats}]


# Sentinels consumed by handle_command to splice in scene-bearing events.
_SCENE_EVENT = object()
_HIGHLIGHT_EVENT = object()


def _ack(seq: int, payload: dict) -> dict:
    return {"kind": "ack", "inReplyTo": seq, "payload": payload}


def _error_event(seq, exc: EngineError) -> dict:
    return {
        "kind": "error",
        "inReplyTo": seq if isinstance(seq, int) else None,
        "payload": {"code": exc.code, "message": exc.message},
    }


def _parse_region(raw, n: int) -> Region:
    if not isinstance(raw, dict):
        raise EngineError(E_BAD_PAYLOAD, "region must be an object with row0/col0/rows/cols")
    try:
        region = Region(
            row0=int(raw["row0"]),
            col0=int(raw["col0"]),
            rows=int(raw.get("rows", 1)),
            cols=int(raw.get("cols", 1)),
        )
    except (KeyError, TypeError, ValueError):
        raise EngineError(E_BAD_PAYLOAD, "region must be an object with row0/col0/rows/cols") from None
    region.validate(n)
    return region


def _region_jsonable(region: Region) -> dict:
    return {"row0": region.row0, "col0": region.col0, "rows": region.rows, "cols": region.cols}


def _target_jsonable(t: EditTarget) -> dict:
    return {
        "objectKind": t.object_kind,
        "objectId": t.object_id,
        "attribute": t.attribute,
        "pixelToValue": t.pixel_to_value,
    }


def scene_to_jsonable(scene: Scene) -> dict:
    vp = scene.viewport
    return {
        "digestSeed": scene.digest_seed,
        "marks": scene.marks,
        "viewport": {
            "width": vp.width,
            "height": vp.height,
            "minContextExtent": vp.min_context_extent,
        },
    }


def load_dataset_file(path: str, fmt: str) -> MultivariateGraph:
    try:
        if fmt == "csv":
            fmt = "csv-pair"
        if fmt == "csv-pair":
            nodes_path, edges_path = _split_csv_paths(path)
            with open(nodes_path, "rb") as f:
                nodes_blob = f.read()
            with open(edges_path, "rb") as f:
                edges_blob = f.read()
            return parse_dataset((nodes_blob, edges_blob), "csv-pair")
        with open(path, "rb") as f:
            return parse_dataset(f.read(), "json")
    except OSError as exc:
        raise EngineError("E_IO", f"cannot read dataset: {exc}") from None


def _split_csv_paths(path: str) -> tuple[str, str]:
    if "," in path:
        a, b = path.split(",", 1)
        return a, b
    raise EngineError(E_BAD_PAYLOAD, "csv datasets need two comma-separated paths: nodes.csv,edges.csv")
