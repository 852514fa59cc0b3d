"""Multivariate graph model: ingestion, validation, normalization.

A graph is undirected. Edge endpoints are stored canonically (smaller id
first). Attribute values are optional per object; a missing value is an
absent key, never an imputed number. Attribute ranges are observed from
the data at load time and widened monotonically by edit commits.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .errors import EngineError, E_PARSE, E_VALIDATION

#: Reserved edge attribute name exposing the structural weight, so that
#: color scales, charts, and editing treat weight like any other attribute.
WEIGHT_ATTR = "weight"


@dataclass
class AttributeDef:
    """One quantitative attribute with its observed value range."""

    name: str
    observed_min: float = 0.0
    observed_max: float = 0.0
    unit: str | None = None

    def widen(self, v: float) -> None:
        if v < self.observed_min:
            self.observed_min = float(v)
        if v > self.observed_max:
            self.observed_max = float(v)


@dataclass
class Node:
    id: str
    label: str
    values: dict[str, float] = field(default_factory=dict)


@dataclass
class Edge:
    """Undirected edge; ``source < target`` always holds."""

    source: str
    target: str
    weight: float = 1.0
    values: dict[str, float] = field(default_factory=dict)

    @property
    def key(self) -> tuple[str, str]:
        return (self.source, self.target)

    @property
    def id(self) -> str:
        return edge_id(self.source, self.target)


def edge_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


def edge_id(a: str, b: str) -> str:
    u, v = edge_key(a, b)
    return f"{u}~{v}"


@dataclass
class MultivariateGraph:
    nodes: list[Node] = field(default_factory=list)
    edges: list[Edge] = field(default_factory=list)
    node_schema: list[AttributeDef] = field(default_factory=list)
    edge_schema: list[AttributeDef] = field(default_factory=list)

    # Derived lookups, rebuilt by reindex(); excluded from equality.
    _by_id: dict[str, Node] = field(default_factory=dict, compare=False, repr=False)
    _edge_by_key: dict[tuple[str, str], Edge] = field(default_factory=dict, compare=False, repr=False)
    _degree: dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    def reindex(self) -> None:
        self._by_id = {n.id: n for n in self.nodes}
        self._edge_by_key = {e.key: e for e in self.edges}
        deg = {n.id: 0 for n in self.nodes}
        for e in self.edges:
            deg[e.source] += 1
            deg[e.target] += 1
        self._degree = deg

    # -- lookups ---------------------------------------------------------

    def node(self, node_id: str) -> Node:
        try:
            return self._by_id[node_id]
        except KeyError:
            raise EngineError("E_UNKNOWN_ID", f"unknown node id: {node_id!r}") from None

    def has_node(self, node_id: str) -> bool:
        return node_id in self._by_id

    def edge_between(self, a: str, b: str) -> Edge | None:
        return self._edge_by_key.get(edge_key(a, b))

    def degree(self, node_id: str) -> int:
        return self._degree.get(node_id, 0)

    def node_def(self, name: str) -> AttributeDef:
        for d in self.node_schema:
            if d.name == name:
                return d
        raise EngineError("E_UNKNOWN_ATTR", f"unknown node attribute: {name!r}")

    def edge_def(self, name: str) -> AttributeDef:
        for d in self.edge_schema:
            if d.name == name:
                return d
        raise EngineError("E_UNKNOWN_ATTR", f"unknown edge attribute: {name!r}")

    def edge_value(self, e: Edge, name: str) -> float | None:
        if name == WEIGHT_ATTR:
            return e.weight
        return e.values.get(name)


def normalize_value(v: float, d: AttributeDef) -> float:
    """Map v into [0,1] over the attribute's observed range.

    Values outside the range clamp; a degenerate constant range maps to 0.5.
    """
    lo, hi = d.observed_min, d.observed_max
    if hi <= lo:
        return 0.5
    if v <= lo:
        return 0.0
    if v >= hi:
        return 1.0
    return (v - lo) / (hi - lo)


def graph_stats(g: MultivariateGraph) -> dict:
    """Node/edge counts plus matrix cell accounting for an n x n view."""
    n = len(g.nodes)
    half = n * (n - 1) // 2
    return {
        "nodeCount": n,
        "edgeCount": len(g.edges),
        "cellCounts": {
            "total": n * n,
            "adjacency": half,
            "similarity": half,
            "diagonal": n,
        },
    }


# -- parsing ---------------------------------------------------------------


def parse_dataset(data: bytes | tuple[bytes, bytes], format: str = "json") -> MultivariateGraph:
    """Parse and validate a dataset.

    ``format="json"`` takes one JSON document:
    ``{"nodes":[{"id","label","attrs":{...}}],
       "edges":[{"source","target","weight","attrs":{...}}]}``.
    ``format="csv-pair"`` takes ``(node_table, edge_list)`` byte strings:
    node table columns ``id,label,<attr...>`` (empty cell = missing value),
    edge list columns ``source,target,weight``.
    """
    if format == "json":
        if not isinstance(data, (bytes, bytearray, str)):
            raise EngineError(E_PARSE, "json format expects a single byte string")
        raw = _parse_json(data)
    elif format == "csv-pair":
        if not (isinstance(data, tuple) and len(data) == 2):
            raise EngineError(E_PARSE, "csv-pair format expects (nodes_csv, edges_csv)")
        raw = _parse_csv_pair(data[0], data[1])
    else:
        raise EngineError(E_PARSE, f"unknown dataset format: {format!r}")
    return _build_graph(raw["nodes"], raw["edges"])


def _parse_json(data: bytes | str) -> dict:
    try:
        doc = json.loads(data)
    except (ValueError, UnicodeDecodeError) as exc:
        raise EngineError(E_PARSE, f"malformed JSON dataset: {exc}") from None
    if not isinstance(doc, dict) or "nodes" not in doc or "edges" not in doc:
        raise EngineError(E_PARSE, "dataset must be an object with 'nodes' and 'edges'")
    nodes = []
    for i, rec in enumerate(doc["nodes"]):
        if not isinstance(rec, dict) or "id" not in rec:
            raise EngineError(E_PARSE, f"node record #{i} has no 'id'")
        nodes.append(
            {
                "id": str(rec["id"]),
                "label": str(rec.get("label", rec["id"])),
                "attrs": rec.get("attrs", {}) or {},
            }
        )
    edges = []
    for i, rec in enumerate(doc["edges"]):
        if not isinstance(rec, dict) or "source" not in rec or "target" not in rec:
            raise EngineError(E_PARSE, f"edge record #{i} lacks source/target")
        edges.append(
            {
                "source": str(rec["source"]),
                "target": str(rec["target"]),
                "weight": rec.get("weight", 1.0),
                "attrs": rec.get("attrs", {}) or {},
            }
        )
    return {"nodes": nodes, "edges": edges}


def _parse_csv_pair(nodes_csv: bytes, edges_csv: bytes) -> dict:
    def rows(blob: bytes, what: str):
        try:
            text = blob.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise EngineError(E_PARSE, f"{what} table is not UTF-8: {exc}") from None
        reader = csv.reader(io.StringIO(text))
        table = [r for r in reader if r]
        if not table:
            raise EngineError(E_PARSE, f"{what} table is empty (missing header)")
        return table[0], table[1:]

    nheader, nrows = rows(nodes_csv, "node")
    if len(nheader) < 2 or nheader[0] != "id" or nheader[1] != "label":
        raise EngineError(E_PARSE, "node table header must start with id,label")
    attr_cols = nheader[2:]
    nodes = []
    for i, row in enumerate(nrows):
        if len(row) != len(nheader):
            raise EngineError(E_PARSE, f"node row #{i} has {len(row)} fields, expected {len(nheader)}")
        attrs = {}
        for name, cell in zip(attr_cols, row[2:]):
            cell = cell.strip()
            if cell == "":
                continue
            try:
                attrs[name] = float(cell)
            except ValueError:
                raise EngineError(E_PARSE, f"node row #{i}: non-numeric value {cell!r} for {name!r}") from None
        nodes.append({"id": row[0], "label": row[1], "attrs": attrs, "_columns": attr_cols})

    eheader, erows = rows(edges_csv, "edge")
    if eheader[:3] != ["source", "target", "weight"]:
        raise EngineError(E_PARSE, "edge table header must be source,target,weight")
    edges = []
    for i, row in enumerate(erows):
        if len(row) < 3:
            raise EngineError(E_PARSE, f"edge row #{i} has fewer than 3 fields")
        try:
            w = float(row[2])
        except ValueError:
            raise EngineError(E_PARSE, f"edge row #{i}: non-numeric weight {row[2]!r}") from None
        edges.append({"source": row[0], "target": row[1], "weight": w, "attrs": {}})
    return {"nodes": nodes, "edges": edges}


def _build_graph(node_recs: list[dict], edge_recs: list[dict]) -> MultivariateGraph:
    g = MultivariateGraph()
    seen_ids: set[str] = set()
    node_attr_names: set[str] = set()

    for rec in node_recs:
        nid = rec["id"]
        if nid in seen_ids:
            raise EngineError(E_VALIDATION, f"duplicate node id: {nid!r}")
        if "~" in nid or nid == "":
            raise EngineError(E_VALIDATION, f"invalid node id: {nid!r} (must be non-empty, without '~')")
        seen_ids.add(nid)
        values = {}
        for name, v in rec["attrs"].items():
            if v is None:
                continue
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise EngineError(E_VALIDATION, f"node {nid!r}: attribute {name!r} is not a number")
            values[name] = float(v)
        node_attr_names.update(rec["attrs"].keys())
        node_attr_names.update(rec.get("_columns", ()))
        g.nodes.append(Node(id=nid, label=rec["label"], values=values))

    seen_pairs: set[tuple[str, str]] = set()
    edge_attr_names: set[str] = set()
    for rec in edge_recs:
        a, b = rec["source"], rec["target"]
        if a not in seen_ids:
            raise EngineError(E_VALIDATION, f"edge ({a!r},{b!r}): dangling endpoint {a!r}")
        if b not in seen_ids:
            raise EngineError(E_VALIDATION, f"edge ({a!r},{b!r}): dangling endpoint {b!r}")
        if a == b:
            raise EngineError(E_VALIDATION, f"edge ({a!r},{b!r}): self-loop")
        key = edge_key(a, b)
        if key in seen_pairs:
            raise EngineError(E_VALIDATION, f"duplicate edge between {key[0]!r} and {key[1]!r}")
        seen_pairs.add(key)
        w = rec["weight"]
        if not isinstance(w, (int, float)) or isinstance(w, bool) or w < 0:
            raise EngineError(E_VALIDATION, f"edge ({a!r},{b!r}): weight must be a number >= 0")
        values = {}
        for name, v in rec["attrs"].items():
            if v is None:
                continue
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise EngineError(E_VALIDATION, f"edge ({a!r},{b!r}): attribute {name!r} is not a number")
            values[name] = float(v)
        edge_attr_names.update(rec["attrs"].keys())
        g.edges.append(Edge(source=key[0], target=key[1], weight=float(w), values=values))

    g.node_schema = _observe_schema(sorted(node_attr_names), (n.values for n in g.nodes))
    edge_defs = _observe_schema(sorted(edge_attr_names - {WEIGHT_ATTR}), (e.values for e in g.edges))
    weights = [e.weight for e in g.edges]
    wdef = AttributeDef(WEIGHT_ATTR, min(weights) if weights else 0.0, max(weights) if weights else 0.0)
    g.edge_schema = [wdef] + edge_defs
    g.reindex()
    return g


def _observe_schema(names: list[str], value_maps) -> list[AttributeDef]:
    defs = {name: AttributeDef(name) for name in names}
    first_seen: set[str] = set()
    for values in value_maps:
        for name, v in values.items():
            d = defs[name]
            if name not in first_seen:
                d.observed_min = d.observed_max = v
                first_seen.add(name)
            else:
                d.widen(v)
    return [defs[n] for n in names]


# -- serialization -----------------------------------------------------------


def serialize_dataset(g: MultivariateGraph) -> bytes:
    """Dataset JSON that parses back to a structurally equal graph."""
    doc = {
        "nodes": [
            {"id": n.id, "label": n.label, "attrs": {k: n.values[k] for k in sorted(n.values)}}
            for n in g.nodes
        ],
        "edges": [
            {
                "source": e.source,
                "target": e.target,
                "weight": e.weight,
                "attrs": {k: e.values[k] for k in sorted(e.values)},
            }
            for e in g.edges
        ],
    }
    return json.dumps(doc, indent=1, sort_keys=True).encode("utf-8")
