"""Pairwise node similarity over a selected attribute subset.

The metric is mean normalized Manhattan distance, inverted:
``sim = 1 - mean_a |norm(u_a) - norm(v_a)|`` over the attributes present in
both nodes (pairwise-complete). A pair sharing no selected attribute has an
*undefined* similarity (NaN), which downstream rendering shows as "no data"
rather than zero; unknown is not the same as dissimilar.

Attributes are reduced in canonical (sorted-name) order so the result is
independent of the order the caller selected them in, bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EngineError, E_VALIDATION
from .graph import MultivariateGraph, Node, normalize_value


@dataclass(frozen=True)
class SimilarityConfig:
    selected_attributes: tuple[str, ...]
    missing_policy: str = "pairwise-complete"

    def validate(self, g: MultivariateGraph) -> None:
        if not self.selected_attributes:
            raise EngineError(E_VALIDATION, "similarity needs at least one attribute")
        known = {d.name for d in g.node_schema}
        for name in self.selected_attributes:
            if name not in known:
                raise EngineError("E_UNKNOWN_ATTR", f"unknown node attribute: {name!r}")
        if self.missing_policy != "pairwise-complete":
            raise EngineError(E_VALIDATION, f"unsupported missing policy: {self.missing_policy!r}")

    @property
    def canonical_attributes(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.selected_attributes)))


@dataclass
class SimilarityMatrix:
    """Symmetric n x n similarity; NaN marks undefined cells, diagonal is 1."""

    ids: tuple[str, ...]
    values: np.ndarray
    index: dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self.index:
            self.index = {nid: i for i, nid in enumerate(self.ids)}

    @property
    def n(self) -> int:
        return len(self.ids)

    def get(self, a: str, b: str) -> float | None:
        v = self.values[self.index[a], self.index[b]]
        return None if np.isnan(v) else float(v)


def _normalized_rows(g: MultivariateGraph, attrs: tuple[str, ...]) -> np.ndarray:
    """(n, k) matrix of normalized values; NaN where a value is missing."""
    defs = [g.node_def(a) for a in attrs]
    x = np.full((len(g.nodes), len(attrs)), np.nan)
    for i, node in enumerate(g.nodes):
        for j, d in enumerate(defs):
            v = node.values.get(d.name)
            if v is not None:
                x[i, j] = normalize_value(v, d)
    return x


def _row_similarity(x: np.ndarray, i: int) -> np.ndarray:
    """Similarity of row i against every row, NaN where no shared attributes."""
    diffs = np.abs(x - x[i])
    shared = ~np.isnan(diffs)
    counts = shared.sum(axis=1)
    sums = np.where(shared, diffs, 0.0).sum(axis=1)
    with np.errstate(invalid="ignore"):
        out = np.where(counts > 0, 1.0 - sums / np.maximum(counts, 1), np.nan)
    return out


def similarity(u: Node, v: Node, cfg: SimilarityConfig, g: MultivariateGraph) -> float | None:
    """Similarity of one node pair, or None when they share no attribute."""
    attrs = cfg.canonical_attributes
    xu = np.full(len(attrs), np.nan)
    xv = np.full(len(attrs), np.nan)
    for j, name in enumerate(attrs):
        d = g.node_def(name)
        a, b = u.values.get(name), v.values.get(name)
        if a is not None:
            xu[j] = normalize_value(a, d)
        if b is not None:
            xv[j] = normalize_value(b, d)
    diffs = np.abs(xu - xv)
    shared = ~np.isnan(diffs)
    k = int(shared.sum())
    if k == 0:
        return None
    return float(1.0 - np.where(shared, diffs, 0.0).sum() / k)


def build_similarity_matrix(g: MultivariateGraph, cfg: SimilarityConfig) -> SimilarityMatrix:
    cfg.validate(g)
    x = _normalized_rows(g, cfg.canonical_attributes)
    n = len(g.nodes)
    values = np.empty((n, n))
    for i in range(n):
        values[i] = _row_similarity(x, i)
    np.fill_diagonal(values, 1.0)
    return SimilarityMatrix(ids=tuple(node.id for node in g.nodes), values=values)


def update_similarity_row(
    m: SimilarityMatrix, g: MultivariateGraph, cfg: SimilarityConfig, changed_node: str
) -> SimilarityMatrix:
    """Recompute one node's row and column after a value change.

    Every other cell of the result is bit-identical to the input. Only valid
    while the attributes' observed ranges are unchanged by the edit; a commit
    that widens a range must rebuild the whole matrix instead.
    """
    if changed_node not in m.index:
        raise EngineError("E_UNKNOWN_ID", f"unknown node id: {changed_node!r}")
    i = m.index[changed_node]
    x = _normalized_rows(g, cfg.canonical_attributes)
    row = _row_similarity(x, i)
    values = m.values.copy()
    values[i, :] = row
    values[:, i] = row
    values[i, i] = 1.0
    return SimilarityMatrix(ids=m.ids, values=values)
