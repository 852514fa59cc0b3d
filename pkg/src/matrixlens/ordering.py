"""Row/column ordering strategies for the matrix view.

All strategies are deterministic; ties break by node id ascending so that
repeated runs (and golden scene digests) are stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EngineError, E_BAD_PAYLOAD, E_VALIDATION
from .graph import MultivariateGraph
from .similarity import SimilarityMatrix

STRATEGY_KINDS = ("input", "degree", "attribute", "cluster", "simclust")


@dataclass(frozen=True)
class OrderStrategy:
    kind: str = "input"
    attribute: str | None = None
    descending: bool = True

    @staticmethod
    def parse(text: str) -> "OrderStrategy":
        """Parse the CLI grammar: input|degree|attr:<name>|cluster:<name>|simclust."""
        if text == "input":
            return OrderStrategy("input")
        if text == "degree":
            return OrderStrategy("degree")
        if text == "simclust":
            return OrderStrategy("simclust")
        if text.startswith("attr:"):
            return OrderStrategy("attribute", attribute=text[5:])
        if text.startswith("cluster:"):
            return OrderStrategy("cluster", attribute=text[8:])
        raise EngineError(E_BAD_PAYLOAD, f"unknown ordering: {text!r}")


@dataclass
class Ordering:
    """Bijection between display positions and node ids."""

    ids: tuple[str, ...]
    strategy: OrderStrategy
    index: dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self.index:
            self.index = {nid: i for i, nid in enumerate(self.ids)}

    def id_at(self, pos: int) -> str:
        return self.ids[pos]

    def pos_of(self, node_id: str) -> int:
        return self.index[node_id]


def order_nodes(
    g: MultivariateGraph, strategy: OrderStrategy, sim: SimilarityMatrix | None = None
) -> Ordering:
    ids = [n.id for n in g.nodes]
    kind = strategy.kind
    if kind == "input":
        ordered = ids
    elif kind == "degree":
        ordered = sorted(ids, key=lambda nid: (-g.degree(nid), nid))
    elif kind == "attribute":
        d = g.node_def(_require_attr(strategy))
        sign = -1.0 if strategy.descending else 1.0

        def attr_key(nid: str):
            v = g.node(nid).values.get(d.name)
            return (v is None, sign * v if v is not None else 0.0, nid)

        ordered = sorted(ids, key=attr_key)
    elif kind == "cluster":
        d = g.node_def(_require_attr(strategy))

        def cluster_key(nid: str):
            v = g.node(nid).values.get(d.name)
            return (v is None, v if v is not None else 0.0, nid)

        ordered = sorted(ids, key=cluster_key)
    elif kind == "simclust":
        if sim is None:
            raise EngineError(E_VALIDATION, "similarity-clustering needs a similarity matrix")
        ordered = _cluster_leaf_order(ids, sim)
    else:
        raise EngineError(E_BAD_PAYLOAD, f"unknown ordering kind: {kind!r}")
    return Ordering(ids=tuple(ordered), strategy=strategy)


def _require_attr(strategy: OrderStrategy) -> str:
    if not strategy.attribute:
        raise EngineError(E_BAD_PAYLOAD, f"{strategy.kind} ordering needs an attribute name")
    return strategy.attribute


def _cluster_leaf_order(ids: list[str], sim: SimilarityMatrix) -> list[str]:
    """Average-linkage agglomerative clustering on dissimilarity 1 - sim.

    Undefined similarities count as maximal distance 1. The leaf order is the
    dendrogram read left to right, with the child subtree containing the
    smaller minimum node id placed first at every merge.
    """
    n = len(ids)
    if n <= 1:
        return list(ids)
    dist = 1.0 - np.where(np.isnan(sim.values), 0.0, sim.values)
    dist[np.isnan(sim.values)] = 1.0
    np.fill_diagonal(dist, np.inf)

    # Cluster slots: index < n are leaves; merged clusters reuse slot i.
    active = np.ones(n, dtype=bool)
    sizes = np.ones(n)
    leaves: list[list[str]] = [[nid] for nid in ids]
    min_id: list[str] = list(ids)

    work = dist.copy()
    for _ in range(n - 1):
        masked = np.where(active[:, None] & active[None, :], work, np.inf)
        i, j = np.unravel_index(int(np.argmin(masked)), masked.shape)
        if i > j:
            i, j = j, i
        first, second = (i, j) if min_id[i] <= min_id[j] else (j, i)
        merged = leaves[first] + leaves[second]
        # Average linkage: d(A+B, C) = (|A| d(A,C) + |B| d(B,C)) / (|A|+|B|)
        total = sizes[i] + sizes[j]
        new_row = (sizes[i] * work[i] + sizes[j] * work[j]) / total
        work[i, :] = new_row
        work[:, i] = new_row
        work[i, i] = np.inf
        active[j] = False
        sizes[i] = total
        leaves[i] = merged
        min_id[i] = min(min_id[i], min_id[j])

    root = int(np.argmax(active))
    return leaves[root]
