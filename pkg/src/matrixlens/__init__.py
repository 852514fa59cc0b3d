"""matrixlens: a headless engine for exploring and editing multivariate
graphs in a combined adjacency/similarity matrix with zoomable, responsive
focus cells.

The public surface mirrors the engine's building blocks:

- :mod:`matrixlens.graph` — data model, ingestion, normalization
- :mod:`matrixlens.similarity` — pairwise node similarity with missing data
- :mod:`matrixlens.ordering` — row/column ordering strategies
- :mod:`matrixlens.layout` — bifocal focus+context solver, level of detail
- :mod:`matrixlens.cells` — focus cell lifecycle (regions, unit/meta, vis)
- :mod:`matrixlens.scene` / :mod:`matrixlens.charts` — scene generation
- :mod:`matrixlens.editing` — value editing with preview/commit and history
- :mod:`matrixlens.session` — command protocol binding it all together
"""

from .errors import EngineError
from .graph import (
    AttributeDef,
    Edge,
    MultivariateGraph,
    Node,
    graph_stats,
    normalize_value,
    parse_dataset,
    serialize_dataset,
)
from .layout import Lod, Rect, Viewport, lod_for_size, solve_axis, solve_layout
from .marks import Scene, scene_digest
from .ordering import OrderStrategy, Ordering, order_nodes
from .replay import replay_script
from .session import Session
from .similarity import SimilarityConfig, SimilarityMatrix, build_similarity_matrix, similarity
from .svg import export_svg, svg_bytes

__version__ = "0.1.0"

__all__ = [
    "AttributeDef",
    "Edge",
    "EngineError",
    "Lod",
    "MultivariateGraph",
    "Node",
    "OrderStrategy",
    "Ordering",
    "Rect",
    "Scene",
    "Session",
    "SimilarityConfig",
    "SimilarityMatrix",
    "Viewport",
    "build_similarity_matrix",
    "export_svg",
    "graph_stats",
    "lod_for_size",
    "normalize_value",
    "order_nodes",
    "parse_dataset",
    "replay_script",
    "scene_digest",
    "serialize_dataset",
    "similarity",
    "solve_axis",
    "solve_layout",
    "svg_bytes",
    "__version__",
]
