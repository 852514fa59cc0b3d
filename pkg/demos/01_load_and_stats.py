"""Load the bundled player dataset and look at its basic shape.

The matrix view of an n-node graph has n^2 cells: the lower-left half shows
edges, the upper-right half node similarity, and the diagonal the nodes
themselves.
"""

import os

from matrixlens import graph_stats, parse_dataset

DATA = os.path.join(os.path.dirname(__file__), "..", "data", "walkthrough.json")

with open(DATA, "rb") as f:
    g = parse_dataset(f.read(), "json")

stats = graph_stats(g)
print(f"nodes: {stats['nodeCount']}, edges: {stats['edgeCount']}")
print("matrix cells:", stats["cellCounts"])

print("\nnode attributes (observed ranges):")
for d in g.node_schema:
    print(f"  {d.name:16s} [{d.observed_min:g} .. {d.observed_max:g}]")

missing = sum(len(g.node_schema) - len(n.values) for n in g.nodes)
print(f"\nmissing attribute values across all nodes: {missing}")

p10 = g.node("p010")
print(f"\nstandout player {p10.label}: {p10.values}")
