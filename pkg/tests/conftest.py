import json
import os

import pytest

from matrixlens.graph import parse_dataset

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "data")
GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")


def dataset_bytes(nodes, edges) -> bytes:
    return json.dumps({"nodes": nodes, "edges": edges}).encode("utf-8")


def small_graph():
    """Five nodes, two attributes spanning [0, 10], a few edges."""
    nodes = [
        {"id": "a", "label": "A", "attrs": {"x": 0.0, "y": 10.0}},
        {"id": "b", "label": "B", "attrs": {"x": 10.0, "y": 0.0}},
        {"id": "c", "label": "C", "attrs": {"x": 5.0, "y": 5.0}},
        {"id": "d", "label": "D", "attrs": {"x": 2.0}},
        {"id": "e", "label": "E", "attrs": {"y": 8.0}},
    ]
    edges = [
        {"source": "a", "target": "b", "weight": 2.0},
        {"source": "b", "target": "c", "weight": 1.0},
        {"source": "a", "target": "c", "weight": 3.0},
    ]
    return parse_dataset(dataset_bytes(nodes, edges), "json")


@pytest.fixture
def graph5():
    return small_graph()


@pytest.fixture(scope="session")
def walkthrough_paths():
    dataset = os.path.join(DATA_DIR, "walkthrough.json")
    script = os.path.join(DATA_DIR, "walkthrough_script.ndjson")
    assert os.path.exists(dataset) and os.path.exists(script)
    return dataset, script


@pytest.fixture(scope="session")
def walkthrough_graph(walkthrough_paths):
    with open(walkthrough_paths[0], "rb") as f:
        return parse_dataset(f.read(), "json")
