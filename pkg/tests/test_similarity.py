import json
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from matrixlens.errors import EngineError
from matrixlens.graph import parse_dataset
from matrixlens.similarity import (
    SimilarityConfig,
    build_similarity_matrix,
    similarity,
    update_similarity_row,
)

from conftest import dataset_bytes


def two_attr_graph(values):
    """Nodes with attributes u, v; two anchors pin the observed range to [0, 1]."""
    nodes = [{"id": "lo", "label": "lo", "attrs": {"u": 0.0, "v": 0.0}},
             {"id": "hi", "label": "hi", "attrs": {"u": 1.0, "v": 1.0}}]
    for i, (u, v) in enumerate(values):
        attrs = {}
        if u is not None:
            attrs["u"] = u
        if v is not None:
            attrs["v"] = v
        nodes.append({"id": f"n{i}", "label": f"n{i}", "attrs": attrs})
    return parse_dataset(dataset_bytes(nodes, []), "json")


CFG = SimilarityConfig(("u", "v"))


def test_identical_nodes_similarity_one():
    g = two_attr_graph([(0.3, 0.6)])
    n = g.node("n0")
    assert similarity(n, n, CFG, g) == 1.0


def test_extreme_opposition_is_zero():
    g = two_attr_graph([(0.0, 0.0), (1.0, 1.0)])
    assert similarity(g.node("n0"), g.node("n1"), CFG, g) == 0.0


def test_handcomputed_pair():
    # oracle: 1 - (|0.2-0.4| + |0.8-0.4|) / 2 = 0.7, evaluated by hand
    g = two_attr_graph([(0.2, 0.8), (0.4, 0.4)])
    assert similarity(g.node("n0"), g.node("n1"), CFG, g) == pytest.approx(0.7, abs=1e-12)


def test_no_shared_attributes_is_undefined():
    g = two_attr_graph([(0.5, None), (None, 0.5)])
    assert similarity(g.node("n0"), g.node("n1"), CFG, g) is None


def test_three_identical_nodes_matrix_all_ones():
    g = two_attr_graph([(0.4, 0.4), (0.4, 0.4), (0.4, 0.4)])
    m = build_similarity_matrix(g, CFG)
    sub = m.values[np.ix_([2, 3, 4], [2, 3, 4])]
    assert np.all(sub == 1.0)


def test_isolated_node_row_undefined_except_diagonal():
    nodes = [
        {"id": "a", "attrs": {"u": 0.1}},
        {"id": "b", "attrs": {"u": 0.9}},
        {"id": "c", "attrs": {"v": 1.0}},  # no overlap with a or b
    ]
    g = parse_dataset(dataset_bytes(nodes, []), "json")
    m = build_similarity_matrix(g, CFG)
    i = m.index["c"]
    assert m.values[i, i] == 1.0
    for j in range(3):
        if j != i:
            assert np.isnan(m.values[i, j]) and np.isnan(m.values[j, i])


def random_graph(rng, n=20, d=5, missing=0.2):
    names = [f"a{k}" for k in range(d)]
    nodes = []
    for i in range(n):
        # node 0 keeps every attribute so each one exists in the schema
        attrs = {
            name: round(rng.uniform(-5, 20), 4)
            for name in names
            if i == 0 or rng.random() >= missing
        }
        nodes.append({"id": f"n{i:02d}", "label": f"n{i}", "attrs": attrs})
    return parse_dataset(dataset_bytes(nodes, [])), names


def test_matrix_equals_bruteforce_pair_loop():
    rng = random.Random(11)
    g, names = random_graph(rng)
    cfg = SimilarityConfig(tuple(names))
    m = build_similarity_matrix(g, cfg)
    # oracle: direct double loop over the scalar pair operation
    for i, u in enumerate(g.nodes):
        for j, v in enumerate(g.nodes):
            expected = 1.0 if i == j else similarity(u, v, cfg, g)
            got = m.values[i, j]
            if expected is None:
                assert np.isnan(got)
            else:
                assert got == expected  # exact


def test_incremental_update_equals_rebuild():
    rng = random.Random(7)
    g, names = random_graph(rng, n=15, d=4)
    cfg = SimilarityConfig(tuple(names))
    m = build_similarity_matrix(g, cfg)
    for _ in range(25):
        node = rng.choice(g.nodes)
        attr = rng.choice(names)
        d = g.node_def(attr)
        node.values[attr] = round(rng.uniform(d.observed_min, d.observed_max), 4)
        m = update_similarity_row(m, g, cfg, node.id)
        full = build_similarity_matrix(g, cfg)
        assert np.array_equal(m.values, full.values, equal_nan=True)


def test_update_with_unchanged_value_is_identity():
    rng = random.Random(3)
    g, names = random_graph(rng, n=10, d=3)
    cfg = SimilarityConfig(tuple(names))
    m = build_similarity_matrix(g, cfg)
    m2 = update_similarity_row(m, g, cfg, g.nodes[4].id)
    assert np.array_equal(m.values, m2.values, equal_nan=True)


def test_edit_to_identical_values_gives_one():
    g = two_attr_graph([(0.2, 0.9), (0.7, 0.1)])
    cfg = CFG
    m = build_similarity_matrix(g, cfg)
    n0, n1 = g.node("n0"), g.node("n1")
    n1.values.update(n0.values)
    m = update_similarity_row(m, g, cfg, "n1")
    assert m.values[m.index["n0"], m.index["n1"]] == 1.0


def test_update_unknown_node_rejected():
    g = two_attr_graph([(0.1, 0.1)])
    m = build_similarity_matrix(g, CFG)
    with pytest.raises(EngineError):
        update_similarity_row(m, g, CFG, "nope")


def test_attribute_order_invariance():
    rng = random.Random(23)
    g, names = random_graph(rng, n=12, d=6)
    m1 = build_similarity_matrix(g, SimilarityConfig(tuple(names)))
    m2 = build_similarity_matrix(g, SimilarityConfig(tuple(reversed(names))))
    shuffled = names[:]
    rng.shuffle(shuffled)
    m3 = build_similarity_matrix(g, SimilarityConfig(tuple(shuffled)))
    assert np.array_equal(m1.values, m2.values, equal_nan=True)
    assert np.array_equal(m1.values, m3.values, equal_nan=True)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 24), d=st.integers(1, 6))
def test_symmetry_diagonal_range_properties(seed, n, d):
    rng = random.Random(seed)
    g, names = random_graph(rng, n=n, d=d, missing=0.25)
    m = build_similarity_matrix(g, SimilarityConfig(tuple(names)))
    assert np.array_equal(m.values, m.values.T, equal_nan=True)
    assert np.all(np.diag(m.values) == 1.0)
    defined = m.values[~np.isnan(m.values)]
    assert np.all((defined >= 0.0) & (defined <= 1.0))


def test_config_validation():
    g = two_attr_graph([])
    with pytest.raises(EngineError):
        SimilarityConfig(()).validate(g)
    with pytest.raises(EngineError):
        SimilarityConfig(("nope",)).validate(g)
