import json

import numpy as np
import pytest

from attripart.bench import (aggregate_rows, compare_partitioners, density,
                             forecast_experiment, remove_edges, sample_seed_nodes,
                             synth_attributed_graph, triangle_count)
from attripart.graphs import AttributeStore, StructureGraph, build_combined_graph, jaccard

from conftest import make_clique_edges


def test_density_values():
    tri = StructureGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert density(tri, [0, 1, 2]) == 1.0
    path = StructureGraph.from_edges(3, [(0, 1), (1, 2)])
    assert density(path, [0, 1, 2]) == pytest.approx(2 * 2 / 6)
    sparse = StructureGraph.from_edges(4, [(0, 1)])
    assert density(sparse, [2, 3]) == 0.0
    with pytest.raises(ValueError):
        density(tri, [0])


def test_triangle_count_values():
    k4 = StructureGraph.from_edges(4, make_clique_edges(0, 4))
    assert triangle_count(k4) == 12  # 4 triangles, counted per corner
    tree = StructureGraph.from_edges(5, [(0, 1), (0, 2), (1, 3), (1, 4)])
    assert triangle_count(tree) == 0
    k3 = StructureGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert triangle_count(k3) == 3
    # induced restriction: removing one K4 vertex leaves a single triangle
    assert triangle_count(k4, [0, 1, 2]) == 3


def test_remove_edges_counts():
    G = StructureGraph.from_edges(100, [(i, (i + 1) % 100) for i in range(100)])
    assert G.m == 100
    same = remove_edges(G, 0.0, rng_seed=1)
    assert same.m == 100
    removed = remove_edges(G, 0.15, rng_seed=1)
    assert removed.m == 85
    assert removed.n == G.n
    a = remove_edges(G, 0.15, rng_seed=1)
    b = remove_edges(G, 0.15, rng_seed=2)
    assert a.m == b.m == 85
    assert set(a.edges()) != set(b.edges())
    again = remove_edges(G, 0.15, rng_seed=1)
    assert set(a.edges()) == set(again.edges())


def test_remove_edges_subset_of_original():
    G = StructureGraph.from_edges(12, make_clique_edges(0, 12))
    removed = remove_edges(G, 0.3, rng_seed=7)
    assert set(removed.edges()) <= set(G.edges())


def test_synth_deterministic():
    a = synth_attributed_graph(4, 10, 0.4, 0.02, rng_seed=5)
    b = synth_attributed_graph(4, 10, 0.4, 0.02, rng_seed=5)
    assert np.array_equal(a[0].indices, b[0].indices)
    assert a[1].tokens == b[1].tokens


def test_synth_isolated_blocks_when_p_out_zero():
    G, _ = synth_attributed_graph(5, 12, 0.6, 0.0, rng_seed=3)
    # cross-block edges are impossible
    for u, v in G.edges():
        assert u // 12 == v // 12


def test_synth_attribute_correlation():
    G, X = synth_attributed_graph(6, 15, 0.3, 0.01, tokens_per_block=6,
                                  noise=0.0, rng_seed=4)
    rng = np.random.default_rng(0)
    intra, inter = [], []
    for _ in range(300):
        u, v = rng.integers(0, G.n, size=2)
        if u == v:
            continue
        j = jaccard(X.tokens[int(u)], X.tokens[int(v)])
        (intra if u // 15 == v // 15 else inter).append(j)
    assert np.mean(intra) > np.mean(inter)


def test_sample_seed_nodes_skips_isolated():
    G = StructureGraph.from_edges(6, [(0, 1), (2, 3)])
    seeds = sample_seed_nodes(G, 10, rng_seed=1)
    assert set(seeds) <= {0, 1, 2, 3}
    with pytest.raises(ValueError):
        sample_seed_nodes(StructureGraph.from_edges(3, []), 2, rng_seed=1)


def test_forecast_experiment_degenerate_threshold():
    G, X = synth_attributed_graph(4, 12, 0.5, 0.01, rng_seed=6)
    q = sample_seed_nodes(G, 1, rng_seed=2)[0]
    d = forecast_experiment(G, X, q, rng_seed=9, t_e=1.0)
    assert d.vertex_delta == 0 and d.edge_delta == 0


def test_compare_partitioners_on_disjoint_cliques(tmp_path):
    edges = make_clique_edges(0, 6) + make_clique_edges(6, 6)
    G = StructureGraph.from_edges(12, edges)
    X = AttributeStore.from_token_sets([[f"b{v // 6}"] for v in range(12)])
    report = compare_partitioners(G, X, n_seeds=1, rng_seed=8, name="cliques")
    assert len(report.rows) == 2
    for row in report.rows:
        assert row["density"] == 1.0
    csv_path = tmp_path / "rows.csv"
    json_path = tmp_path / "agg.json"
    report.write_csv(csv_path)
    report.write_json(json_path)
    assert csv_path.read_text().splitlines()[0].startswith("dataset,seed_node,algorithm")
    agg = json.loads(json_path.read_text())
    assert set(agg["aggregates"]) == {"attripart", "pagerank_nibble"}


def test_compare_partitioners_reproducible():
    G, X = synth_attributed_graph(5, 12, 0.4, 0.01, rng_seed=3)
    r1 = compare_partitioners(G, X, n_seeds=3, rng_seed=11)
    r2 = compare_partitioners(G, X, n_seeds=3, rng_seed=11)
    strip = lambda rows: [{k: v for k, v in row.items() if k != "wall_time_ms"}
                          for row in rows]
    assert strip(r1.rows) == strip(r2.rows)


def test_aggregates_recomputable_from_rows():
    rows = [
        {"algorithm": "x", "partition_size": 4, "density": 0.5, "triangle_count": 3,
         "parallel_conductance": 0.1, "traditional_conductance": 0.2, "wall_time_ms": 1.0},
        {"algorithm": "x", "partition_size": 6, "density": 0.7, "triangle_count": 9,
         "parallel_conductance": 0.3, "traditional_conductance": 0.4, "wall_time_ms": 3.0},
    ]
    agg = aggregate_rows(rows)
    assert agg["x"]["density"]["mean"] == pytest.approx(0.6)
    assert agg["x"]["partition_size"]["stddev"] == pytest.approx(1.0)


def test_report_metrics_recomputable():
    G, X = synth_attributed_graph(5, 12, 0.4, 0.01, rng_seed=3)
    B = build_combined_graph(G, X)
    from attripart.partition import attripart, parallel_conductance
    report = compare_partitioners(G, X, n_seeds=2, rng_seed=11, B=B)
    for row in report.rows:
        if row["algorithm"] != "attripart":
            continue
        res = attripart(B, row["seed_node"],
                        rng_seed=11 + 1000 * sorted({r["seed_node"] for r in report.rows}).index(row["seed_node"]))
        assert row["partition_size"] == len(res.members)
        assert row["density"] == pytest.approx(density(G, res.members))
        assert row["triangle_count"] == triangle_count(G, res.members)
        assert row["parallel_conductance"] == pytest.approx(
            parallel_conductance(B, res.members))
