import json

import pytest

from attripart.cli import cli_dispatch
from attripart.bench import synth_attributed_graph
from attripart.dataio import default_labels, save_dataset

from conftest import make_clique_edges


@pytest.fixture
def clique_dataset(tmp_path):
    from attripart.graphs import AttributeStore, StructureGraph
    edges = make_clique_edges(0, 6) + make_clique_edges(6, 6) + make_clique_edges(12, 6)
    G = StructureGraph.from_edges(18, edges)
    X = AttributeStore.from_token_sets([[f"b{v // 6}"] for v in range(18)])
    e, a = tmp_path / "g.tsv", tmp_path / "a.tsv"
    save_dataset(G, X, default_labels(18), e, a)
    return str(e), str(a)


def test_partition_json_stdout(clique_dataset, capsys):
    e, a = clique_dataset
    code = cli_dispatch(["partition", "--edges", e, "--attrs", a,
                         "--seed-node", "n0", "--rng", "7"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert sorted(doc["members"]) == [f"n{i}" for i in range(6)]
    assert doc["params"]["rng_seed"] == 7


def test_baseline_and_forecast(clique_dataset, capsys):
    e, a = clique_dataset
    assert cli_dispatch(["baseline", "--edges", e, "--attrs", a,
                         "--seed-node", "n6"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert set(doc["members"]) == {f"n{i}" for i in range(6, 12)}
    assert cli_dispatch(["forecast", "--edges", e, "--attrs", a,
                         "--seed-node", "n6", "--te", "1.0"]) == 0
    doc2 = json.loads(capsys.readouterr().out)
    assert doc2["predicted"] is True


def test_proximity_output(clique_dataset, capsys):
    e, a = clique_dataset
    assert cli_dispatch(["proximity", "--edges", e, "--attrs", a,
                         "--seed-node", "n3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["p"] == 6
    assert set(doc["nodes"]) == {f"n{i}" for i in range(6)}
    for u, v, w in doc["edges"]:
        assert u in doc["nodes"] and v in doc["nodes"] and w > 0


def test_missing_seed_node_is_usage_error(clique_dataset, capsys):
    e, a = clique_dataset
    code = cli_dispatch(["partition", "--edges", e, "--attrs", a])
    capsys.readouterr()
    assert code == 2


def test_unknown_subcommand_is_usage_error(capsys):
    code = cli_dispatch(["frobnicate"])
    capsys.readouterr()
    assert code == 2


def test_missing_file_is_data_error(tmp_path, capsys):
    code = cli_dispatch(["partition", "--edges", str(tmp_path / "nope.tsv"),
                         "--seed-node", "a"])
    err = capsys.readouterr().err
    assert code == 3
    assert "data error" in err


def test_unknown_label_is_data_error(clique_dataset, capsys):
    e, a = clique_dataset
    code = cli_dispatch(["partition", "--edges", e, "--attrs", a,
                         "--seed-node", "ghost"])
    assert code == 3
    capsys.readouterr()


def test_bad_parameter_is_algorithm_error(clique_dataset, capsys):
    e, a = clique_dataset
    code = cli_dispatch(["partition", "--edges", e, "--attrs", a,
                         "--seed-node", "n0", "--ts", "-1"])
    err = capsys.readouterr().err
    assert code == 4
    assert "algorithm error" in err


def test_partition_to_file(clique_dataset, tmp_path):
    e, a = clique_dataset
    out = tmp_path / "result.json"
    assert cli_dispatch(["partition", "--edges", e, "--attrs", a,
                         "--seed-node", "n0", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["met_target"] is True


def test_synth_writes_two_files(tmp_path, capsys):
    prefix = str(tmp_path / "syn")
    code = cli_dispatch(["synth", "--blocks", "3", "--block-size", "8",
                         "--rng", "7", "--out-prefix", prefix])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["nodes"] == 24
    assert (tmp_path / "syn.edges.tsv").exists()
    assert (tmp_path / "syn.attrs.tsv").exists()
    assert doc["edges"] > 0


def test_bench_compare_outputs(tmp_path, capsys):
    G, X = synth_attributed_graph(4, 10, 0.5, 0.02, rng_seed=5)
    e, a = tmp_path / "g.tsv", tmp_path / "a.tsv"
    save_dataset(G, X, default_labels(G.n), e, a)
    out_csv, out_json = tmp_path / "rows.csv", tmp_path / "agg.json"
    code = cli_dispatch(["bench", "compare", "--edges", str(e), "--attrs", str(a),
                         "--runs", "2", "--rng", "3",
                         "--out-csv", str(out_csv), "--out-json", str(out_json)])
    assert code == 0
    capsys.readouterr()
    assert out_csv.exists() and out_json.exists()
    agg = json.loads(out_json.read_text())
    assert agg["runs"] == 4  # two seeds, two algorithms


def test_bench_forecast_outputs(tmp_path, capsys):
    G, X = synth_attributed_graph(4, 10, 0.5, 0.02, rng_seed=5)
    e, a = tmp_path / "g.tsv", tmp_path / "a.tsv"
    save_dataset(G, X, default_labels(G.n), e, a)
    code = cli_dispatch(["bench", "forecast", "--edges", str(e), "--attrs", str(a),
                         "--runs", "2", "--rng", "3", "--te", "1.0"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["mean_vertex_delta"] == 0.0  # degenerate threshold
