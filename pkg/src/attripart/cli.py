"""Command-line interface.

Exit codes: 0 success, 2 usage error, 3 data error, 4 algorithm error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional

from . import bench, dataio
from .forecast import local_forecasting
from .graphs import build_combined_graph
from .partition import AlgorithmError, attripart, pagerank_nibble
from .proximity import local_proximity

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_ALGORITHM = 4


def _add_dataset_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--edges", required=True, help="edge list file (u v per line)")
    p.add_argument("--attrs", help="attribute file (label<TAB>tok1,tok2,...)")


def _add_common_params(p: argparse.ArgumentParser, seed_node: bool = True) -> None:
    if seed_node:
        p.add_argument("--seed-node", required=True, help="seed node label")
    p.add_argument("--phi", type=float, default=0.2, help="target conductance")
    p.add_argument("--alpha-n", type=float, default=0.2, help="PageRank teleport")
    p.add_argument("--alpha-r", type=float, default=0.15, help="random-walk restart")
    p.add_argument("--ts", type=float, default=2.0, help="subgraph relevance threshold")
    p.add_argument("--te", type=float, default=0.7, help="edge prediction threshold")
    p.add_argument("--nw", type=int, default=10000, help="random-walk trials")
    p.add_argument("--ns", type=int, default=200, help="vertices to sweep")
    p.add_argument("--rng", type=int, default=42, help="rng seed")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="attripart",
        description="Local community search on attributed graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="attribute-aware local partition")
    _add_dataset_flags(p)
    _add_common_params(p)

    p = sub.add_parser("baseline", help="PageRank-Nibble baseline partition")
    _add_dataset_flags(p)
    _add_common_params(p)

    p = sub.add_parser("forecast", help="predicted local partition")
    _add_dataset_flags(p)
    _add_common_params(p)

    p = sub.add_parser("proximity", help="extract the seed-local subgraph")
    _add_dataset_flags(p)
    _add_common_params(p)

    p = sub.add_parser("bench", help="experiment harness")
    bench_sub = p.add_subparsers(dest="bench_command", required=True)

    bc = bench_sub.add_parser("compare", help="attripart vs pagerank-nibble")
    _add_dataset_flags(bc)
    _add_common_params(bc, seed_node=False)
    bc.add_argument("--runs", type=int, default=20, help="number of sampled seeds")
    bc.add_argument("--out-csv", help="per-run rows CSV path")
    bc.add_argument("--out-json", help="aggregate JSON path")

    bf = bench_sub.add_parser("forecast", help="forecasting vs plain rerun")
    _add_dataset_flags(bf)
    _add_common_params(bf, seed_node=False)
    bf.add_argument("--runs", type=int, default=20)
    bf.add_argument("--removal", type=float, default=0.15,
                    help="fraction of edges to remove")
    bf.add_argument("--out-csv", help="per-run deltas CSV path")
    bf.add_argument("--out-json", help="aggregate JSON path")

    p = sub.add_parser("synth", help="generate a synthetic attributed graph")
    p.add_argument("--blocks", type=int, default=10)
    p.add_argument("--block-size", type=int, default=20)
    p.add_argument("--p-in", type=float, default=0.3)
    p.add_argument("--p-out", type=float, default=0.01)
    p.add_argument("--tokens-per-block", type=int, default=8)
    p.add_argument("--noise", type=float, default=0.1)
    p.add_argument("--rng", type=int, default=42)
    p.add_argument("--out-prefix", default="synthetic",
                   help="writes <prefix>.edges.tsv and <prefix>.attrs.tsv")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--dataset", action="append", required=True,
                   metavar="NAME=EDGES[,ATTRS]",
                   help="dataset to load (repeatable)")
    return parser


def _load_bundle(args) -> dataio.DatasetBundle:
    return dataio.load_dataset(args.edges, args.attrs)


def _emit_result(result, bundle, args) -> None:
    doc = dataio.result_to_dict(result, bundle.labels)
    if args.format == "csv":
        if not args.out:
            raise GraphUsage("--format csv requires --out")
        dataio.save_partition(result, args.out, "csv", bundle.labels)
        return
    if args.format == "text":
        lines = [f"seed: {doc['seed']}",
                 f"members ({len(doc['members'])}): {' '.join(doc['members'])}",
                 f"parallel_conductance: {doc['parallel_conductance']:.6f}",
                 f"traditional_conductance: {doc['traditional_conductance']}",
                 f"met_target: {doc['met_target']}"]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


class GraphUsage(Exception):
    pass


def _cmd_partition(args) -> int:
    bundle = _load_bundle(args)
    B = build_combined_graph(bundle.graph, bundle.attributes)
    q = bundle.node_id(args.seed_node)
    result = attripart(B, q, phi_o=args.phi, alpha_n=args.alpha_n,
                       alpha_r=args.alpha_r, n_w=args.nw, t_s=args.ts,
                       n_s=args.ns, rng_seed=args.rng)
    _emit_result(result, bundle, args)
    return EXIT_OK


def _cmd_baseline(args) -> int:
    bundle = _load_bundle(args)
    B = build_combined_graph(bundle.graph, bundle.attributes)
    q = bundle.node_id(args.seed_node)
    result = pagerank_nibble(bundle.graph, q, phi_o=args.phi,
                             alpha_n=args.alpha_n, n_s=args.ns, combined=B)
    _emit_result(result, bundle, args)
    return EXIT_OK


def _cmd_forecast(args) -> int:
    bundle = _load_bundle(args)
    B = build_combined_graph(bundle.graph, bundle.attributes)
    q = bundle.node_id(args.seed_node)
    result = local_forecasting(B, bundle.attributes, q, phi_o=args.phi,
                               t_e=args.te, alpha_n=args.alpha_n,
                               alpha_r=args.alpha_r, n_w=args.nw, t_s=args.ts,
                               n_s=args.ns, rng_seed=args.rng)
    _emit_result(result, bundle, args)
    return EXIT_OK


def _cmd_proximity(args) -> int:
    bundle = _load_bundle(args)
    B = build_combined_graph(bundle.graph, bundle.attributes)
    q = bundle.node_id(args.seed_node)
    T = local_proximity(B, q, alpha_r=args.alpha_r, n_w=args.nw,
                        t_s=args.ts, rng_seed=args.rng)
    doc = {
        "seed": args.seed_node,
        "p": T.p,
        "m_p": T.graph.m,
        "nodes": [bundle.labels[int(v)] for v in T.node_map],
        "edges": [[bundle.labels[int(T.node_map[u])], bundle.labels[int(T.node_map[v])],
                   round(w, 6)] for u, v, w, _ in T.graph.edges()],
    }
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _bench_params(args) -> dict:
    return {"phi_o": args.phi, "alpha_n": args.alpha_n, "alpha_r": args.alpha_r,
            "n_w": args.nw, "t_s": args.ts, "n_s": args.ns}


def _cmd_bench_compare(args) -> int:
    bundle = _load_bundle(args)
    report = bench.compare_partitioners(bundle.graph, bundle.attributes,
                                        n_seeds=args.runs, params=_bench_params(args),
                                        rng_seed=args.rng, name=bundle.name)
    if args.out_csv:
        report.write_csv(args.out_csv)
    if args.out_json:
        report.write_json(args.out_json)
    sys.stdout.write(json.dumps(report.aggregates, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _cmd_bench_forecast(args) -> int:
    bundle = _load_bundle(args)
    seeds = bench.sample_seed_nodes(bundle.graph, args.runs, args.rng)
    params = _bench_params(args)
    deltas = []
    for i, q in enumerate(sorted(seeds)):
        d = bench.forecast_experiment(bundle.graph, bundle.attributes, q,
                                      params=params, rng_seed=args.rng + 1000 * i,
                                      removal_fraction=args.removal, t_e=args.te)
        deltas.append({"seed_node": q, "vertex_delta": d.vertex_delta,
                       "edge_delta": d.edge_delta})
    agg = {
        "mean_vertex_delta": sum(d["vertex_delta"] for d in deltas) / len(deltas),
        "mean_edge_delta": sum(d["edge_delta"] for d in deltas) / len(deltas),
        "runs": len(deltas),
    }
    if args.out_csv:
        import csv as _csv
        with open(args.out_csv, "w", newline="") as f:
            w = _csv.DictWriter(f, fieldnames=["seed_node", "vertex_delta", "edge_delta"])
            w.writeheader()
            w.writerows(deltas)
    if args.out_json:
        with open(args.out_json, "w") as f:
            json.dump(agg, f, indent=2, sort_keys=True)
            f.write("\n")
    sys.stdout.write(json.dumps(agg, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _cmd_synth(args) -> int:
    G, X = bench.synth_attributed_graph(
        args.blocks, args.block_size, p_in=args.p_in, p_out=args.p_out,
        tokens_per_block=args.tokens_per_block, noise=args.noise,
        rng_seed=args.rng)
    labels = dataio.default_labels(G.n)
    edges_path = f"{args.out_prefix}.edges.tsv"
    attrs_path = f"{args.out_prefix}.attrs.tsv"
    dataio.save_dataset(G, X, labels, edges_path, attrs_path)
    sys.stdout.write(json.dumps({
        "nodes": G.n, "edges": G.m,
        "edges_file": edges_path, "attrs_file": attrs_path,
    }, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .service import create_app, parse_dataset_specs
    import uvicorn
    sessions = parse_dataset_specs(args.dataset)
    app = create_app(sessions)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


_COMMANDS = {
    "partition": _cmd_partition,
    "baseline": _cmd_baseline,
    "forecast": _cmd_forecast,
    "proximity": _cmd_proximity,
    "synth": _cmd_synth,
    "serve": _cmd_serve,
}


def cli_dispatch(argv: Optional[list[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else EXIT_OK
    try:
        if args.command == "bench":
            handler = (_cmd_bench_compare if args.bench_command == "compare"
                       else _cmd_bench_forecast)
        else:
            handler = _COMMANDS[args.command]
        return handler(args)
    except GraphUsage as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (dataio.GraphDataError, OSError) as e:
        print(f"data error: {e}", file=sys.stderr)
        return EXIT_DATA
    except (AlgorithmError, ValueError) as e:
        stage = getattr(e, "stage", "algorithm")
        print(f"algorithm error [{stage}]: {e}", file=sys.stderr)
        return EXIT_ALGORITHM


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
