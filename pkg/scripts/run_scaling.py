#!/usr/bin/env python3
"""Scaling probe: wall time and extracted-subgraph size as the graph grows.

Generates synthetic graphs at several scales with constant average degree
and reports, per scale, the mean subgraph size p and the partitioning
wall times for the restricted and full-graph pipelines.
"""

import argparse
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import numpy as np

from attripart.bench import synth_attributed_graph
from attripart.graphs import build_combined_graph
from attripart.partition import attripart, pagerank_nibble
from attripart.proximity import local_proximity


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scales", type=int, nargs="+", default=[10000, 30000, 100000])
    ap.add_argument("--block-size", type=int, default=20)
    ap.add_argument("--p-in", type=float, default=0.5)
    ap.add_argument("--cross-degree", type=float, default=1.0)
    ap.add_argument("--alpha-r", type=float, default=0.2)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--rng", type=int, default=7)
    args = ap.parse_args()

    for n in args.scales:
        blocks = n // args.block_size
        G, X = synth_attributed_graph(blocks, args.block_size, args.p_in,
                                      args.cross_degree / (n - args.block_size),
                                      tokens_per_block=2, noise=0.02,
                                      rng_seed=args.rng)
        B = build_combined_graph(G, X)
        rng = np.random.default_rng(5)
        seeds = [int(v) for v in rng.choice(np.flatnonzero(G.degrees > 0),
                                            args.seeds, replace=False)]
        ps, t_ours, t_base = [], [], []
        for i, q in enumerate(seeds):
            T = local_proximity(B, q, alpha_r=args.alpha_r, rng_seed=300 + i)
            ps.append(T.p)
            t0 = time.perf_counter()
            attripart(B, q, alpha_r=args.alpha_r, rng_seed=300 + i)
            t_ours.append(time.perf_counter() - t0)
            t0 = time.perf_counter()
            pagerank_nibble(G, q)
            t_base.append(time.perf_counter() - t0)
        print(json.dumps({
            "n": G.n, "m": G.m,
            "mean_subgraph_size": float(np.mean(ps)),
            "mean_restricted_ms": 1000 * float(np.mean(t_ours)),
            "mean_full_graph_ms": 1000 * float(np.mean(t_base)),
        }))


if __name__ == "__main__":
    main()
