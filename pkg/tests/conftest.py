"""Shared fixtures and independent oracles.

The oracle implementations here are deliberately naive (dense matrices,
double loops) so they stay independent of the library's optimised paths.
"""

from __future__ import annotations

import numpy as np
import pytest

from attripart.graphs import (AttributeStore, CombinedGraph, StructureGraph,
                              build_combined_graph)


@pytest.fixture
def weighted_cut_fixture():
    """Six-node weighted graph with hand-set per-vertex weight sums.

    The community S = {0,1,2,3}:
      node 0: internal 2.1, external 1.05
      node 1: internal only
      node 2: internal 2.2, external 1.05
      node 3: internal only
    total volume of S is exactly 12.
    """
    edges = [
        (0, 1, 1.05, True), (0, 3, 1.05, True), (0, 4, 1.05, True),
        (2, 1, 1.10, True), (2, 3, 1.10, True), (2, 5, 1.05, True),
        (1, 3, 0.65, False),
        (4, 5, 1.00, True),
    ]
    return CombinedGraph.from_edge_list(6, edges), [0, 1, 2, 3]


def make_clique_edges(base: int, size: int) -> list[tuple[int, int]]:
    return [(base + i, base + j) for i in range(size) for j in range(i + 1, size)]


@pytest.fixture
def three_k6():
    """Three disjoint K6 components with block-distinct tokens."""
    edges = []
    for b in range(3):
        edges += make_clique_edges(6 * b, 6)
    G = StructureGraph.from_edges(18, edges)
    X = AttributeStore.from_token_sets([[f"t{v // 6}"] for v in range(18)])
    return G, X, build_combined_graph(G, X)


def naive_parallel_conductance(B: CombinedGraph, S) -> float:
    """Double-loop re-derivation of the attribute-aware conductance."""
    members = set(int(v) for v in S)
    cut = 0.0
    vol = 0.0
    for i in members:
        ext = sum(B.edge_weight(i, j) for j in range(B.n) if j not in members)
        internal = sum(B.edge_weight(i, j) for j in members if j != i)
        if ext > 0.0:
            cut += ext / (internal if internal > 0.0 else 1.0)
        vol += sum(B.edge_weight(i, j) for j in range(B.n) if j != i)
    return cut / vol


def dense_lazy_ppr(B: CombinedGraph, seed: int, alpha: float) -> np.ndarray:
    """Fixed point of the lazy personalized PageRank, solved densely.

    pi = alpha * s + (1 - alpha) * pi W  with  W = (I + D^-1 A) / 2;
    zero-degree rows of W act as the identity.
    """
    n = B.n
    A = np.zeros((n, n))
    for u, v, w, _ in B.edges():
        A[u, v] = A[v, u] = w
    d = A.sum(axis=1)
    W = np.eye(n) * 0.5
    for i in range(n):
        if d[i] > 0:
            W[i] += 0.5 * A[i] / d[i]
        else:
            W[i, i] = 1.0
    s = np.zeros(n)
    s[seed] = 1.0
    # pi (I - (1-alpha) W) = alpha s, solved for pi (a row vector)
    M = np.eye(n) - (1.0 - alpha) * W
    return alpha * np.linalg.solve(M.T, s)


def random_combined_graph(rng: np.random.Generator, n: int,
                          p: float = 0.15) -> CombinedGraph:
    """Random weighted graph; ensures no totally empty edge set."""
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v, float(1.0 + rng.random()), True))
    if not edges:
        edges = [(0, 1, 1.5, True)]
    return CombinedGraph.from_edge_list(n, edges)
