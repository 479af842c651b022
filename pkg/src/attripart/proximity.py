"""Seed-local subgraph extraction via random walk with restart.

``n_w`` independent walk trials are simulated from the seed; each trial
ends with probability ``alpha_r`` before every step and otherwise moves
to a neighbour chosen proportionally to edge weight.  A node's relevance
is the number of trials that touched it at least once.  Nodes whose
count exceeds ``mean + stddev / t_s`` (statistics taken over *all* nodes,
zeros included) form the extracted subgraph.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graphs import CombinedGraph, induced_subgraph


@dataclass
class WalkCounts:
    """Distinct-visit counts from repeated random walk trials.

    counts[v] is the number of trials in which v appeared (revisits within
    one trial do not count).  mean/stddev are population statistics over
    every node of the graph, including never-visited ones.
    """

    counts: np.ndarray
    n_w: int
    mean: float
    stddev: float


@dataclass
class Subgraph:
    """A small induced piece of a combined graph.

    node_map[i] is the original id of local node i; seed_local is the
    local index of the query node when the subgraph was grown around one.
    """

    graph: CombinedGraph
    node_map: np.ndarray
    seed_local: Optional[int] = None

    @property
    def p(self) -> int:
        return self.graph.n

    def local_index(self, orig: int) -> int:
        i = int(np.searchsorted(self.node_map, orig))
        if i >= len(self.node_map) or self.node_map[i] != orig:
            raise ValueError(f"node {orig} is not in the subgraph")
        return i

    @classmethod
    def identity(cls, B: CombinedGraph, seed: Optional[int] = None) -> "Subgraph":
        """Wrap a full graph as its own (un-restricted) subgraph."""
        return cls(B, np.arange(B.n, dtype=np.int64), seed)


def random_walk_counts(B: CombinedGraph, q: int, alpha_r: float,
                       n_w: int, rng_seed: int) -> WalkCounts:
    """Run n_w walk trials from q and tally distinct visits per node.

    Deterministic for a fixed rng_seed.  The seed node is visited in every
    trial by definition, so counts[q] == n_w.
    """
    if not 0.0 < alpha_r < 1.0:
        raise ValueError(f"alpha_r must be in (0,1), got {alpha_r}")
    if n_w <= 0:
        raise ValueError(f"n_w must be positive, got {n_w}")
    if B.degree(q) == 0:
        raise ValueError("seed has no edges")

    rng = random.Random(rng_seed)
    rand = rng.random
    counts = np.zeros(B.n, dtype=np.int64)

    # cumulative-weight tables, built lazily for visited nodes only
    tables: dict[int, tuple[list, list, float]] = {}

    def table(v: int):
        t = tables.get(v)
        if t is None:
            nbrs, w = B.neighbors(v)
            cum = np.cumsum(w)
            t = (nbrs.tolist(), cum.tolist(), float(cum[-1]) if len(cum) else 0.0)
            tables[v] = t
        return t

    for _ in range(n_w):
        cur = q
        visited = {q}
        while rand() >= alpha_r:
            nbrs, cum, tot = table(cur)
            if tot <= 0.0:
                break  # dangling node: nowhere to go
            cur = nbrs[bisect_right(cum, rand() * tot)]
            visited.add(cur)
        for v in visited:
            counts[v] += 1

    return WalkCounts(counts=counts, n_w=n_w,
                      mean=float(counts.mean()), stddev=float(counts.std()))


def relevance_threshold(W: WalkCounts, t_s: float) -> float:
    """Walk-count cutoff mean + stddev / t_s; larger t_s admits more nodes."""
    if t_s <= 0:
        raise ValueError(f"t_s must be positive, got {t_s}")
    return W.mean + W.stddev / t_s


def local_proximity(B: CombinedGraph, q: int, alpha_r: float = 0.15,
                    n_w: int = 10000, t_s: float = 2.0,
                    rng_seed: int = 42) -> Subgraph:
    """Extract the subgraph of nodes relevant to seed q.

    Keeps every node whose walk count strictly exceeds the relevance
    threshold; the seed itself is always kept.
    """
    W = random_walk_counts(B, q, alpha_r, n_w, rng_seed)
    thr = relevance_threshold(W, t_s)
    selected = np.flatnonzero(W.counts > thr)
    if q not in selected:
        selected = np.append(selected, q)
    graph, node_map = induced_subgraph(B, selected)
    seed_local = int(np.searchsorted(node_map, q))
    return Subgraph(graph=graph, node_map=node_map, seed_local=seed_local)
