"""Truncated lazy-walk personalized PageRank and its Nibble-style parameters.

The rank vector is kept sparse at all times: after every iteration the
entries whose degree-normalised score falls at or below the truncation
threshold ``epsilon`` are dropped, and the truncated vector feeds the
next iteration.  All iteration is deterministic (ascending node order).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .proximity import Subgraph

# Nibble's analysis constant; it only enters t_last logarithmically.
DEFAULT_C1 = 200.0


@dataclass
class NibbleParams:
    """Derived iteration/truncation parameters for a graph with m edges.

    l       = ceil(log2(m))
    b       = (1 + log2(m)) / 2
    t_last  = (l+1) * ceil((2 / phi^2) * ln(c1 * (l+2) * sqrt(m)))
    epsilon = 1 / (1800 * (l+2) * t_last * 2^b)
    """

    b: float
    l: int
    t_last: int
    epsilon: float
    c1: float = DEFAULT_C1


@dataclass
class RankVector:
    """Sparse rank scores over a subgraph's local node ids."""

    scores: dict[int, float]
    iterations: int
    seed: int

    def support(self) -> list[int]:
        return [i for i, s in self.scores.items() if s > 0.0]


def nibble_params(m: int, phi_o: float, c1: float = DEFAULT_C1) -> NibbleParams:
    """Compute truncation threshold and iteration budget for m edges."""
    if m < 1:
        raise ValueError(f"edge count must be >= 1, got {m}")
    if not 0.0 < phi_o < 1.0:
        raise ValueError(f"target conductance must be in (0,1), got {phi_o}")
    log2m = math.log2(m)
    l = math.ceil(log2m)
    b = (1.0 + log2m) / 2.0
    t_last = (l + 1) * math.ceil((2.0 / phi_o ** 2) * math.log(c1 * (l + 2) * math.sqrt(m)))
    epsilon = 1.0 / (1800.0 * (l + 2) * t_last * 2.0 ** b)
    return NibbleParams(b=b, l=l, t_last=t_last, epsilon=epsilon, c1=c1)


def _lazy_step(indptr, indices, weights, wdeg, x: dict[int, float]) -> dict[int, float]:
    """One application of the lazy transition W = (I + D^-1 B) / 2 to x.

    ``weights`` may be None for unit edge weights.  A zero-degree node has
    nowhere to move, so its row acts as the identity.
    """
    out: dict[int, float] = {}
    for i, xi in x.items():
        d = wdeg[i]
        if d <= 0.0:
            out[i] = out.get(i, 0.0) + xi
            continue
        half = 0.5 * xi
        out[i] = out.get(i, 0.0) + half
        lo, hi = indptr[i], indptr[i + 1]
        if weights is None:
            share = half / d
            for p in range(lo, hi):
                j = int(indices[p])
                out[j] = out.get(j, 0.0) + share
        else:
            scale = half / d
            for p in range(lo, hi):
                j = int(indices[p])
                out[j] = out.get(j, 0.0) + scale * weights[p]
    return out


def lazy_transition_apply(T: Subgraph, x: RankVector) -> RankVector:
    """Return x . W on the subgraph, as a new rank vector."""
    g = T.graph
    scores = _lazy_step(g.indptr, g.indices, g.weights, g.weighted_degrees, x.scores)
    return RankVector(scores=scores, iterations=x.iterations, seed=x.seed)


def _truncated_ppr(indptr, indices, weights, wdeg, seed: int, alpha: float,
                   epsilon: float, t_last: int, epsilon_t: float) -> tuple[dict[int, float], int]:
    """Shared kernel: iterate q_t = (1-a) q_{t-1} W + a s with truncation.

    Stops after t_last iterations or as soon as the L1 change between
    consecutive truncated iterates drops below epsilon_t.
    """
    x: dict[int, float] = {seed: 1.0}
    iterations = 0
    for t in range(1, t_last + 1):
        y = _lazy_step(indptr, indices, weights, wdeg, x)
        nxt = {i: (1.0 - alpha) * s for i, s in y.items()}
        nxt[seed] = nxt.get(seed, 0.0) + alpha
        if epsilon > 0.0:
            nxt = {i: s for i, s in nxt.items() if s > epsilon * wdeg[i]}
        else:
            nxt = {i: s for i, s in nxt.items() if s > 0.0}
        iterations = t
        delta = 0.0
        for i in x.keys() | nxt.keys():
            delta += abs(nxt.get(i, 0.0) - x.get(i, 0.0))
        x = nxt
        if delta < epsilon_t:
            break
    return x, iterations


def truncated_pagerank(T: Subgraph, q: int, alpha_n: float,
                       params: NibbleParams, epsilon_t: float) -> RankVector:
    """Truncated personalized PageRank around seed q (an original node id).

    The returned scores are keyed by the subgraph's local indices; map them
    through ``T.node_map`` to recover original ids.
    """
    if not 0.0 < alpha_n <= 1.0:
        raise ValueError(f"alpha_n must be in (0,1], got {alpha_n}")
    seed_local = T.local_index(q)
    g = T.graph
    scores, iterations = _truncated_ppr(
        g.indptr, g.indices, g.weights, g.weighted_degrees,
        seed_local, alpha_n, params.epsilon, params.t_last, epsilon_t)
    return RankVector(scores=scores, iterations=iterations, seed=seed_local)
