"""Graph model for attributed local partitioning.

Three views of one network:

* ``StructureGraph``   -- the plain undirected, unweighted topology.
* ``AttributeStore``   -- per-node token sets (keywords, genres, ...).
* ``CombinedGraph``    -- the weighted union used by all algorithms:
  every structural edge carries weight ``1 + sim(u, v)`` where ``sim`` is
  the Jaccard similarity of the endpoint token sets (with a small floor
  when the endpoints share nothing).

Attribute-only edges between non-adjacent pairs are *not* materialised
globally (that would require all-pairs similarity); they are added on
small extracted subgraphs by :func:`attripart.forecast.expanded_neighborhood`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

# Fallback similarity for structural edges whose endpoints share no tokens.
DEFAULT_EDGE_SIMILARITY = 0.05


def jaccard(a, b) -> float:
    """Jaccard similarity |a & b| / |a | b| of two sets.

    Two empty sets compare as 0.0 (the 0/0 convention).
    """
    if not a or not b:
        return 0.0
    inter = len(a & b)
    if inter == 0:
        return 0.0
    return inter / (len(a) + len(b) - inter)


class StructureGraph:
    """Undirected, unweighted graph in CSR form.

    Adjacency lists are sorted, contain no self-loops and no duplicates;
    symmetry is enforced at construction time.
    """

    __slots__ = ("indptr", "indices")

    def __init__(self, indptr: np.ndarray, indices: np.ndarray):
        self.indptr = indptr
        self.indices = indices

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return bool(i < len(row) and row[i] == v)

    def edges(self):
        """Yield each undirected edge once as (u, v) with u < v."""
        for u in range(self.n):
            for v in self.neighbors(u):
                if v > u:
                    yield u, int(v)

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "StructureGraph":
        """Build from undirected pairs; self-loops and duplicates are dropped."""
        seen = set()
        for u, v in pairs:
            if u == v:
                continue
            if u > v:
                u, v = v, u
            seen.add((u, v))
        return cls._from_unique_pairs(n, seen)

    @classmethod
    def _from_unique_pairs(cls, n: int, pairs) -> "StructureGraph":
        m = len(pairs)
        src = np.empty(2 * m, dtype=np.int64)
        dst = np.empty(2 * m, dtype=np.int64)
        for i, (u, v) in enumerate(pairs):
            src[2 * i], dst[2 * i] = u, v
            src[2 * i + 1], dst[2 * i + 1] = v, u
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        np.cumsum(indptr, out=indptr)
        return cls(indptr, dst.astype(np.int32))


class AttributeStore:
    """Per-node token sets with an interned vocabulary.

    Tokens are stored as integer ids; ``vocab`` maps id -> original string.
    Every node in [0, n) has an entry, possibly the empty set.
    """

    __slots__ = ("tokens", "vocab", "_vocab_index")

    def __init__(self, tokens: list[frozenset[int]], vocab: list[str]):
        self.tokens = tokens
        self.vocab = vocab
        self._vocab_index = {t: i for i, t in enumerate(vocab)}

    @property
    def n(self) -> int:
        return len(self.tokens)

    @property
    def k(self) -> int:
        """Vocabulary size."""
        return len(self.vocab)

    def token_names(self, v: int) -> list[str]:
        return sorted(self.vocab[t] for t in self.tokens[v])

    @classmethod
    def from_token_sets(cls, sets: Sequence[Iterable[str]]) -> "AttributeStore":
        vocab: list[str] = []
        index: dict[str, int] = {}
        tokens = []
        for raw in sets:
            ids = set()
            for t in raw:
                i = index.get(t)
                if i is None:
                    i = index[t] = len(vocab)
                    vocab.append(t)
                ids.add(i)
            tokens.append(frozenset(ids))
        return cls(tokens, vocab)

    @classmethod
    def empty(cls, n: int) -> "AttributeStore":
        return cls([frozenset()] * n, [])


class CombinedGraph:
    """Undirected weighted graph; each edge knows whether it is structural.

    Structural edges (present in the underlying :class:`StructureGraph`)
    have weight ``1 + similarity``; predicted attribute edges added on
    subgraphs have weight equal to their similarity alone.
    """

    __slots__ = ("indptr", "indices", "weights", "structural", "_wdeg", "_sdeg")

    def __init__(self, indptr, indices, weights, structural):
        self.indptr = indptr
        self.indices = indices
        self.weights = weights
        self.structural = structural
        self._wdeg = None
        self._sdeg = None

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @property
    def weighted_degrees(self) -> np.ndarray:
        if self._wdeg is None:
            wdeg = np.zeros(self.n)
            np.add.at(wdeg, np.repeat(np.arange(self.n), np.diff(self.indptr)), self.weights)
            self._wdeg = wdeg
        return self._wdeg

    @property
    def structural_degrees(self) -> np.ndarray:
        """Unweighted degrees counting structural edges only."""
        if self._sdeg is None:
            sdeg = np.zeros(self.n, dtype=np.int64)
            np.add.at(sdeg, np.repeat(np.arange(self.n), np.diff(self.indptr)),
                      self.structural.astype(np.int64))
            self._sdeg = sdeg
        return self._sdeg

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.indptr[v], self.indptr[v + 1]
        return self.indices[lo:hi], self.weights[lo:hi]

    def neighbor_flags(self, v: int) -> np.ndarray:
        return self.structural[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.indices[self.indptr[u]:self.indptr[u + 1]]
        i = np.searchsorted(row, v)
        return bool(i < len(row) and row[i] == v)

    def edge_weight(self, u: int, v: int) -> float:
        """Weight of edge (u, v), or 0.0 when absent."""
        lo, hi = self.indptr[u], self.indptr[u + 1]
        row = self.indices[lo:hi]
        i = np.searchsorted(row, v)
        if i < len(row) and row[i] == v:
            return float(self.weights[lo + i])
        return 0.0

    def edges(self):
        """Yield each undirected edge once as (u, v, weight, structural)."""
        for u in range(self.n):
            lo, hi = self.indptr[u], self.indptr[u + 1]
            for p in range(lo, hi):
                v = int(self.indices[p])
                if v > u:
                    yield u, v, float(self.weights[p]), bool(self.structural[p])

    @classmethod
    def from_edge_list(cls, n: int,
                       edges: Iterable[tuple[int, int, float, bool]]) -> "CombinedGraph":
        """Build from undirected (u, v, weight, structural) tuples, u != v."""
        edges = list(edges)
        m = len(edges)
        src = np.empty(2 * m, dtype=np.int64)
        dst = np.empty(2 * m, dtype=np.int64)
        w = np.empty(2 * m)
        flag = np.empty(2 * m, dtype=bool)
        for i, (u, v, wt, st) in enumerate(edges):
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            src[2 * i], dst[2 * i] = u, v
            src[2 * i + 1], dst[2 * i + 1] = v, u
            w[2 * i] = w[2 * i + 1] = wt
            flag[2 * i] = flag[2 * i + 1] = st
        order = np.lexsort((dst, src))
        src, dst, w, flag = src[order], dst[order], w[order], flag[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        np.cumsum(indptr, out=indptr)
        return cls(indptr, dst.astype(np.int32), w, flag)


def build_attribute_weight(G: StructureGraph, X: AttributeStore,
                           u: int, v: int, t_e: float) -> float:
    """Attribute-edge weight between u and v.

    Structural neighbours always get a positive weight (their similarity,
    floored at ``DEFAULT_EDGE_SIMILARITY`` when it is zero); non-adjacent
    pairs get their similarity only when it strictly exceeds ``t_e``.
    """
    if u == v:
        raise ValueError("attribute weight is undefined for u == v")
    j = jaccard(X.tokens[u], X.tokens[v])
    if G.has_edge(u, v):
        return j if j > 0 else DEFAULT_EDGE_SIMILARITY
    return j if j > t_e else 0.0


def build_combined_graph(G: StructureGraph, X: AttributeStore) -> CombinedGraph:
    """Combine structure and attributes: weight(u,v) = 1 + similarity(u,v).

    Only structural edges are materialised; attribute similarity between
    non-adjacent pairs is evaluated later, on extracted subgraphs.
    """
    if X.n != G.n:
        raise ValueError(f"attribute store covers {X.n} nodes, graph has {G.n}")
    n = G.n
    indptr = G.indptr.copy()
    indices = G.indices.copy()
    weights = np.empty(len(indices))
    tokens = X.tokens
    for u in range(n):
        lo, hi = indptr[u], indptr[u + 1]
        for p in range(lo, hi):
            v = int(indices[p])
            if v < u:
                continue  # filled from the (v, u) side below
            j = jaccard(tokens[u], tokens[v])
            w = 1.0 + (j if j > 0 else DEFAULT_EDGE_SIMILARITY)
            weights[p] = w
            # mirror position of u in v's sorted row
            vlo, vhi = indptr[v], indptr[v + 1]
            q = vlo + np.searchsorted(indices[vlo:vhi], u)
            weights[q] = w
    return CombinedGraph(indptr, indices, weights, np.ones(len(indices), dtype=bool))


def weighted_degree(B: CombinedGraph, v: int) -> float:
    """Sum of incident edge weights."""
    return float(B.weighted_degrees[v])


def volume(B: CombinedGraph, S: Iterable[int]) -> float:
    """Sum of weighted degrees over the vertex set S."""
    wdeg = B.weighted_degrees
    return float(sum(wdeg[v] for v in S))


def total_volume(B: CombinedGraph) -> float:
    """Volume of the whole graph (twice the total edge weight)."""
    return float(B.weighted_degrees.sum())


def induced_subgraph(B: CombinedGraph, nodes: Sequence[int]) -> tuple[CombinedGraph, np.ndarray]:
    """Induced subgraph on ``nodes`` plus the local->original id map.

    Nodes are relabelled 0..p-1 in ascending original order; edge weights
    and structural flags are preserved exactly.
    """
    node_map = np.unique(np.asarray(nodes, dtype=np.int64))
    local = np.full(B.n, -1, dtype=np.int64)
    local[node_map] = np.arange(len(node_map))
    indptr = np.zeros(len(node_map) + 1, dtype=np.int64)
    chunks_idx, chunks_w, chunks_f = [], [], []
    for i, orig in enumerate(node_map):
        lo, hi = B.indptr[orig], B.indptr[orig + 1]
        nbr_local = local[B.indices[lo:hi]]
        keep = nbr_local >= 0
        chunks_idx.append(nbr_local[keep].astype(np.int32))
        chunks_w.append(B.weights[lo:hi][keep])
        chunks_f.append(B.structural[lo:hi][keep])
        indptr[i + 1] = indptr[i] + int(keep.sum())
    indices = np.concatenate(chunks_idx) if chunks_idx else np.empty(0, dtype=np.int32)
    weights = np.concatenate(chunks_w) if chunks_w else np.empty(0)
    flags = np.concatenate(chunks_f) if chunks_f else np.empty(0, dtype=bool)
    return CombinedGraph(indptr, indices, weights, flags), node_map


def structural_graph(B: CombinedGraph) -> StructureGraph:
    """Extract the unweighted structural topology from a combined graph."""
    keep = B.structural
    n = B.n
    counts = np.zeros(n, dtype=np.int64)
    np.add.at(counts, np.repeat(np.arange(n), np.diff(B.indptr)), keep.astype(np.int64))
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return StructureGraph(indptr, B.indices[keep].copy())


def as_unit_combined(G: StructureGraph) -> CombinedGraph:
    """View a structure graph as a combined graph with unit weights."""
    return CombinedGraph(G.indptr, G.indices,
                         np.ones(len(G.indices)),
                         np.ones(len(G.indices), dtype=bool))
