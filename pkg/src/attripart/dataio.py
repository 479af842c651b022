"""Dataset file formats and partition persistence.

Edge lists are whitespace-separated ``u v`` label pairs, one edge per
line, with ``#`` comments.  Attribute files are ``label<TAB>tok1,tok2,...``;
literal commas inside a token are escaped as ``%2C``.  Labels are
interned to dense ids in first-appearance order, which makes loading
deterministic for a fixed file.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional, Sequence

from .graphs import AttributeStore, StructureGraph
from .partition import PartitionResult

log = logging.getLogger(__name__)


class GraphDataError(ValueError):
    """Malformed or inconsistent dataset input."""


@dataclass
class DatasetBundle:
    name: str
    graph: StructureGraph
    attributes: AttributeStore
    labels: list[str]
    label_to_id: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.label_to_id:
            self.label_to_id = {lab: i for i, lab in enumerate(self.labels)}

    def node_id(self, label: str) -> int:
        try:
            return self.label_to_id[label]
        except KeyError:
            raise GraphDataError(f"unknown node label {label!r}") from None


def load_edge_list(path) -> tuple[StructureGraph, list[str]]:
    """Parse an edge-list file; returns the graph and the label table.

    Self-loops and duplicate edges are dropped (one summary warning each).
    """
    labels: list[str] = []
    index: dict[str, int] = {}

    def intern(label: str) -> int:
        i = index.get(label)
        if i is None:
            i = index[label] = len(labels)
            labels.append(label)
        return i

    pairs: set[tuple[int, int]] = set()
    self_loops = 0
    duplicates = 0
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphDataError(f"{path}:{lineno}: expected 'u v', got {line!r}")
            u, v = intern(parts[0]), intern(parts[1])
            if u == v:
                self_loops += 1
                continue
            key = (u, v) if u < v else (v, u)
            if key in pairs:
                duplicates += 1
            else:
                pairs.add(key)
    if not labels:
        raise GraphDataError(f"{path}: no edges found")
    if self_loops:
        log.warning("%s: dropped %d self-loop(s)", path, self_loops)
    if duplicates:
        log.warning("%s: dropped %d duplicate edge(s)", path, duplicates)
    return StructureGraph._from_unique_pairs(len(labels), pairs), labels


def _unescape(token: str) -> str:
    return token.replace("%2C", ",")


def _escape(token: str) -> str:
    return token.replace(",", "%2C")


def load_attributes(path, label_to_id: Mapping[str, int], n: int) -> AttributeStore:
    """Parse a token-set file; nodes absent from it get empty sets."""
    raw: list[set[str]] = [set() for _ in range(n)]
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            name, _, rest = line.partition("\t")
            if name not in label_to_id:
                raise GraphDataError(f"{path}:{lineno}: unknown node label {name!r}")
            toks = {_unescape(t) for t in rest.split(",") if t}
            raw[label_to_id[name]] |= toks
    return AttributeStore.from_token_sets(raw)


def load_dataset(edges_path, attrs_path=None, name: Optional[str] = None) -> DatasetBundle:
    graph, labels = load_edge_list(edges_path)
    if attrs_path is not None:
        label_to_id = {lab: i for i, lab in enumerate(labels)}
        attrs = load_attributes(attrs_path, label_to_id, graph.n)
    else:
        attrs = AttributeStore.empty(graph.n)
    return DatasetBundle(name=name or Path(edges_path).stem, graph=graph,
                         attributes=attrs, labels=labels)


def save_dataset(G: StructureGraph, X: AttributeStore, labels: Sequence[str],
                 edges_path, attrs_path) -> None:
    """Write the TSV pair; the edge-list format can only name edge
    endpoints, so attribute rows for isolated nodes are dropped."""
    with open(edges_path, "w") as f:
        for u, v in G.edges():
            f.write(f"{labels[u]}\t{labels[v]}\n")
    degs = G.degrees
    with open(attrs_path, "w") as f:
        for v in range(X.n):
            toks = X.token_names(v)
            if toks and degs[v] > 0:
                f.write(f"{labels[v]}\t{','.join(_escape(t) for t in toks)}\n")


def default_labels(n: int) -> list[str]:
    return [f"n{i}" for i in range(n)]


def result_to_dict(result: PartitionResult,
                   labels: Optional[Sequence[str]] = None) -> dict:
    """JSON-ready view of a partition result (stable key order)."""
    if not result.trace:
        raise ValueError("refusing to serialize a result with an empty sweep trace")
    name = (lambda v: labels[v]) if labels is not None else str
    return {
        "seed": name(result.seed),
        "members": [name(v) for v in result.members],
        "parallel_conductance": result.parallel_conductance,
        "traditional_conductance": result.traditional_conductance,
        "met_target": result.met_target,
        "predicted": result.predicted,
        "sweep_position": result.sweep_position,
        "sweep_trace": [[int(j), phi] for j, phi in result.trace],
        "timings_ms": {k: round(v, 3) for k, v in sorted(result.timings_ms.items())},
        "params": result.params,
    }


def save_partition(result: PartitionResult, path, format: str = "json",
                   labels: Optional[Sequence[str]] = None) -> None:
    """Persist a partition result as JSON or CSV.

    The CSV variant writes a ``# key,value`` metric header block followed
    by one member label per row.
    """
    doc = result_to_dict(result, labels)
    try:
        with open(path, "w") as f:
            if format == "json":
                json.dump(doc, f, indent=2, sort_keys=True)
                f.write("\n")
            elif format == "csv":
                for key in ("seed", "parallel_conductance", "traditional_conductance",
                            "met_target", "sweep_position", "predicted"):
                    f.write(f"# {key},{doc[key]}\n")
                f.write("member\n")
                for label in doc["members"]:
                    f.write(f"{label}\n")
            else:
                raise ValueError(f"unknown format {format!r}")
    except OSError as e:
        raise GraphDataError(f"cannot write {path}: {e}") from e
