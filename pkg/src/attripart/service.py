"""HTTP JSON API for the explorer UI.

Each loaded dataset becomes an immutable GraphSession addressed by a
stable id; requests share the session graphs read-only, so identical
POSTs with the same rng seed return identical bodies (timings aside).
Subgraph payloads sent for rendering are capped at RENDER_EDGE_CAP edges.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .dataio import DatasetBundle, GraphDataError, load_dataset, result_to_dict
from .forecast import expanded_neighborhood, predicted_edges
from .graphs import CombinedGraph, build_combined_graph
from .partition import AlgorithmError, PartitionResult, attripart_from_subgraph
from .proximity import Subgraph, local_proximity

RENDER_EDGE_CAP = 2000


@dataclass
class GraphSession:
    dataset_id: str
    bundle: DatasetBundle
    combined: CombinedGraph
    created_at: float = field(default_factory=time.time)

    @classmethod
    def from_bundle(cls, dataset_id: str, bundle: DatasetBundle) -> "GraphSession":
        return cls(dataset_id=dataset_id, bundle=bundle,
                   combined=build_combined_graph(bundle.graph, bundle.attributes))


class PartitionRequest(BaseModel):
    seed: str
    phi: float = Field(default=0.2, gt=0, lt=1)
    alpha_n: float = Field(default=0.2, gt=0, le=1)
    alpha_r: float = Field(default=0.15, gt=0, lt=1)
    ts: float = Field(default=2.0, gt=0)
    nw: int = Field(default=10000, ge=1)
    ns: int = Field(default=200, ge=1)
    rng: int = 42


class ForecastRequest(PartitionRequest):
    te: float = Field(default=0.7, gt=0, le=1)


class ProximityRequest(BaseModel):
    seed: str
    alpha_r: float = Field(default=0.15, gt=0, lt=1)
    ts: float = Field(default=2.0, gt=0)
    nw: int = Field(default=10000, ge=1)
    rng: int = 42


def parse_dataset_specs(specs: list[str]) -> dict[str, GraphSession]:
    """Parse repeatable ``name=edges[,attrs]`` CLI specs into sessions."""
    sessions: dict[str, GraphSession] = {}
    for spec in specs:
        name, _, paths = spec.partition("=")
        if not paths:
            raise GraphDataError(f"bad dataset spec {spec!r}, want name=edges[,attrs]")
        edges, _, attrs = paths.partition(",")
        bundle = load_dataset(edges, attrs or None, name=name)
        sessions[name] = GraphSession.from_bundle(name, bundle)
    return sessions


def _render_subgraph(session: GraphSession, T: Subgraph, members: set[int]) -> dict:
    labels = session.bundle.labels
    nodes = [{"id": int(v), "label": labels[int(v)], "member": int(v) in members}
             for v in T.node_map]
    edges = []
    truncated = False
    for u, v, w, structural in T.graph.edges():
        if len(edges) >= RENDER_EDGE_CAP:
            truncated = True
            break
        edges.append({"source": int(T.node_map[u]), "target": int(T.node_map[v]),
                      "weight": round(w, 6), "structural": bool(structural)})
    return {"nodes": nodes, "edges": edges, "truncated": truncated}


def create_app(sessions: dict[str, GraphSession]) -> FastAPI:
    if not sessions:
        raise ValueError("at least one dataset is required")
    app = FastAPI(title="attripart service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"])

    def session_or_404(graph_id: str) -> GraphSession:
        s = sessions.get(graph_id)
        if s is None:
            raise HTTPException(status_code=404,
                                detail={"error": f"unknown graph {graph_id!r}",
                                        "stage": "lookup"})
        return s

    def seed_or_422(session: GraphSession, label: str) -> int:
        try:
            return session.bundle.node_id(label)
        except GraphDataError:
            raise HTTPException(status_code=422,
                                detail={"error": f"node {label!r} not found",
                                        "stage": "seed-lookup"}) from None

    def algorithm_500(e: Exception):
        stage = getattr(e, "stage", "algorithm")
        raise HTTPException(status_code=500,
                            detail={"error": str(e), "stage": stage}) from e

    @app.get("/graphs")
    def list_graphs():
        return [{"id": s.dataset_id, "name": s.bundle.name,
                 "n": s.bundle.graph.n, "m": s.bundle.graph.m}
                for s in sessions.values()]

    @app.get("/graphs/{graph_id}/node")
    def node_info(graph_id: str, label: str):
        session = session_or_404(graph_id)
        v = seed_or_422(session, label)
        return {"label": label, "id": v,
                "degree": session.bundle.graph.degree(v),
                "weighted_degree": float(session.combined.weighted_degrees[v]),
                "tokens": session.bundle.attributes.token_names(v)}

    def extract(session: GraphSession, q: int, req) -> Subgraph:
        return local_proximity(session.combined, q, alpha_r=req.alpha_r,
                               n_w=req.nw, t_s=req.ts, rng_seed=req.rng)

    @app.post("/graphs/{graph_id}/partition")
    def partition(graph_id: str, req: PartitionRequest):
        session = session_or_404(graph_id)
        q = seed_or_422(session, req.seed)
        try:
            T = extract(session, q, req)
            result = attripart_from_subgraph(T, q, session.combined,
                                             phi_o=req.phi, alpha_n=req.alpha_n,
                                             n_s=req.ns)
            result.params.update({"alpha_r": req.alpha_r, "n_w": req.nw,
                                  "t_s": req.ts, "rng_seed": req.rng})
        except (AlgorithmError, ValueError) as e:
            algorithm_500(e)
        doc = result_to_dict(result, session.bundle.labels)
        return {"result": doc,
                "resolved_params": req.model_dump(),
                "subgraph": _render_subgraph(session, T, set(result.members))}

    @app.post("/graphs/{graph_id}/forecast")
    def forecast(graph_id: str, req: ForecastRequest):
        session = session_or_404(graph_id)
        q = seed_or_422(session, req.seed)
        try:
            T = extract(session, q, req)
            T = expanded_neighborhood(T, session.bundle.attributes, req.te)
            result = attripart_from_subgraph(T, q, session.combined,
                                             phi_o=req.phi, alpha_n=req.alpha_n,
                                             n_s=req.ns)
            result.predicted = True
            result.params.update({"alpha_r": req.alpha_r, "n_w": req.nw,
                                  "t_s": req.ts, "rng_seed": req.rng,
                                  "t_e": req.te})
        except (AlgorithmError, ValueError) as e:
            algorithm_500(e)
        labels = session.bundle.labels
        doc = result_to_dict(result, labels)
        preds = [{"source": u, "target": v, "source_label": labels[u],
                  "target_label": labels[v], "weight": round(w, 6)}
                 for u, v, w in predicted_edges(T)]
        return {"result": doc,
                "resolved_params": req.model_dump(),
                "predicted_edges": preds,
                "subgraph": _render_subgraph(session, T, set(result.members))}

    @app.post("/graphs/{graph_id}/proximity")
    def proximity(graph_id: str, req: ProximityRequest):
        session = session_or_404(graph_id)
        q = seed_or_422(session, req.seed)
        try:
            T = local_proximity(session.combined, q, alpha_r=req.alpha_r,
                                n_w=req.nw, t_s=req.ts, rng_seed=req.rng)
        except ValueError as e:
            algorithm_500(e)
        return {"resolved_params": req.model_dump(),
                "p": T.p, "m_p": T.graph.m,
                "subgraph": _render_subgraph(session, T, set())}

    return app
