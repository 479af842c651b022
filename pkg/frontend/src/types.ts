/** Wire types mirroring the partition service's JSON responses. */

export interface GraphInfo {
  id: string;
  name: string;
  n: number;
  m: number;
}

export interface NodeInfo {
  label: string;
  id: number;
  degree: number;
  weighted_degree: number;
  tokens: string[];
}

export interface PartitionParams {
  seed: string;
  phi: number;
  alpha_n: number;
  alpha_r: number;
  ts: number;
  nw: number;
  ns: number;
  rng: number;
}

export interface ForecastParams extends PartitionParams {
  te: number;
}

export interface PartitionDoc {
  seed: string;
  members: string[];
  parallel_conductance: number;
  traditional_conductance: number | null;
  met_target: boolean;
  predicted: boolean;
  sweep_position: number;
  sweep_trace: [number, number][];
  timings_ms: Record<string, number>;
  params: Record<string, unknown>;
}

export interface RenderNode {
  id: number;
  label: string;
  member: boolean;
}

export interface RenderEdge {
  source: number;
  target: number;
  weight: number;
  structural: boolean;
}

export interface RenderSubgraph {
  nodes: RenderNode[];
  edges: RenderEdge[];
  truncated: boolean;
}

export interface PredictedEdge {
  source: number;
  target: number;
  source_label: string;
  target_label: string;
  weight: number;
}

export interface PartitionResponse {
  result: PartitionDoc;
  resolved_params: PartitionParams;
  subgraph: RenderSubgraph;
}

export interface ForecastResponse extends PartitionResponse {
  resolved_params: ForecastParams;
  predicted_edges: PredictedEdge[];
}

export interface ServiceError {
  error: string;
  stage: string;
}
