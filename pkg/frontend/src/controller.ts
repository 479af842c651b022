/** View-agnostic explorer flow: enter a seed, run a partition, toggle a
 * forecast, pivot to a clicked node. The DOM layer implements
 * ExplorerView; tests drive the controller with a recording fake.
 */

import { ApiClient, ApiError } from "./api.js";
import { PanelValues, paramsRoundTrip, toRequest } from "./params.js";
import { Deltas, ExplorerState, compareRuns, sparklinePoints } from "./state.js";
import { ForecastResponse, GraphInfo, PartitionResponse } from "./types.js";

export interface MetricsView {
  parallelConductance: number;
  traditionalConductance: number | null;
  metTarget: boolean;
  members: number;
  subgraphNodes: number;
  sparkline: [number, number][];
  density: number | null;
}

export interface ExplorerView {
  showGraphs(graphs: GraphInfo[]): void;
  showPartition(response: PartitionResponse, metrics: MetricsView): void;
  showForecast(response: ForecastResponse, metrics: MetricsView, deltas: Deltas): void;
  showInlineError(message: string): void;
  showErrorBanner(stage: string, message: string): void;
  setForecastEnabled(enabled: boolean): void;
}

/** Density of the member-induced structural subgraph, from response data. */
export function memberDensity(response: PartitionResponse): number | null {
  const ids = new Set(response.subgraph.nodes.filter((n) => n.member).map((n) => n.id));
  const k = ids.size;
  if (k < 2) return null;
  let m = 0;
  for (const e of response.subgraph.edges) {
    if (e.structural && ids.has(e.source) && ids.has(e.target)) m += 1;
  }
  return (2 * m) / (k * (k - 1));
}

function metricsOf(response: PartitionResponse): MetricsView {
  return {
    parallelConductance: response.result.parallel_conductance,
    traditionalConductance: response.result.traditional_conductance,
    metTarget: response.result.met_target,
    members: response.result.members.length,
    subgraphNodes: response.subgraph.nodes.length,
    sparkline: sparklinePoints(response.result.sweep_trace),
    density: memberDensity(response),
  };
}

export class ExplorerController {
  readonly state: ExplorerState;

  constructor(private api: ApiClient, private view: ExplorerView,
              panel?: Partial<PanelValues>) {
    this.state = new ExplorerState(panel);
  }

  async loadGraphs(): Promise<GraphInfo[]> {
    const graphs = await this.api.listGraphs();
    if (graphs.length > 0 && this.state.graphId === null) {
      this.state.graphId = graphs[0].id;
    }
    this.view.showGraphs(graphs);
    return graphs;
  }

  selectGraph(id: string): void {
    this.state.graphId = id;
    this.state.lastPartition = null;
    this.state.lastForecast = null;
    this.view.setForecastEnabled(false);
  }

  setSeed(label: string): void {
    this.state.seed = label.trim();
  }

  setPanel(values: Partial<PanelValues>): PanelValues {
    return this.state.setPanel(values);
  }

  async runPartition(): Promise<PartitionResponse | null> {
    if (!this.state.graphId || !this.state.seed) {
      this.view.showInlineError("pick a graph and enter a seed node");
      return null;
    }
    const request = toRequest(this.state.seed, this.state.panel);
    try {
      const response = await this.api.partition(this.state.graphId, request);
      if (!paramsRoundTrip(request, response.resolved_params as unknown as Record<string, unknown>)) {
        this.view.showErrorBanner("params", "service echoed different parameters");
        return null;
      }
      this.state.lastPartition = response;
      this.state.lastForecast = null;
      this.state.recordRun("partition", response);
      this.view.showPartition(response, metricsOf(response));
      this.view.setForecastEnabled(true);
      return response;
    } catch (err) {
      this.reportError(err);
      return null;
    }
  }

  /** Forecast with the same seed/rng, overlaying predicted edges. */
  async toggleForecast(): Promise<ForecastResponse | null> {
    const plain = this.state.lastPartition;
    if (!plain || !this.state.graphId) {
      this.view.showInlineError("run a partition first");
      return null;
    }
    const request = toRequest(plain.result.seed, this.state.panel);
    try {
      const response = await this.api.forecast(this.state.graphId, request);
      this.state.lastForecast = response;
      this.state.recordRun("forecast", response);
      this.view.showForecast(response, metricsOf(response), compareRuns(plain, response));
      return response;
    } catch (err) {
      this.reportError(err);
      return null;
    }
  }

  /** Clicking a rendered node makes it the next seed. */
  pivotTo(label: string): void {
    this.setSeed(label);
  }

  private reportError(err: unknown): void {
    if (err instanceof ApiError) {
      if (err.status === 422 || err.status === 404) {
        this.view.showInlineError(err.message);
      } else {
        this.view.showErrorBanner(err.stage, err.message);
      }
      return;
    }
    if (err instanceof Error && err.name === "AbortError") {
      return; // replaced by a newer request
    }
    this.view.showErrorBanner("network", String(err));
  }
}
