/** Explorer session state and the pure computations the panels display.
 *
 * Every number shown in the UI is either a field copied from a service
 * response or a set operation over response member lists; nothing is
 * synthesised client-side.
 */

import { PanelValues, clampPanel } from "./params.js";
import { ForecastResponse, PartitionResponse } from "./types.js";

export interface HistoryEntry {
  kind: "partition" | "forecast";
  graphId: string;
  seed: string;
  rng: number;
  members: string[];
  conductance: number;
  at: number;
}

export interface Deltas {
  gained: string[];
  lost: string[];
  vertexDelta: number;
  edgeDelta: number;
}

export class ExplorerState {
  graphId: string | null = null;
  seed: string = "";
  panel: PanelValues;
  lastPartition: PartitionResponse | null = null;
  lastForecast: ForecastResponse | null = null;
  private history: HistoryEntry[] = [];

  constructor(panel?: Partial<PanelValues>) {
    this.panel = clampPanel(panel ?? {});
  }

  setPanel(values: Partial<PanelValues>): PanelValues {
    this.panel = clampPanel({ ...this.panel, ...values });
    return this.panel;
  }

  /** History is append-only within a session. */
  recordRun(kind: "partition" | "forecast", response: PartitionResponse): void {
    if (!this.graphId) return;
    this.history.push({
      kind,
      graphId: this.graphId,
      seed: response.result.seed,
      rng: this.panel.rng,
      members: [...response.result.members],
      conductance: response.result.parallel_conductance,
      at: Date.now(),
    });
  }

  get runs(): readonly HistoryEntry[] {
    return this.history;
  }

  get canForecast(): boolean {
    return this.lastPartition !== null;
  }
}

/** Vertex/edge deltas between a forecast run and the plain run, computed
 * client-side from the two responses' member lists and edge lists. */
export function compareRuns(plain: PartitionResponse,
                            forecast: ForecastResponse): Deltas {
  const before = new Set(plain.result.members);
  const after = new Set(forecast.result.members);
  const gained = [...after].filter((m) => !before.has(m)).sort();
  const lost = [...before].filter((m) => !after.has(m)).sort();

  const edgeKey = (a: number, b: number) => (a < b ? `${a}|${b}` : `${b}|${a}`);
  const memberEdges = (r: PartitionResponse) => {
    const ids = new Set(r.subgraph.nodes.filter((n) => n.member).map((n) => n.id));
    return new Set(r.subgraph.edges
      .filter((e) => e.structural && ids.has(e.source) && ids.has(e.target))
      .map((e) => edgeKey(e.source, e.target)));
  };
  const e1 = memberEdges(plain);
  const e2 = memberEdges(forecast);
  let edgeDelta = 0;
  for (const k of e2) if (!e1.has(k)) edgeDelta += 1;
  for (const k of e1) if (!e2.has(k)) edgeDelta -= 1;

  return {
    gained,
    lost,
    vertexDelta: after.size - before.size,
    edgeDelta,
  };
}

/** Sweep trace points scaled into a [0,1]x[0,1] box for the sparkline. */
export function sparklinePoints(trace: [number, number][]): [number, number][] {
  if (trace.length === 0) return [];
  const xs = trace.map(([j]) => j);
  const ys = trace.map(([, phi]) => phi);
  const xMax = Math.max(...xs);
  const yMax = Math.max(...ys, 1e-12);
  return trace.map(([j, phi]) => [j / xMax, 1 - phi / yMax]);
}
