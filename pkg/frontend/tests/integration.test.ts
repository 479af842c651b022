/** Scripted round-trip against the real partition service: generate a
 * fixture dataset, serve it, then drive the explorer controller through
 * enter-seed -> partition -> toggle forecast at te = 1.0 and check the
 * displayed state against the service's own response fields.
 */

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { ChildProcess, execFileSync, spawn } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { ApiClient } from "../src/api.js";
import { ExplorerController, ExplorerView, MetricsView } from "../src/controller.js";
import { Deltas } from "../src/state.js";
import { ForecastResponse, GraphInfo, PartitionResponse } from "../src/types.js";

const PORT = 8791;
const BASE = `http://127.0.0.1:${PORT}`;

class RecordingView implements ExplorerView {
  graphs: GraphInfo[] = [];
  partitions: Array<{ response: PartitionResponse; metrics: MetricsView }> = [];
  forecasts: Array<{ response: ForecastResponse; metrics: MetricsView; deltas: Deltas }> = [];
  inlineErrors: string[] = [];
  banners: string[] = [];
  forecastEnabled = false;

  showGraphs(graphs: GraphInfo[]): void { this.graphs = graphs; }
  showPartition(r: PartitionResponse, m: MetricsView): void {
    this.partitions.push({ response: r, metrics: m });
  }
  showForecast(r: ForecastResponse, m: MetricsView, d: Deltas): void {
    this.forecasts.push({ response: r, metrics: m, deltas: d });
  }
  showInlineError(msg: string): void { this.inlineErrors.push(msg); }
  showErrorBanner(stage: string, msg: string): void { this.banners.push(`${stage}: ${msg}`); }
  setForecastEnabled(enabled: boolean): void { this.forecastEnabled = enabled; }
}

let service: ChildProcess | null = null;
let workDir = "";
let seedLabel = "";

async function waitForService(): Promise<void> {
  for (let i = 0; i < 60; i++) {
    try {
      const res = await fetch(`${BASE}/graphs`);
      if (res.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 500));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "explorer-fixture-"));
  const prefix = join(workDir, "fixture");
  execFileSync("python3", ["-m", "attripart.cli", "synth",
                           "--blocks", "4", "--block-size", "8",
                           "--p-in", "0.6", "--p-out", "0.02",
                           "--rng", "7", "--out-prefix", prefix]);
  const firstLine = readFileSync(`${prefix}.edges.tsv`, "utf8").split("\n")[0];
  seedLabel = firstLine.split("\t")[0];
  service = spawn("python3", ["-m", "attripart.cli", "serve",
                              "--port", String(PORT),
                              "--dataset", `fixture=${prefix}.edges.tsv,${prefix}.attrs.tsv`],
                  { stdio: "ignore" });
  await waitForService();
}, 60000);

afterAll(() => {
  service?.kill();
  if (workDir) rmSync(workDir, { recursive: true, force: true });
});

describe("explorer round trip against the live service", () => {
  it("partition then forecast at te=1.0 shows identical member sets", async () => {
    const view = new RecordingView();
    const ctl = new ExplorerController(new ApiClient(BASE), view);

    const graphs = await ctl.loadGraphs();
    expect(graphs.length).toBe(1);
    expect(graphs[0].id).toBe("fixture");

    ctl.setSeed(seedLabel);
    ctl.setPanel({ rng: 42, te: 1.0 });
    const plain = await ctl.runPartition();
    expect(plain).not.toBeNull();
    expect(view.forecastEnabled).toBe(true);

    const forecast = await ctl.toggleForecast();
    expect(forecast).not.toBeNull();

    // identical member sets for both runs at the degenerate threshold
    const a = [...plain!.result.members].sort();
    const b = [...forecast!.result.members].sort();
    expect(b).toEqual(a);
    expect(forecast!.predicted_edges).toEqual([]);
    expect(view.forecasts[0].deltas.vertexDelta).toBe(0);
    expect(view.forecasts[0].deltas.gained).toEqual([]);

    // every displayed metric equals the corresponding response field
    const shown = view.partitions[0].metrics;
    expect(shown.parallelConductance).toBe(plain!.result.parallel_conductance);
    expect(shown.traditionalConductance).toBe(plain!.result.traditional_conductance);
    expect(shown.metTarget).toBe(plain!.result.met_target);
    expect(shown.members).toBe(plain!.result.members.length);
    expect(shown.sparkline.length).toBe(plain!.result.sweep_trace.length);
  }, 60000);

  it("identical rng values reproduce identical member sets", async () => {
    const view = new RecordingView();
    const ctl = new ExplorerController(new ApiClient(BASE), view);
    await ctl.loadGraphs();
    ctl.setSeed(seedLabel);
    ctl.setPanel({ rng: 1234 });
    const first = await ctl.runPartition();
    const second = await ctl.runPartition();
    expect(second!.result.members).toEqual(first!.result.members);
  }, 60000);

  it("lowering te never shrinks the predicted edge count", async () => {
    const view = new RecordingView();
    const ctl = new ExplorerController(new ApiClient(BASE), view);
    await ctl.loadGraphs();
    ctl.setSeed(seedLabel);
    let previous = -1;
    for (const te of [0.9, 0.7, 0.5]) {
      ctl.setPanel({ rng: 42, te });
      await ctl.runPartition();
      const forecast = await ctl.toggleForecast();
      const count = forecast!.predicted_edges.length;
      expect(count).toBeGreaterThanOrEqual(previous);
      previous = count;
    }
  }, 120000);

  it("unknown seed labels surface as inline validation", async () => {
    const view = new RecordingView();
    const ctl = new ExplorerController(new ApiClient(BASE), view);
    await ctl.loadGraphs();
    ctl.setSeed("no-such-node");
    const got = await ctl.runPartition();
    expect(got).toBeNull();
    expect(view.inlineErrors.length).toBe(1);
    expect(view.banners).toEqual([]);
  }, 60000);
});
