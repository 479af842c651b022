/** DOM bootstrap: binds the controller to the page. */

import { ApiClient } from "./api.js";
import { ExplorerController, ExplorerView, MetricsView } from "./controller.js";
import { DEFAULTS, PanelValues } from "./params.js";
import { Deltas } from "./state.js";
import { drawGraph, drawSparkline, renderDeltas, renderMetrics } from "./render.js";
import { ForecastResponse, GraphInfo, PartitionResponse } from "./types.js";

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

class DomView implements ExplorerView {
  graphSelect = byId<HTMLSelectElement>("graph-select");
  svg = byId<HTMLElement>("graph-canvas") as unknown as SVGSVGElement;
  spark = byId<HTMLElement>("sparkline") as unknown as SVGSVGElement;
  metrics = byId<HTMLDivElement>("metrics");
  deltas = byId<HTMLDivElement>("deltas");
  inlineError = byId<HTMLDivElement>("inline-error");
  banner = byId<HTMLDivElement>("error-banner");
  forecastBtn = byId<HTMLButtonElement>("forecast-btn");
  history = byId<HTMLUListElement>("history");

  constructor(private controller: () => ExplorerController) {}

  private clearErrors(): void {
    this.inlineError.textContent = "";
    this.banner.textContent = "";
    this.banner.classList.add("hidden");
  }

  private renderHistory(): void {
    this.history.replaceChildren();
    for (const run of this.controller().state.runs) {
      const li = document.createElement("li");
      li.textContent = `${run.kind} @ ${run.seed} (rng ${run.rng}): ` +
        `${run.members.length} members, phi ${run.conductance.toFixed(4)}`;
      li.addEventListener("click", () => {
        byId<HTMLInputElement>("seed-input").value = run.seed;
        this.controller().setSeed(run.seed);
      });
      this.history.appendChild(li);
    }
  }

  showGraphs(graphs: GraphInfo[]): void {
    this.graphSelect.replaceChildren();
    for (const g of graphs) {
      const opt = document.createElement("option");
      opt.value = g.id;
      opt.textContent = `${g.name} (${g.n} nodes, ${g.m} edges)`;
      this.graphSelect.appendChild(opt);
    }
  }

  showPartition(response: PartitionResponse, metrics: MetricsView): void {
    this.clearErrors();
    const rng = this.controller().state.panel.rng;
    drawGraph(this.svg, response, rng, (label) => this.pick(label));
    drawSparkline(this.spark, metrics.sparkline);
    renderMetrics(this.metrics, metrics);
    this.deltas.replaceChildren();
    this.renderHistory();
  }

  showForecast(response: ForecastResponse, metrics: MetricsView, deltas: Deltas): void {
    this.clearErrors();
    const plain = this.controller().state.lastPartition;
    const rng = this.controller().state.panel.rng;
    if (plain) {
      drawGraph(this.svg, plain, rng, (label) => this.pick(label), response);
    }
    drawSparkline(this.spark, metrics.sparkline);
    renderMetrics(this.metrics, metrics);
    renderDeltas(this.deltas, deltas);
    this.renderHistory();
  }

  showInlineError(message: string): void {
    this.inlineError.textContent = message;
  }

  showErrorBanner(stage: string, message: string): void {
    this.banner.textContent = `[${stage}] ${message}`;
    this.banner.classList.remove("hidden");
  }

  setForecastEnabled(enabled: boolean): void {
    this.forecastBtn.disabled = !enabled;
  }

  private pick(label: string): void {
    byId<HTMLInputElement>("seed-input").value = label;
    this.controller().setSeed(label);
    void this.controller().runPartition();
  }
}

function readPanel(): Partial<PanelValues> {
  const num = (id: string) => parseFloat(byId<HTMLInputElement>(id).value);
  return {
    phi: num("phi"), alpha_n: num("alpha-n"), alpha_r: num("alpha-r"),
    ts: num("ts"), te: num("te"), nw: num("nw"), ns: num("ns"), rng: num("rng"),
  };
}

function bindSliderLabels(): void {
  for (const id of ["phi", "alpha-n", "alpha-r", "ts", "te"]) {
    const input = byId<HTMLInputElement>(id);
    const label = byId<HTMLSpanElement>(`${id}-value`);
    const update = () => { label.textContent = input.value; };
    input.addEventListener("input", update);
    update();
  }
}

export function start(): void {
  const base = byId<HTMLInputElement>("api-base").value || "http://127.0.0.1:8000";
  const api = new ApiClient(base);
  let controller: ExplorerController;
  const view = new DomView(() => controller);
  controller = new ExplorerController(api, view, DEFAULTS);

  byId<HTMLButtonElement>("run-btn").addEventListener("click", () => {
    controller.setPanel(readPanel());
    controller.setSeed(byId<HTMLInputElement>("seed-input").value);
    controller.selectGraph(byId<HTMLSelectElement>("graph-select").value);
    void controller.runPartition();
  });
  byId<HTMLButtonElement>("forecast-btn").addEventListener("click", () => {
    controller.setPanel(readPanel());
    void controller.toggleForecast();
  });
  byId<HTMLButtonElement>("connect-btn").addEventListener("click", () => {
    api.baseUrl = byId<HTMLInputElement>("api-base").value;
    void controller.loadGraphs().catch((err) =>
      view.showErrorBanner("connect", String(err)));
  });

  bindSliderLabels();
  view.setForecastEnabled(false);
  void controller.loadGraphs().catch((err) =>
    view.showErrorBanner("connect", String(err)));
}

start();
