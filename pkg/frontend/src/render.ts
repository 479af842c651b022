/** SVG node-link rendering of a partition response. */

import { layoutGraph } from "./layout.js";
import { MetricsView } from "./controller.js";
import { Deltas } from "./state.js";
import { ForecastResponse, PartitionResponse } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function el<K extends keyof SVGElementTagNameMap>(tag: K,
    attrs: Record<string, string | number>): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) {
    node.setAttribute(k, String(v));
  }
  return node;
}

export function drawGraph(svg: SVGSVGElement, response: PartitionResponse,
                          rng: number, onPick: (label: string) => void,
                          forecast?: ForecastResponse): void {
  svg.replaceChildren();
  const width = svg.clientWidth || 800;
  const height = svg.clientHeight || 600;
  const { nodes, edges } = response.subgraph;
  const placed = layoutGraph(nodes, edges, rng, width, height);
  const pos = new Map(placed.map((n) => [n.id, n]));

  const edgeLayer = el("g", { class: "edges" });
  for (const e of edges) {
    const a = pos.get(e.source);
    const b = pos.get(e.target);
    if (!a || !b) continue;
    edgeLayer.appendChild(el("line", {
      x1: a.x, y1: a.y, x2: b.x, y2: b.y,
      class: e.structural ? "edge" : "edge predicted",
      "stroke-width": Math.max(0.6, e.weight),
    }));
  }
  // forecast-only predicted links get their own styling on top
  if (forecast) {
    for (const p of forecast.predicted_edges) {
      const a = pos.get(p.source);
      const b = pos.get(p.target);
      if (!a || !b) continue;
      edgeLayer.appendChild(el("line", {
        x1: a.x, y1: a.y, x2: b.x, y2: b.y,
        class: "edge predicted",
        "stroke-width": Math.max(0.6, p.weight),
      }));
    }
  }
  svg.appendChild(edgeLayer);

  const gained = new Set(forecast ? forecast.result.members : []);
  const seedLabel = response.result.seed;
  const nodeLayer = el("g", { class: "nodes" });
  for (const n of placed) {
    const classes = ["node"];
    if (n.member) classes.push("member");
    if (forecast && gained.has(n.label) && !n.member) classes.push("gained");
    if (forecast && !gained.has(n.label) && n.member) classes.push("lost");
    if (n.label === seedLabel) classes.push("seed");
    const circle = el("circle", {
      cx: n.x, cy: n.y, r: n.label === seedLabel ? 9 : 6,
      class: classes.join(" "),
      "data-label": n.label,
    });
    circle.addEventListener("click", () => onPick(n.label));
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = n.label;
    circle.appendChild(title);
    nodeLayer.appendChild(circle);
  }
  svg.appendChild(nodeLayer);
}

export function drawSparkline(svg: SVGSVGElement, points: [number, number][]): void {
  svg.replaceChildren();
  if (points.length === 0) return;
  const w = svg.clientWidth || 160;
  const h = svg.clientHeight || 40;
  const path = points
    .map(([x, y], i) => `${i === 0 ? "M" : "L"}${(x * (w - 4) + 2).toFixed(1)},${((1 - y) * (h - 4) + 2).toFixed(1)}`)
    .join(" ");
  svg.appendChild(el("path", { d: path, class: "sparkline" }));
}

export function renderMetrics(container: HTMLElement, metrics: MetricsView): void {
  const fmt = (x: number | null) => (x === null ? "n/a" : x.toFixed(4));
  container.replaceChildren();
  const rows: [string, string][] = [
    ["parallel conductance", fmt(metrics.parallelConductance)],
    ["traditional conductance", fmt(metrics.traditionalConductance)],
    ["density", fmt(metrics.density)],
    ["members", String(metrics.members)],
    ["subgraph nodes", String(metrics.subgraphNodes)],
    ["met target", metrics.metTarget ? "yes" : "no"],
  ];
  for (const [k, v] of rows) {
    const div = document.createElement("div");
    div.className = "metric";
    div.innerHTML = `<span class="k">${k}</span><span class="v">${v}</span>`;
    container.appendChild(div);
  }
}

export function renderDeltas(container: HTMLElement, deltas: Deltas): void {
  container.replaceChildren();
  const line = (text: string) => {
    const div = document.createElement("div");
    div.textContent = text;
    container.appendChild(div);
  };
  line(`vertex delta: ${deltas.vertexDelta >= 0 ? "+" : ""}${deltas.vertexDelta}`);
  line(`edge delta: ${deltas.edgeDelta >= 0 ? "+" : ""}${deltas.edgeDelta}`);
  if (deltas.gained.length) line(`gained: ${deltas.gained.join(", ")}`);
  if (deltas.lost.length) line(`lost: ${deltas.lost.join(", ")}`);
}
