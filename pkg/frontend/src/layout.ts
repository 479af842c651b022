/** Deterministic force-directed layout.
 *
 * A small spring-electric simulation with its own seeded PRNG: the same
 * subgraph laid out with the same rng value lands on identical
 * coordinates, so screenshots and tests are reproducible.
 */

import { RenderEdge, RenderNode } from "./types.js";

export interface LayoutNode extends RenderNode {
  x: number;
  y: number;
}

/** mulberry32: tiny deterministic PRNG. */
export function seededRandom(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function layoutGraph(nodes: RenderNode[], edges: RenderEdge[],
                            seed: number, width = 800, height = 600,
                            iterations = 150): LayoutNode[] {
  const rand = seededRandom(seed || 1);
  const n = nodes.length;
  if (n === 0) return [];
  const idx = new Map(nodes.map((node, i) => [node.id, i]));
  const xs = new Float64Array(n);
  const ys = new Float64Array(n);
  for (let i = 0; i < n; i++) {
    xs[i] = (rand() - 0.5) * width * 0.8;
    ys[i] = (rand() - 0.5) * height * 0.8;
  }

  const springLength = Math.min(width, height) / Math.max(3, Math.sqrt(n) * 1.4);
  const repulsion = springLength * springLength;
  let temperature = Math.min(width, height) / 8;

  for (let it = 0; it < iterations; it++) {
    const fx = new Float64Array(n);
    const fy = new Float64Array(n);
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = xs[i] - xs[j];
        let dy = ys[i] - ys[j];
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          dx = rand() - 0.5;
          dy = rand() - 0.5;
          d2 = dx * dx + dy * dy;
        }
        const f = repulsion / d2;
        fx[i] += dx * f;
        fy[i] += dy * f;
        fx[j] -= dx * f;
        fy[j] -= dy * f;
      }
    }
    for (const e of edges) {
      const i = idx.get(e.source);
      const j = idx.get(e.target);
      if (i === undefined || j === undefined) continue;
      const dx = xs[i] - xs[j];
      const dy = ys[i] - ys[j];
      const d = Math.sqrt(dx * dx + dy * dy) || 1e-3;
      // heavier edges pull harder
      const f = (d - springLength) / d * 0.5 * Math.min(e.weight, 2.5);
      fx[i] -= dx * f;
      fy[i] -= dy * f;
      fx[j] += dx * f;
      fy[j] += dy * f;
    }
    for (let i = 0; i < n; i++) {
      const f = Math.sqrt(fx[i] * fx[i] + fy[i] * fy[i]);
      if (f > 1e-9) {
        const scale = Math.min(f, temperature) / f;
        xs[i] += fx[i] * scale;
        ys[i] += fy[i] * scale;
      }
    }
    temperature *= 0.97;
  }

  // centre into the viewport
  const cx = xs.reduce((a, b) => a + b, 0) / n;
  const cy = ys.reduce((a, b) => a + b, 0) / n;
  return nodes.map((node, i) => ({
    ...node,
    x: xs[i] - cx + width / 2,
    y: ys[i] - cy + height / 2,
  }));
}
