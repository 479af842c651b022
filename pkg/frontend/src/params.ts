/** Parameter panel model: defaults, valid ranges, and clamping.
 *
 * Every value is clamped before a request leaves the client, so the
 * service never sees an out-of-range knob from the UI.
 */

import { ForecastParams } from "./types.js";

export interface PanelValues {
  phi: number;
  alpha_n: number;
  alpha_r: number;
  ts: number;
  te: number;
  nw: number;
  ns: number;
  rng: number;
}

export const DEFAULTS: PanelValues = {
  phi: 0.2,
  alpha_n: 0.2,
  alpha_r: 0.15,
  ts: 2.0,
  te: 0.7,
  nw: 10000,
  ns: 200,
  rng: 42,
};

const EPS = 1e-6;

function clampOpen01(x: number): number {
  // open interval (0, 1)
  if (!Number.isFinite(x)) return 0.5;
  return Math.min(1 - EPS, Math.max(EPS, x));
}

function clampHalfOpen01(x: number): number {
  // half-open interval (0, 1]
  if (!Number.isFinite(x)) return 1;
  return Math.min(1, Math.max(EPS, x));
}

function clampPositiveInt(x: number, fallback: number): number {
  if (!Number.isFinite(x)) return fallback;
  return Math.max(1, Math.round(x));
}

export function clampPanel(raw: Partial<PanelValues>): PanelValues {
  const merged = { ...DEFAULTS, ...raw };
  return {
    phi: clampOpen01(merged.phi),
    alpha_n: clampOpen01(merged.alpha_n),
    alpha_r: clampOpen01(merged.alpha_r),
    ts: Number.isFinite(merged.ts) && merged.ts > 0 ? merged.ts : DEFAULTS.ts,
    te: clampHalfOpen01(merged.te),
    nw: clampPositiveInt(merged.nw, DEFAULTS.nw),
    ns: clampPositiveInt(merged.ns, DEFAULTS.ns),
    rng: Number.isFinite(merged.rng) ? Math.round(merged.rng) : DEFAULTS.rng,
  };
}

export function toRequest(seed: string, panel: PanelValues): ForecastParams {
  const p = clampPanel(panel);
  return {
    seed,
    phi: p.phi,
    alpha_n: p.alpha_n,
    alpha_r: p.alpha_r,
    ts: p.ts,
    te: p.te,
    nw: p.nw,
    ns: p.ns,
    rng: p.rng,
  };
}

/** True when the response's resolved parameters echo what was sent. */
export function paramsRoundTrip(sent: ForecastParams,
                                echoed: Record<string, unknown>): boolean {
  return Object.entries(sent).every(([k, v]) => {
    const got = echoed[k];
    if (typeof v === "number" && typeof got === "number") {
      return Math.abs(got - v) < 1e-9;
    }
    return got === undefined || got === v;
  });
}
