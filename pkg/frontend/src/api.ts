/** Typed client for the partition service.
 *
 * One in-flight request per panel: submitting again aborts and replaces
 * the pending call, so a slow run never clobbers a newer one.
 */

import { ForecastParams, ForecastResponse, GraphInfo, NodeInfo,
         PartitionParams, PartitionResponse, ServiceError } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, public stage: string, message: string) {
    super(message);
  }
}

async function parseError(res: Response): Promise<ApiError> {
  let detail: ServiceError = { error: res.statusText, stage: "http" };
  try {
    const body = await res.json();
    if (body && typeof body === "object" && "detail" in body) {
      detail = body.detail as ServiceError;
    }
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(res.status, detail.stage ?? "http", detail.error ?? res.statusText);
}

export class ApiClient {
  private pending = new Map<string, AbortController>();

  constructor(public baseUrl: string,
              private fetchFn: typeof fetch = fetch.bind(globalThis)) {}

  private async request<T>(channel: string, path: string, init?: RequestInit): Promise<T> {
    this.pending.get(channel)?.abort();
    const controller = new AbortController();
    this.pending.set(channel, controller);
    try {
      const res = await this.fetchFn(`${this.baseUrl}${path}`,
                                     { ...init, signal: controller.signal });
      if (!res.ok) {
        throw await parseError(res);
      }
      return (await res.json()) as T;
    } finally {
      if (this.pending.get(channel) === controller) {
        this.pending.delete(channel);
      }
    }
  }

  private post<T>(channel: string, path: string, body: unknown): Promise<T> {
    return this.request<T>(channel, path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  listGraphs(): Promise<GraphInfo[]> {
    return this.request<GraphInfo[]>("graphs", "/graphs");
  }

  nodeInfo(graphId: string, label: string): Promise<NodeInfo> {
    const q = encodeURIComponent(label);
    return this.request<NodeInfo>("node", `/graphs/${graphId}/node?label=${q}`);
  }

  partition(graphId: string, params: PartitionParams): Promise<PartitionResponse> {
    return this.post<PartitionResponse>("partition", `/graphs/${graphId}/partition`, params);
  }

  forecast(graphId: string, params: ForecastParams): Promise<ForecastResponse> {
    return this.post<ForecastResponse>("forecast", `/graphs/${graphId}/forecast`, params);
  }
}
