// Typed client for the exploration service. The UI never derives scores or
// tiers itself; everything drawn comes verbatim from these payloads.

export type ThicknessTier = "Thin" | "Medium" | "Thick";
export type EdgeColor = "Red" | "Gray";
export type NodeColor = "Purple" | "Orange" | "Pink";
export type LayerState = "Ready" | "Pending" | "Failed";
export type LayerName = "c1" | "c2" | "c3";

export interface NodeView {
  id: string;
  symbol: string;
  affinity?: number;
  node_color?: NodeColor;
}

export interface EdgeView {
  a: string;
  b: string;
  combined_score: number;
  thickness_tier: ThicknessTier;
  pathway_score?: number;
  edge_color?: EdgeColor;
}

export interface LayerStatusEntry {
  state: LayerState;
  reason?: string;
}

export interface SubgraphView {
  index: number;
  center: { id: string; symbol: string };
  nodes: NodeView[];
  edges: EdgeView[];
  layer_status: Record<LayerName, LayerStatusEntry>;
  subgraph_count: number;
  bookmarks?: string[];
}

export interface Reference {
  title: string;
  identifier: string;
  excerpt: string;
}

export interface Assessment {
  target: string;
  center: string;
  score: number;
  explanation: string;
  references: Reference[];
}

export interface Pose {
  pose_id: number;
  confidence: number;
  coordinates: [number, number, number][];
}

export interface DockingResult {
  protein: string;
  affinity: number;
  poses: Pose[];
}

export interface PpiDetail {
  target: { id: string; symbol: string };
  subgraph: number;
  assessment: Assessment;
  docking?: DockingResult;
  docking_status?: "failed";
  bookmarked: boolean;
}

export interface SessionInfo {
  session_id: string;
  center: string;
  center_symbol: string;
  subgraph_count: number;
  bookmarks: string[];
  event_count: number;
}

export interface ApiErrorBody {
  code: string;
  message: string;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export type FetchFn = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  // pending GETs keyed by URL so duplicate requests share one round trip
  private inflight = new Map<string, Promise<unknown>>();

  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchFn = (...args) => globalThis.fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) init.body = JSON.stringify(body);
    const response = await this.fetchFn(this.base + path, init);
    const payload = await response.json();
    if (!response.ok) {
      const err = payload as ApiErrorBody;
      throw new ApiError(response.status, err.code ?? "Internal", err.message ?? "request failed");
    }
    return payload as T;
  }

  private get<T>(path: string): Promise<T> {
    const pending = this.inflight.get(path);
    if (pending) return pending as Promise<T>;
    const promise = this.request<T>("GET", path).finally(() => this.inflight.delete(path));
    this.inflight.set(path, promise);
    return promise;
  }

  getSession(sessionId: string): Promise<SessionInfo> {
    return this.get(`/sessions/${sessionId}`);
  }

  getSubgraph(sessionId: string, n: number, layers: LayerName[], refresh = false): Promise<SubgraphView> {
    const params = new URLSearchParams({ layers: layers.join(",") });
    if (refresh) params.set("refresh", "true");
    return this.get(`/sessions/${sessionId}/subgraphs/${n}?${params}`);
  }

  getDetail(sessionId: string, target: string): Promise<PpiDetail> {
    return this.get(`/sessions/${sessionId}/ppi/${encodeURIComponent(target)}`);
  }

  putBookmark(sessionId: string, target: string): Promise<{ target: string; bookmarked: boolean }> {
    return this.request("PUT", `/sessions/${sessionId}/bookmarks/${encodeURIComponent(target)}`);
  }

  deleteBookmark(sessionId: string, target: string): Promise<{ target: string; bookmarked: boolean }> {
    return this.request("DELETE", `/sessions/${sessionId}/bookmarks/${encodeURIComponent(target)}`);
  }

  getBookmarks(sessionId: string, filter?: Set<number>): Promise<SubgraphView> {
    let path = `/sessions/${sessionId}/bookmarks`;
    if (filter && filter.size > 0) {
      path += `?subgraphs=${[...filter].sort((a, b) => a - b).join(",")}`;
    }
    return this.get(path);
  }

  postEvent(sessionId: string, kind: string, payload: Record<string, unknown> = {}, text?: string): Promise<{ seq: number }> {
    return this.request("POST", `/sessions/${sessionId}/events`, { kind, payload, text });
  }
}
