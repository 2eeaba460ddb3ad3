// View state and its URL round trip. Everything needed to restore the screen
// lives in the query string, so views are deep-linkable.

import type { LayerName } from "./api.js";

export type Mode = "explore" | "bookmark";

export interface ViewState {
  sessionId: string;
  subgraph: number;
  layers: Set<LayerName>; // invariant: always contains c1
  mode: Mode;
  selectedPpi: string | null; // non-null iff the detail panel is open
  bookmarkFilter: Set<number>; // empty = show all subgraphs
}

export function initialState(sessionId: string): ViewState {
  return {
    sessionId,
    subgraph: 1,
    layers: new Set<LayerName>(["c1"]),
    mode: "explore",
    selectedPpi: null,
    bookmarkFilter: new Set(),
  };
}

// c1 holds the base graph; toggling it off is not a thing
export function toggleLayer(state: ViewState, layer: LayerName): ViewState {
  const layers = new Set(state.layers);
  if (layer === "c1") return { ...state, layers };
  if (layers.has(layer)) layers.delete(layer);
  else layers.add(layer);
  return { ...state, layers };
}

export function setSubgraph(state: ViewState, n: number): ViewState {
  return { ...state, subgraph: n, selectedPpi: null };
}

export function openDetail(state: ViewState, target: string): ViewState {
  return { ...state, selectedPpi: target };
}

export function closeDetail(state: ViewState): ViewState {
  return { ...state, selectedPpi: null };
}

export function setMode(state: ViewState, mode: Mode): ViewState {
  return { ...state, mode, selectedPpi: null };
}

export function setBookmarkFilter(state: ViewState, filter: Set<number>): ViewState {
  return { ...state, bookmarkFilter: new Set(filter) };
}

const LAYER_ORDER: LayerName[] = ["c1", "c2", "c3"];

export function toUrl(state: ViewState): string {
  const params = new URLSearchParams();
  params.set("session", state.sessionId);
  params.set("subgraph", String(state.subgraph));
  params.set("layers", LAYER_ORDER.filter((l) => state.layers.has(l)).join(","));
  params.set("mode", state.mode);
  if (state.bookmarkFilter.size > 0) {
    params.set("filter", [...state.bookmarkFilter].sort((a, b) => a - b).join(","));
  }
  if (state.selectedPpi !== null) params.set("ppi", state.selectedPpi);
  return "?" + params.toString();
}

export function fromUrl(url: string): ViewState | null {
  const query = url.includes("?") ? url.slice(url.indexOf("?") + 1) : url;
  const params = new URLSearchParams(query);
  const sessionId = params.get("session");
  if (!sessionId) return null;
  const layers = new Set<LayerName>(["c1"]);
  for (const part of (params.get("layers") ?? "c1").split(",")) {
    if (part === "c2" || part === "c3") layers.add(part);
  }
  const filter = new Set<number>();
  for (const part of (params.get("filter") ?? "").split(",")) {
    const n = Number.parseInt(part, 10);
    if (Number.isFinite(n)) filter.add(n);
  }
  const mode = params.get("mode") === "bookmark" ? "bookmark" : "explore";
  const subgraph = Number.parseInt(params.get("subgraph") ?? "1", 10) || 1;
  return {
    sessionId,
    subgraph,
    layers,
    mode,
    selectedPpi: params.get("ppi"),
    bookmarkFilter: filter,
  };
}
