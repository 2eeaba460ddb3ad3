// Orchestration between view state, the API client, and whatever renders the
// result. Kept DOM-free so the whole flow is testable against a stubbed
// fetch; app.ts binds this to actual elements.

import { ApiClient, LayerName, PpiDetail, SubgraphView } from "./api.js";
import {
  Mode,
  ViewState,
  closeDetail,
  initialState,
  openDetail,
  setBookmarkFilter,
  setMode,
  setSubgraph,
  toggleLayer,
} from "./state.js";

export interface ControllerSnapshot {
  state: ViewState;
  view: SubgraphView | null; // whatever should be on screen right now
  detail: PpiDetail | null;
  bookmarkCount: number;
  retryBanner: boolean; // last fetch failed; cached view retained
}

export class Controller {
  state: ViewState;
  view: SubgraphView | null = null;
  detail: PpiDetail | null = null;
  bookmarkCount = 0;
  retryBanner = false;
  private viewCache = new Map<number, SubgraphView>();

  constructor(
    private readonly api: ApiClient,
    sessionId: string,
    restored?: ViewState,
  ) {
    this.state = restored ?? initialState(sessionId);
  }

  snapshot(): ControllerSnapshot {
    return {
      state: this.state,
      view: this.view,
      detail: this.detail,
      bookmarkCount: this.bookmarkCount,
      retryBanner: this.retryBanner,
    };
  }

  private activeLayers(): LayerName[] {
    return (["c1", "c2", "c3"] as LayerName[]).filter((l) => this.state.layers.has(l));
  }

  private logEvent(kind: string, payload: Record<string, unknown>): void {
    // session history is best-effort from the client side; the server stays
    // the authority for anything that matters
    void this.api.postEvent(this.state.sessionId, kind, payload).catch(() => undefined);
  }

  async refresh(recompute = false): Promise<void> {
    if (this.state.mode === "bookmark") {
      await this.refreshBookmarkView();
      return;
    }
    try {
      const view = await this.api.getSubgraph(
        this.state.sessionId,
        this.state.subgraph,
        this.activeLayers(),
        recompute,
      );
      this.viewCache.set(this.state.subgraph, view);
      this.view = view;
      this.retryBanner = false;
    } catch {
      // keep whatever we had for this subgraph; surface a retry banner
      this.view = this.viewCache.get(this.state.subgraph) ?? this.view;
      this.retryBanner = true;
    }
  }

  private async refreshBookmarkView(): Promise<void> {
    try {
      const view = await this.api.getBookmarks(this.state.sessionId, this.state.bookmarkFilter);
      this.view = view;
      this.bookmarkCount = view.bookmarks?.length ?? 0;
      this.retryBanner = false;
    } catch {
      this.retryBanner = true;
    }
  }

  async moveSlider(n: number): Promise<void> {
    this.state = setSubgraph(this.state, n);
    this.detail = null;
    this.logEvent("ViewSubgraph", { index: n });
    await this.refresh();
  }

  async setLayer(layer: LayerName): Promise<void> {
    const before = this.state.layers.has(layer);
    this.state = toggleLayer(this.state, layer);
    const after = this.state.layers.has(layer);
    if (before !== after) this.logEvent("ToggleLayer", { layer: layer.toUpperCase(), active: after });
    await this.refresh();
  }

  async switchMode(mode: Mode): Promise<void> {
    this.state = setMode(this.state, mode);
    this.detail = null;
    await this.refresh();
  }

  async setFilter(filter: Set<number>): Promise<void> {
    this.state = setBookmarkFilter(this.state, filter);
    if (this.state.mode === "bookmark") await this.refreshBookmarkView();
  }

  async open(target: string): Promise<void> {
    try {
      const detail = await this.api.getDetail(this.state.sessionId, target);
      this.state = openDetail(this.state, target);
      this.detail = detail;
      this.logEvent("OpenDetail", { target: detail.target.id });
    } catch {
      // unknown target: close with notice rather than leaving a stale panel
      this.state = closeDetail(this.state);
      this.detail = null;
    }
  }

  close(): void {
    this.state = closeDetail(this.state);
    this.detail = null;
  }

  /** Bookmark toggle takes the server's answer as truth, then refreshes the
   * count from the bookmark listing (no optimistic state). */
  async toggleBookmark(): Promise<void> {
    if (!this.detail) return;
    const target = this.detail.target.id;
    const response = this.detail.bookmarked
      ? await this.api.deleteBookmark(this.state.sessionId, target)
      : await this.api.putBookmark(this.state.sessionId, target);
    this.detail = { ...this.detail, bookmarked: response.bookmarked };
    const listing = await this.api.getBookmarks(this.state.sessionId);
    this.bookmarkCount = listing.bookmarks?.length ?? 0;
    if (this.state.mode === "bookmark") await this.refreshBookmarkView();
  }
}
