import { describe, expect, it } from "vitest";

import {
  ViewState,
  fromUrl,
  initialState,
  setBookmarkFilter,
  setMode,
  setSubgraph,
  toUrl,
  toggleLayer,
} from "../src/state.js";

describe("view state", () => {
  it("starts on subgraph 1 with only the base layer", () => {
    const state = initialState("abc12345");
    expect(state.subgraph).toBe(1);
    expect([...state.layers]).toEqual(["c1"]);
    expect(state.mode).toBe("explore");
    expect(state.selectedPpi).toBeNull();
    expect(state.bookmarkFilter.size).toBe(0);
  });

  it("c1 cannot be toggled off", () => {
    let state = initialState("abc12345");
    state = toggleLayer(state, "c1");
    expect(state.layers.has("c1")).toBe(true);
    state = toggleLayer(state, "c2");
    state = toggleLayer(state, "c3");
    state = toggleLayer(state, "c1");
    expect([...state.layers].sort()).toEqual(["c1", "c2", "c3"]);
    state = toggleLayer(state, "c2");
    expect(state.layers.has("c2")).toBe(false);
    expect(state.layers.has("c1")).toBe(true);
  });

  it("changing subgraph closes any open detail", () => {
    let state = initialState("abc12345");
    state = { ...state, selectedPpi: "9606.ENSP1" };
    state = setSubgraph(state, 3);
    expect(state.selectedPpi).toBeNull();
    expect(state.subgraph).toBe(3);
  });

  it("url round trip preserves every field", () => {
    const states: ViewState[] = [
      initialState("abc12345"),
      {
        sessionId: "abc12345",
        subgraph: 4,
        layers: new Set(["c1", "c3"]),
        mode: "bookmark",
        selectedPpi: "9606.ENSP00000261509",
        bookmarkFilter: new Set([3, 1]),
      },
      {
        sessionId: "zz99",
        subgraph: 2,
        layers: new Set(["c1", "c2", "c3"]),
        mode: "explore",
        selectedPpi: null,
        bookmarkFilter: new Set(),
      },
    ];
    for (const state of states) {
      const back = fromUrl(toUrl(state));
      expect(back).not.toBeNull();
      expect(back!.sessionId).toBe(state.sessionId);
      expect(back!.subgraph).toBe(state.subgraph);
      expect([...back!.layers].sort()).toEqual([...state.layers].sort());
      expect(back!.mode).toBe(state.mode);
      expect(back!.selectedPpi).toBe(state.selectedPpi);
      expect([...back!.bookmarkFilter].sort()).toEqual([...state.bookmarkFilter].sort());
    }
  });

  it("restoring from a url always keeps c1 active", () => {
    const restored = fromUrl("?session=abc&subgraph=2&layers=c3&mode=explore");
    expect(restored!.layers.has("c1")).toBe(true);
    expect(restored!.layers.has("c3")).toBe(true);
    expect(restored!.layers.has("c2")).toBe(false);
  });

  it("a url without a session id restores nothing", () => {
    expect(fromUrl("?subgraph=2")).toBeNull();
    expect(fromUrl("")).toBeNull();
  });

  it("mode switch clears the detail selection, filter copies defensively", () => {
    let state = initialState("abc12345");
    state = { ...state, selectedPpi: "x" };
    state = setMode(state, "bookmark");
    expect(state.selectedPpi).toBeNull();
    const filter = new Set([1, 2]);
    state = setBookmarkFilter(state, filter);
    filter.add(9);
    expect(state.bookmarkFilter.has(9)).toBe(false);
  });
});
