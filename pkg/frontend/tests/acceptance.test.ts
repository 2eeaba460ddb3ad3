import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { Controller } from "../src/controller.js";
import { buildScene, sceneToSvg, EdgeShape, NodeShape } from "../src/render.js";
import { makeStubServer, makeThreeViewServer, mulberry32, randomSubgraphView } from "./helpers.js";

function memberIds(controller: Controller): Set<string> {
  return new Set((controller.view?.nodes ?? []).map((n) => n.id));
}

describe("slider switches subgraphs", () => {
  it("moving the slider swaps in a node set with zero overlap", async () => {
    const { server } = makeThreeViewServer();
    const controller = new Controller(new ApiClient("", server.fetchFn), "stub-session-1");
    await controller.refresh();
    const first = memberIds(controller);
    expect(first.size).toBe(8);
    expect(controller.view?.index).toBe(1);

    await controller.moveSlider(2);
    const second = memberIds(controller);
    expect(controller.view?.index).toBe(2);
    expect(second.size).toBe(8);
    for (const id of second) expect(first.has(id)).toBe(false);

    await controller.moveSlider(3);
    const third = memberIds(controller);
    expect(controller.view?.index).toBe(3);
    for (const id of third) {
      expect(first.has(id)).toBe(false);
      expect(second.has(id)).toBe(false);
    }

    // center stays the same node across positions
    expect(controller.view?.center.id).toBe("center-id");
  });

  it("slider moves are recorded as view events", async () => {
    const { server } = makeThreeViewServer();
    const controller = new Controller(new ApiClient("", server.fetchFn), "stub-session-1");
    await controller.refresh();
    await controller.moveSlider(2);
    await Promise.resolve(); // let the fire-and-forget event land
    const kinds = server.events.map((e) => e.kind);
    expect(kinds).toContain("ViewSubgraph");
  });
});

describe("bookmark round trip", () => {
  it("toggle issues PUT then DELETE and the bookmark-mode count follows", async () => {
    const { server } = makeThreeViewServer();
    const controller = new Controller(new ApiClient("", server.fetchFn), "stub-session-1");
    await controller.refresh();
    const target = controller.view!.nodes[0].id;

    await controller.open(target);
    expect(controller.detail?.bookmarked).toBe(false);

    await controller.toggleBookmark();
    expect(controller.detail?.bookmarked).toBe(true);
    expect(controller.bookmarkCount).toBe(1);
    expect(server.bookmarks.has(target)).toBe(true);
    expect(server.calls).toContain(`PUT /sessions/stub-session-1/bookmarks/${target}`);

    await controller.switchMode("bookmark");
    expect(memberIds(controller).has(target)).toBe(true);
    expect(controller.bookmarkCount).toBe(1);

    await controller.open(target);
    await controller.toggleBookmark();
    expect(controller.detail?.bookmarked).toBe(false);
    expect(controller.bookmarkCount).toBe(0);
    expect(server.bookmarks.size).toBe(0);
    expect(server.calls).toContain(`DELETE /sessions/stub-session-1/bookmarks/${target}`);
    expect(memberIds(controller).size).toBe(0); // bookmark view emptied in place

    const writes = server.calls.filter((c) => c.startsWith("PUT") || c.startsWith("DELETE"));
    expect(writes).toHaveLength(2);
  });
});

describe("legend encodings match server fields", () => {
  // independent copies of the published legend, not imports of the constants
  const WIDTH_OF = { Thin: 1, Medium: 2, Thick: 4 } as const;
  const STROKE_OF = { Red: "#c0392b", Gray: "#95a5a6" } as const;
  const FILL_OF = { Purple: "#8e44ad", Orange: "#e67e22", Pink: "#fd79a8" } as const;
  const PLAIN_FILL = "#d0d3d4";

  it("drawn widths and colors equal the payload fields for 20 random fixtures", () => {
    for (let seed = 0; seed < 20; seed++) {
      const view = randomSubgraphView(mulberry32(1000 + seed), 1, 1, 12);
      const shapes = buildScene(view);

      const edgeShapes = shapes.filter((s): s is EdgeShape => s.kind === "edge");
      expect(edgeShapes).toHaveLength(view.edges.length);
      for (const shape of edgeShapes) {
        const sent = view.edges.find((e) => e.a === shape.a && e.b === shape.b)!;
        expect(shape.strokeWidthPx).toBe(WIDTH_OF[sent.thickness_tier]);
        expect(shape.stroke).toBe(sent.edge_color === "Red" ? STROKE_OF.Red : STROKE_OF.Gray);
        expect(shape.sourceTier).toBe(sent.thickness_tier);
        expect(shape.sourceColor).toBe(sent.edge_color);
      }

      const nodeShapes = shapes.filter((s): s is NodeShape => s.kind === "node" && !s.isCenter);
      expect(nodeShapes).toHaveLength(view.nodes.length);
      for (const shape of nodeShapes) {
        const sent = view.nodes.find((n) => n.id === shape.id)!;
        const expected = sent.node_color ? FILL_OF[sent.node_color] : PLAIN_FILL;
        expect(shape.fill).toBe(expected);
        expect(shape.sourceColor).toBe(sent.node_color);
        expect(shape.label).toBe(sent.symbol);
      }
    }
  });

  it("the rendered svg carries the same widths per tier", () => {
    const view = randomSubgraphView(mulberry32(99), 1, 1, 12);
    const svg = sceneToSvg(buildScene(view));
    for (const tier of ["Thin", "Medium", "Thick"] as const) {
      const sentCount = view.edges.filter((e) => e.thickness_tier === tier).length;
      const drawnCount = svg.split(`stroke-width="${WIDTH_OF[tier]}"`).length - 1;
      expect(drawnCount).toBe(sentCount);
    }
    const redCount = view.edges.filter((e) => e.edge_color === "Red").length;
    expect(svg.split(`stroke="${STROKE_OF.Red}"`).length - 1).toBe(redCount);
  });

  it("a view fetched with c1 only renders without any legend colors", async () => {
    const { server } = makeThreeViewServer();
    const controller = new Controller(new ApiClient("", server.fetchFn), "stub-session-1");
    await controller.refresh(); // default layer set is just c1
    const shapes = buildScene(controller.view!);
    for (const shape of shapes) {
      if (shape.kind === "edge") expect(shape.stroke).toBe(STROKE_OF.Gray);
      if (shape.kind === "node" && !shape.isCenter) expect(shape.fill).toBe(PLAIN_FILL);
    }
  });
});

describe("degraded layers stay visible", () => {
  it("a failed layer renders as a warning badge while the base graph draws", () => {
    const view = randomSubgraphView(mulberry32(5), 1, 1, 6);
    view.layer_status.c3 = { state: "Failed", reason: "affinity provider unreachable" };
    view.nodes.forEach((n) => {
      delete n.node_color;
      delete n.affinity;
    });
    const shapes = buildScene(view);
    const badges = shapes.filter((s) => s.kind === "badge");
    expect(badges).toEqual([
      { kind: "badge", layer: "c3", badge: "warning", reason: "affinity provider unreachable" },
    ]);
    expect(shapes.filter((s) => s.kind === "node")).toHaveLength(7);
  });
});
