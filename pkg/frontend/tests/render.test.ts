import { describe, expect, it } from "vitest";

import { hash32, layoutSubgraph } from "../src/layout.js";
import { buildDetailModel, projectPose } from "../src/detail.js";
import { layerBadges } from "../src/render.js";
import type { PpiDetail, SubgraphView } from "../src/api.js";
import { mulberry32, randomSubgraphView } from "./helpers.js";

describe("layout", () => {
  it("is deterministic for the same view", () => {
    const view = randomSubgraphView(mulberry32(42), 1, 1, 20);
    const a = layoutSubgraph(view);
    const b = layoutSubgraph(view);
    expect(a.size).toBe(21);
    for (const [id, p] of a) {
      expect(b.get(id)).toEqual(p);
    }
  });

  it("pins the center and keeps every node inside the frame", () => {
    const view = randomSubgraphView(mulberry32(43), 1, 1, 30);
    const pos = layoutSubgraph(view, { width: 800, height: 600 });
    expect(pos.get("center-id")).toEqual({ x: 400, y: 300 });
    for (const p of pos.values()) {
      expect(p.x).toBeGreaterThanOrEqual(20);
      expect(p.x).toBeLessThanOrEqual(780);
      expect(p.y).toBeGreaterThanOrEqual(20);
      expect(p.y).toBeLessThanOrEqual(580);
    }
  });

  it("gives distinct nodes distinct positions", () => {
    const view = randomSubgraphView(mulberry32(44), 1, 1, 25);
    const pos = layoutSubgraph(view);
    const seen = new Set<string>();
    for (const p of pos.values()) {
      const key = `${p.x.toFixed(3)},${p.y.toFixed(3)}`;
      expect(seen.has(key)).toBe(false);
      seen.add(key);
    }
  });

  it("hash32 is stable and spreads ids", () => {
    expect(hash32("abc")).toBe(hash32("abc"));
    expect(hash32("abc")).not.toBe(hash32("abd"));
    expect(hash32("")).toBe(0x811c9dc5);
  });
});

describe("layer badges", () => {
  it("maps pending to a spinner and failed to a warning with the reason", () => {
    const badges = layerBadges({
      c1: { state: "Ready" },
      c2: { state: "Pending" },
      c3: { state: "Failed", reason: "timeout" },
    });
    expect(badges).toEqual([
      { kind: "badge", layer: "c2", badge: "spinner" },
      { kind: "badge", layer: "c3", badge: "warning", reason: "timeout" },
    ]);
  });

  it("is empty when every layer is ready", () => {
    const badges = layerBadges({
      c1: { state: "Ready" },
      c2: { state: "Ready" },
      c3: { state: "Ready" },
    });
    expect(badges).toEqual([]);
  });
});

const BASE_DETAIL: PpiDetail = {
  target: { id: "9606.ENSP1", symbol: "BRSK1" },
  subgraph: 1,
  assessment: {
    target: "9606.ENSP1",
    center: "9606.ENSP0",
    score: 62.5,
    explanation: "BRSK1 regulates MAPT phosphorylation.",
    references: [
      {
        title: "Kinase notes",
        identifier: "tau.txt",
        excerpt: "  BRSK1 phosphorylates tau...  with spacing&<markup> kept  ",
      },
    ],
  },
  bookmarked: false,
};

describe("detail panel model", () => {
  it("keeps reference excerpts byte for byte", () => {
    const model = buildDetailModel(BASE_DETAIL);
    expect(model.references[0].excerpt).toBe(
      "  BRSK1 phosphorylates tau...  with spacing&<markup> kept  ",
    );
    expect(model.references[0].title).toBe("Kinase notes");
    expect(model.explanation).toBe("BRSK1 regulates MAPT phosphorylation.");
    expect(model.score).toBe(62.5);
  });

  it("shows a docking notice when the result is missing", () => {
    const model = buildDetailModel({ ...BASE_DETAIL, docking_status: "failed" });
    expect(model.dockingAvailable).toBe(false);
    expect(model.dockingNotice).toBe("docking unavailable");
    expect(model.poses).toEqual([]);
    expect(model.affinity).toBeNull();
  });

  it("exposes affinity and poses when docking succeeded", () => {
    const model = buildDetailModel({
      ...BASE_DETAIL,
      docking: {
        protein: "9606.ENSP1",
        affinity: -7.2,
        poses: [{ pose_id: 0, confidence: 1, coordinates: [[1, 2, 3]] }],
      },
    });
    expect(model.dockingAvailable).toBe(true);
    expect(model.dockingNotice).toBeNull();
    expect(model.affinity).toBe(-7.2);
    expect(model.poses).toHaveLength(1);
  });
});

describe("pose projection", () => {
  it("is identity on x/y at zero rotation", () => {
    const projected = projectPose(
      { pose_id: 0, confidence: 1, coordinates: [[1, 2, 3], [-4, 5, -6]] },
      { yawDeg: 0, pitchDeg: 0 },
    );
    expect(projected[0].x).toBeCloseTo(1, 12);
    expect(projected[0].y).toBeCloseTo(2, 12);
    expect(projected[0].depth).toBeCloseTo(3, 12);
    expect(projected[1].x).toBeCloseTo(-4, 12);
  });

  it("a quarter yaw turn swaps x and depth", () => {
    const [p] = projectPose(
      { pose_id: 0, confidence: 1, coordinates: [[1, 0, 0]] },
      { yawDeg: 90, pitchDeg: 0 },
    );
    expect(p.x).toBeCloseTo(0, 12);
    expect(p.depth).toBeCloseTo(-1, 12);
  });

  it("rotation preserves distances between atoms", () => {
    const pose = {
      pose_id: 0,
      confidence: 1,
      coordinates: [[0, 0, 0], [1.5, -2.5, 3.5]] as [number, number, number][],
    };
    const flat = projectPose(pose, { yawDeg: 37, pitchDeg: -18 });
    const d3 = (a: { x: number; y: number; depth: number }, b: typeof a) =>
      Math.hypot(a.x - b.x, a.y - b.y, a.depth - b.depth);
    expect(d3(flat[0], flat[1])).toBeCloseTo(Math.hypot(1.5, 2.5, 3.5), 10);
  });
});

describe("fixture generator sanity", () => {
  it("keeps generated views disjoint across indexes", () => {
    const rand = mulberry32(7);
    const views: SubgraphView[] = [1, 2, 3].map((i) => randomSubgraphView(rand, i, 3, 8));
    const all = views.flatMap((v) => v.nodes.map((n) => n.id));
    expect(new Set(all).size).toBe(all.length);
  });
});
