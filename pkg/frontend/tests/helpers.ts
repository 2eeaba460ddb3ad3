// In-memory stand-in for the HTTP service, faithful to the JSON contract the
// client consumes: disjoint subgraph views, idempotent bookmark PUT/DELETE,
// detail payloads, and an event sink.

import type {
  EdgeView,
  FetchFn,
  NodeView,
  PpiDetail,
  SubgraphView,
} from "../src/api.js";

export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

const TIERS = ["Thin", "Medium", "Thick"] as const;
const NODE_COLORS = ["Purple", "Orange", "Pink"] as const;

export function randomSubgraphView(
  rand: () => number,
  index: number,
  subgraphCount: number,
  nNodes: number,
): SubgraphView {
  const center = { id: "center-id", symbol: "MAPT" };
  const nodes: NodeView[] = [];
  const edges: EdgeView[] = [];
  for (let i = 0; i < nNodes; i++) {
    const id = `g${index}-${i}`; // per-view namespaces keep views disjoint
    const node: NodeView = { id, symbol: `SYM${index}X${i}` };
    if (rand() < 0.5) {
      node.node_color = NODE_COLORS[Math.floor(rand() * 3)];
      node.affinity = -(rand() * 15);
    }
    nodes.push(node);
    const edge: EdgeView = {
      a: center.id,
      b: id,
      combined_score: Math.floor(rand() * 1001),
      thickness_tier: TIERS[Math.floor(rand() * 3)],
    };
    if (rand() < 0.5) {
      const score = rand() < 0.3 ? 0 : rand() * 100;
      edge.pathway_score = score;
      edge.edge_color = score > 0 ? "Red" : "Gray";
    }
    edges.push(edge);
  }
  return {
    index,
    center,
    nodes,
    edges,
    layer_status: {
      c1: { state: "Ready" },
      c2: { state: "Ready" },
      c3: { state: "Ready" },
    },
    subgraph_count: subgraphCount,
  };
}

export interface StubServer {
  fetchFn: FetchFn;
  calls: string[]; // "METHOD path" per request, in order
  bookmarks: Set<string>;
  events: { kind: string; payload: unknown; text?: string }[];
  failNext: { count: number }; // make the next N requests fail at the network level
}

function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function notFound(message: string): Response {
  return json({ code: "NotFound", message }, 404);
}

export function makeStubServer(subgraphs: SubgraphView[], sessionId = "stub-session-1"): StubServer {
  const bookmarks = new Set<string>();
  const events: StubServer["events"] = [];
  const calls: string[] = [];
  const failNext = { count: 0 };
  const membership = new Map<string, number>();
  for (const view of subgraphs) {
    for (const node of view.nodes) membership.set(node.id, view.index);
  }
  const center = subgraphs[0].center;

  function bookmarkView(filter: Set<number> | null): SubgraphView {
    const kept = [...bookmarks]
      .filter((id) => filter === null || filter.has(membership.get(id) ?? -1))
      .sort();
    const nodeOf = new Map<string, NodeView>();
    for (const view of subgraphs) for (const n of view.nodes) nodeOf.set(n.id, n);
    return {
      index: 0,
      center,
      nodes: kept.map((id) => nodeOf.get(id)!),
      edges: kept.map((id) => ({
        a: center.id,
        b: id,
        combined_score: 500,
        thickness_tier: "Medium",
      })),
      layer_status: {
        c1: { state: "Ready" },
        c2: { state: "Pending" },
        c3: { state: "Pending" },
      },
      subgraph_count: subgraphs.length,
      bookmarks: [...bookmarks].sort(),
    };
  }

  const fetchFn: FetchFn = async (url, init) => {
    const method = init?.method ?? "GET";
    const [path, query = ""] = url.split("?");
    calls.push(`${method} ${path}${query ? "?" + query : ""}`);
    if (failNext.count > 0) {
      failNext.count -= 1;
      throw new TypeError("network down");
    }
    const params = new URLSearchParams(query);
    const parts = path.split("/").filter(Boolean);
    // /sessions/{sid}/...
    if (parts[0] !== "sessions" || parts[1] !== sessionId) {
      return notFound("unknown session");
    }
    if (parts.length === 2 && method === "GET") {
      return json({
        session_id: sessionId,
        center: center.id,
        center_symbol: center.symbol,
        subgraph_count: subgraphs.length,
        bookmarks: [...bookmarks].sort(),
        event_count: events.length,
      });
    }
    if (parts[2] === "subgraphs" && method === "GET") {
      const n = Number(parts[3]);
      const view = subgraphs.find((s) => s.index === n);
      if (!view) return notFound(`subgraph ${n}`);
      const layers = (params.get("layers") ?? "c1").split(",");
      const copy: SubgraphView = JSON.parse(JSON.stringify(view));
      if (!layers.includes("c2")) {
        copy.edges.forEach((e) => {
          delete e.edge_color;
          delete e.pathway_score;
        });
        copy.layer_status.c2 = { state: "Pending" };
      }
      if (!layers.includes("c3")) {
        copy.nodes.forEach((nd) => {
          delete nd.node_color;
          delete nd.affinity;
        });
        copy.layer_status.c3 = { state: "Pending" };
      }
      return json(copy);
    }
    if (parts[2] === "bookmarks" && parts.length === 3 && method === "GET") {
      const raw = params.get("subgraphs");
      const filter = raw ? new Set(raw.split(",").map(Number)) : null;
      return json(bookmarkView(filter));
    }
    if (parts[2] === "bookmarks" && parts.length === 4) {
      const target = decodeURIComponent(parts[3]);
      if (!membership.has(target)) return notFound(target);
      if (method === "PUT") {
        bookmarks.add(target);
        return json({ target, bookmarked: true });
      }
      if (method === "DELETE") {
        bookmarks.delete(target);
        return json({ target, bookmarked: false });
      }
    }
    if (parts[2] === "ppi" && method === "GET") {
      const target = decodeURIComponent(parts[3]);
      const subgraphIndex = membership.get(target);
      if (subgraphIndex === undefined) return notFound(target);
      const view = subgraphs.find((s) => s.index === subgraphIndex)!;
      const node = view.nodes.find((n) => n.id === target)!;
      const detail: PpiDetail = {
        target: { id: node.id, symbol: node.symbol },
        subgraph: subgraphIndex,
        assessment: {
          target: node.id,
          center: center.id,
          score: 62.5,
          explanation: `${node.symbol} regulates ${center.symbol} phosphorylation.`,
          references: [
            {
              title: "Kinase signaling notes",
              identifier: "tau_kinases.txt",
              excerpt: `  ${node.symbol} phosphorylates ${center.symbol} -- verbatim, spacing kept.  `,
            },
          ],
        },
        bookmarked: bookmarks.has(target),
      };
      if (node.node_color) {
        detail.docking = {
          protein: node.id,
          affinity: node.affinity ?? -1,
          poses: [
            { pose_id: 0, confidence: 1, coordinates: [[0, 0, 0], [1.5, 0, 0]] },
            { pose_id: 1, confidence: 0.5, coordinates: [[0, 2.5, 0], [1.5, 2.5, 0]] },
          ],
        };
      } else {
        detail.docking_status = "failed";
      }
      return json(detail);
    }
    if (parts[2] === "events" && method === "POST") {
      const body = JSON.parse(String(init?.body ?? "{}"));
      events.push(body);
      return json({ seq: events.length, ts: "2026-08-15T00:00:00Z" }, 201);
    }
    return notFound(path);
  };

  return { fetchFn, calls, bookmarks, events, failNext };
}

export function makeThreeViewServer(seed = 7): { server: StubServer; views: SubgraphView[] } {
  const rand = mulberry32(seed);
  const views = [1, 2, 3].map((i) => randomSubgraphView(rand, i, 3, 8));
  return { server: makeStubServer(views), views };
}
