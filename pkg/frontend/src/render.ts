// Turns a server subgraph payload into draw primitives. All visual encodings
// are lookups on server-sent fields; nothing is recomputed client-side.

import type { EdgeView, LayerStatusEntry, NodeView, SubgraphView, LayerName } from "./api.js";
import { layoutSubgraph, Point } from "./layout.js";

export const STROKE_WIDTH_PX = { Thin: 1, Medium: 2, Thick: 4 } as const;

export const EDGE_STROKE = { Red: "#c0392b", Gray: "#95a5a6" } as const;

export const NODE_FILL = {
  Purple: "#8e44ad",
  Orange: "#e67e22",
  Pink: "#fd79a8",
} as const;

const PLAIN_NODE_FILL = "#d0d3d4";
const CENTER_FILL = "#2c3e50";

export interface EdgeShape {
  kind: "edge";
  a: string;
  b: string;
  from: Point;
  to: Point;
  strokeWidthPx: 1 | 2 | 4;
  stroke: string;
  sourceTier: EdgeView["thickness_tier"];
  sourceColor: EdgeView["edge_color"];
}

export interface NodeShape {
  kind: "node";
  id: string;
  label: string;
  at: Point;
  fill: string;
  isCenter: boolean;
  sourceColor: NodeView["node_color"];
}

export interface BadgeShape {
  kind: "badge";
  layer: LayerName;
  badge: "spinner" | "warning";
  reason?: string;
}

export type Shape = EdgeShape | NodeShape | BadgeShape;

export function edgeStroke(edge: EdgeView): string {
  return edge.edge_color === "Red" ? EDGE_STROKE.Red : EDGE_STROKE.Gray;
}

export function nodeFill(node: NodeView): string {
  return node.node_color ? NODE_FILL[node.node_color] : PLAIN_NODE_FILL;
}

export function layerBadges(status: Record<LayerName, LayerStatusEntry>): BadgeShape[] {
  const badges: BadgeShape[] = [];
  for (const layer of ["c1", "c2", "c3"] as LayerName[]) {
    const entry = status[layer];
    if (!entry) continue;
    if (entry.state === "Pending") badges.push({ kind: "badge", layer, badge: "spinner" });
    if (entry.state === "Failed") {
      badges.push({ kind: "badge", layer, badge: "warning", reason: entry.reason });
    }
  }
  return badges;
}

export function buildScene(view: SubgraphView): Shape[] {
  const positions = layoutSubgraph(view);
  const shapes: Shape[] = [];
  for (const edge of view.edges) {
    const from = positions.get(edge.a);
    const to = positions.get(edge.b);
    if (!from || !to) continue;
    shapes.push({
      kind: "edge",
      a: edge.a,
      b: edge.b,
      from,
      to,
      strokeWidthPx: STROKE_WIDTH_PX[edge.thickness_tier],
      stroke: edgeStroke(edge),
      sourceTier: edge.thickness_tier,
      sourceColor: edge.edge_color,
    });
  }
  shapes.push({
    kind: "node",
    id: view.center.id,
    label: view.center.symbol,
    at: positions.get(view.center.id)!,
    fill: CENTER_FILL,
    isCenter: true,
    sourceColor: undefined,
  });
  for (const node of view.nodes) {
    shapes.push({
      kind: "node",
      id: node.id,
      label: node.symbol,
      at: positions.get(node.id)!,
      fill: nodeFill(node),
      isCenter: false,
      sourceColor: node.node_color,
    });
  }
  shapes.push(...layerBadges(view.layer_status));
  return shapes;
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

export function sceneToSvg(shapes: Shape[], width = 800, height = 600): string {
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}">`,
  ];
  for (const shape of shapes) {
    if (shape.kind === "edge") {
      parts.push(
        `<line x1="${shape.from.x.toFixed(1)}" y1="${shape.from.y.toFixed(1)}" ` +
          `x2="${shape.to.x.toFixed(1)}" y2="${shape.to.y.toFixed(1)}" ` +
          `stroke="${shape.stroke}" stroke-width="${shape.strokeWidthPx}" />`,
      );
    } else if (shape.kind === "node") {
      const r = shape.isCenter ? 14 : 9;
      parts.push(
        `<circle cx="${shape.at.x.toFixed(1)}" cy="${shape.at.y.toFixed(1)}" r="${r}" fill="${shape.fill}" />` +
          `<text x="${shape.at.x.toFixed(1)}" y="${(shape.at.y - r - 3).toFixed(1)}" ` +
          `font-size="10" text-anchor="middle">${esc(shape.label)}</text>`,
      );
    }
  }
  parts.push("</svg>");
  return parts.join("\n");
}
