// Force-directed layout with positions seeded from node id hashes, so the
// same subgraph always lands in the same arrangement (reproducible
// screenshots, stable diffs). No randomness anywhere.

import type { SubgraphView } from "./api.js";

export interface Point {
  x: number;
  y: number;
}

export function hash32(text: string): number {
  let h = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 0x01000193) >>> 0;
  }
  return h >>> 0;
}

function seededUnit(id: string, salt: string): number {
  return hash32(id + "|" + salt) / 0xffffffff;
}

export interface LayoutOptions {
  width?: number;
  height?: number;
  iterations?: number;
}

export function layoutSubgraph(view: SubgraphView, options: LayoutOptions = {}): Map<string, Point> {
  const width = options.width ?? 800;
  const height = options.height ?? 600;
  const iterations = options.iterations ?? 60;

  const ids = [view.center.id, ...view.nodes.map((n) => n.id)];
  const pos = new Map<string, Point>();
  for (const id of ids) {
    pos.set(id, {
      x: (0.1 + 0.8 * seededUnit(id, "x")) * width,
      y: (0.1 + 0.8 * seededUnit(id, "y")) * height,
    });
  }
  // center pinned in the middle; neighbors settle around it
  pos.set(view.center.id, { x: width / 2, y: height / 2 });

  const springs = view.edges.map((e) => [e.a, e.b] as const);
  const k = Math.sqrt((width * height) / Math.max(ids.length, 1));

  for (let step = 0; step < iterations; step++) {
    const disp = new Map<string, Point>(ids.map((id) => [id, { x: 0, y: 0 }]));
    for (let i = 0; i < ids.length; i++) {
      for (let j = i + 1; j < ids.length; j++) {
        const a = pos.get(ids[i])!;
        const b = pos.get(ids[j])!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let dist = Math.sqrt(dx * dx + dy * dy);
        if (dist < 1e-6) {
          // deterministic nudge for coincident seeds
          dx = ((hash32(ids[i]) % 7) - 3) || 1;
          dy = ((hash32(ids[j]) % 7) - 3) || 1;
          dist = Math.sqrt(dx * dx + dy * dy);
        }
        const force = (k * k) / dist;
        const da = disp.get(ids[i])!;
        const db = disp.get(ids[j])!;
        da.x += (dx / dist) * force;
        da.y += (dy / dist) * force;
        db.x -= (dx / dist) * force;
        db.y -= (dy / dist) * force;
      }
    }
    for (const [a, b] of springs) {
      const pa = pos.get(a);
      const pb = pos.get(b);
      if (!pa || !pb) continue;
      const dx = pa.x - pb.x;
      const dy = pa.y - pb.y;
      const dist = Math.max(Math.sqrt(dx * dx + dy * dy), 1e-6);
      const force = (dist * dist) / k;
      const da = disp.get(a)!;
      const db = disp.get(b)!;
      da.x -= (dx / dist) * force;
      da.y -= (dy / dist) * force;
      db.x += (dx / dist) * force;
      db.y += (dy / dist) * force;
    }
    const temperature = (width / 10) * (1 - step / iterations);
    for (const id of ids) {
      if (id === view.center.id) continue; // keep the anchor
      const d = disp.get(id)!;
      const len = Math.max(Math.sqrt(d.x * d.x + d.y * d.y), 1e-6);
      const p = pos.get(id)!;
      p.x += (d.x / len) * Math.min(len, temperature);
      p.y += (d.y / len) * Math.min(len, temperature);
      p.x = Math.min(width - 20, Math.max(20, p.x));
      p.y = Math.min(height - 20, Math.max(20, p.y));
    }
  }
  return pos;
}
