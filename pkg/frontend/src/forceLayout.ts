/** Seeded force-directed layout.
 *
 * Layout is presentation only, computed client-side; the seed makes node
 * positions reproducible for screenshot-stable tests.  Plain
 * repulsion/spring/centering iterations, no external dependencies.
 */

import type { GraphData } from "./types.js";

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
  seed?: number;
}

export interface Point {
  x: number;
  y: number;
}

/** mulberry32: tiny deterministic PRNG, good enough for jittered layouts. */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function computeLayout(graph: GraphData, options: LayoutOptions):
    Map<string, Point> {
  const { width, height } = options;
  const iterations = options.iterations ?? 120;
  const rand = mulberry32(options.seed ?? 42);
  const ids = graph.nodes.map((n) => n.id);
  const index = new Map(ids.map((id, i) => [id, i]));
  const n = ids.length;
  const pos: Point[] = ids.map(() => ({
    x: (rand() - 0.5) * width * 0.8 + width / 2,
    y: (rand() - 0.5) * height * 0.8 + height / 2,
  }));
  if (n === 0) return new Map();

  const area = width * height;
  const k = Math.sqrt(area / n);                 // ideal edge length
  const edges = graph.edges
    .map((e) => ({ a: index.get(e.a), b: index.get(e.b), w: e.weight }))
    .filter((e): e is { a: number; b: number; w: number } =>
      e.a !== undefined && e.b !== undefined);

  let temperature = width / 8;
  const cool = temperature / (iterations + 1);

  for (let step = 0; step < iterations; step++) {
    const disp: Point[] = pos.map(() => ({ x: 0, y: 0 }));
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = pos[i].x - pos[j].x;
        let dy = pos[i].y - pos[j].y;
        let dist = Math.hypot(dx, dy);
        if (dist < 1e-6) {
          dx = 0.01 * (i - j);
          dy = 0.01;
          dist = Math.hypot(dx, dy);
        }
        const force = (k * k) / dist;            // repulsion
        disp[i].x += (dx / dist) * force;
        disp[i].y += (dy / dist) * force;
        disp[j].x -= (dx / dist) * force;
        disp[j].y -= (dy / dist) * force;
      }
    }
    for (const edge of edges) {
      const dx = pos[edge.a].x - pos[edge.b].x;
      const dy = pos[edge.a].y - pos[edge.b].y;
      const dist = Math.max(Math.hypot(dx, dy), 1e-6);
      const force = (dist * dist) / k * Math.min(edge.w, 4) * 0.25;  // spring
      disp[edge.a].x -= (dx / dist) * force;
      disp[edge.a].y -= (dy / dist) * force;
      disp[edge.b].x += (dx / dist) * force;
      disp[edge.b].y += (dy / dist) * force;
    }
    for (let i = 0; i < n; i++) {
      // gentle pull to the center keeps disconnected nodes on screen
      disp[i].x += (width / 2 - pos[i].x) * 0.03;
      disp[i].y += (height / 2 - pos[i].y) * 0.03;
      const magnitude = Math.hypot(disp[i].x, disp[i].y);
      if (magnitude > 1e-9) {
        const limited = Math.min(magnitude, temperature);
        pos[i].x += (disp[i].x / magnitude) * limited;
        pos[i].y += (disp[i].y / magnitude) * limited;
      }
      const margin = 16;
      pos[i].x = Math.min(width - margin, Math.max(margin, pos[i].x));
      pos[i].y = Math.min(height - margin, Math.max(margin, pos[i].y));
    }
    temperature = Math.max(temperature - cool, 0.5);
  }
  return new Map(ids.map((id, i) => [id, pos[i]]));
}
