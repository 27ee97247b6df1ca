import type { QuiverJson } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

const ITERATIONS = 120;
const SPRING = 0.08;
const REPEL = 0.9;
const IDEAL = 1.0;

/** Deterministic force-directed layout: vertices start on a circle in
 * index order and relax under fixed-step springs, so the same quiver
 * always renders identically. */
export function layoutQuiver(quiver: QuiverJson): Point[] {
  const total = quiver.n + quiver.frozen;
  const points: Point[] = [];
  for (let i = 0; i < total; i++) {
    const angle = Math.PI / 2 + (2 * Math.PI * i) / total;
    points.push({ x: Math.cos(angle), y: Math.sin(angle) });
  }
  if (total === 1) {
    return [{ x: 0, y: 0 }];
  }
  const adjacent: [number, number][] = quiver.arrows.map(
    ([src, dst]) => [src - 1, dst - 1],
  );
  for (let step = 0; step < ITERATIONS; step++) {
    const force: Point[] = points.map(() => ({ x: 0, y: 0 }));
    for (let i = 0; i < total; i++) {
      for (let j = i + 1; j < total; j++) {
        const pi = points[i]!;
        const pj = points[j]!;
        const dx = pj.x - pi.x;
        const dy = pj.y - pi.y;
        const d2 = Math.max(dx * dx + dy * dy, 1e-4);
        const push = REPEL / d2;
        const d = Math.sqrt(d2);
        force[i]!.x -= (push * dx) / d;
        force[i]!.y -= (push * dy) / d;
        force[j]!.x += (push * dx) / d;
        force[j]!.y += (push * dy) / d;
      }
    }
    for (const [a, b] of adjacent) {
      const pa = points[a]!;
      const pb = points[b]!;
      const dx = pb.x - pa.x;
      const dy = pb.y - pa.y;
      const d = Math.max(Math.sqrt(dx * dx + dy * dy), 1e-2);
      const pull = SPRING * (d - IDEAL);
      force[a]!.x += (pull * dx) / d;
      force[a]!.y += (pull * dy) / d;
      force[b]!.x -= (pull * dx) / d;
      force[b]!.y -= (pull * dy) / d;
    }
    const damp = 0.05;
    for (let i = 0; i < total; i++) {
      points[i]!.x += damp * force[i]!.x;
      points[i]!.y += damp * force[i]!.y;
    }
  }
  // normalize into the unit box around the origin
  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const cx = (Math.min(...xs) + Math.max(...xs)) / 2;
  const cy = (Math.min(...ys) + Math.max(...ys)) / 2;
  const span = Math.max(
    Math.max(...xs) - Math.min(...xs),
    Math.max(...ys) - Math.min(...ys),
    0.5,
  );
  return points.map((p) => ({
    x: (p.x - cx) / span,
    y: (p.y - cy) / span,
  }));
}
