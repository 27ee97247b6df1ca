import type { Point } from "./layout.js";
import type { SessionState } from "./types.js";

const SIZE = 420;
const RADIUS = 16;

function escapeHtml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function toScreen(p: Point): { x: number; y: number } {
  return {
    x: SIZE / 2 + p.x * SIZE * 0.78,
    y: SIZE / 2 - p.y * SIZE * 0.78,
  };
}

/** SVG for the quiver panel: circles for mutable vertices (clickable via
 * data-vertex), squares for frozen ones, one curve per arrow bundle with
 * a multiplicity label when the weight exceeds 1. */
export function renderQuiver(state: SessionState, layout: Point[]): string {
  const { n, frozen, arrows } = state.quiver;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${SIZE} ${SIZE}" class="quiver">`,
    `<defs><marker id="arrowhead" markerWidth="8" markerHeight="7" refX="7" refY="3.5" orient="auto">` +
      `<polygon points="0 0, 8 3.5, 0 7" fill="#445"/></marker></defs>`,
  );
  for (const [src, dst, weight] of arrows) {
    const a = toScreen(layout[src - 1]!);
    const b = toScreen(layout[dst - 1]!);
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const d = Math.max(Math.hypot(dx, dy), 1e-3);
    const sx = a.x + (dx / d) * RADIUS;
    const sy = a.y + (dy / d) * RADIUS;
    const ex = b.x - (dx / d) * (RADIUS + 6);
    const ey = b.y - (dy / d) * (RADIUS + 6);
    parts.push(
      `<line x1="${sx.toFixed(1)}" y1="${sy.toFixed(1)}" x2="${ex.toFixed(1)}" ` +
        `y2="${ey.toFixed(1)}" stroke="#445" stroke-width="2" marker-end="url(#arrowhead)"/>`,
    );
    if (weight > 1) {
      const mx = (sx + ex) / 2 + (dy / d) * 10;
      const my = (sy + ey) / 2 - (dx / d) * 10;
      parts.push(
        `<text x="${mx.toFixed(1)}" y="${my.toFixed(1)}" class="mult">${weight}</text>`,
      );
    }
  }
  for (let v = 1; v <= n + frozen; v++) {
    const p = toScreen(layout[v - 1]!);
    const label = v <= n ? `x${v}` : `y${v - n}`;
    if (v <= n) {
      parts.push(
        `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="${RADIUS}" ` +
          `class="vertex mutable" data-vertex="${v}"/>`,
      );
    } else {
      parts.push(
        `<rect x="${(p.x - RADIUS).toFixed(1)}" y="${(p.y - RADIUS).toFixed(1)}" ` +
          `width="${2 * RADIUS}" height="${2 * RADIUS}" class="vertex frozen" data-vertex="${v}"/>`,
      );
    }
    parts.push(
      `<text x="${p.x.toFixed(1)}" y="${(p.y + 4).toFixed(1)}" class="vlabel" ` +
        `data-vertex="${v}">${label}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

/** Cluster panel: one row per position, current Laurent expression. */
export function renderCluster(state: SessionState): string {
  const rows = state.cluster.map(
    (v, i) => `<li data-position="${i + 1}"><span class="pos">x${i + 1} =</span> ` +
      `<code>${escapeHtml(v.str)}</code></li>`,
  );
  const coeffs = state.coefficients.length
    ? `<p class="coeffs">coefficients: ${state.coefficients.join(", ")}</p>`
    : "";
  return `<ol class="cluster">${rows.join("")}</ol>${coeffs}`;
}

/** History timeline with per-step jump targets and an undo control. */
export function renderHistory(state: SessionState): string {
  const steps = state.history.map(
    (k, i) =>
      `<li><button data-step="${i + 1}" class="jump">step ${i + 1}: mutate ${k}</button></li>`,
  );
  return [
    `<div class="history">`,
    `<button data-undo="1" class="undo" ${state.history.length ? "" : "disabled"}>undo</button>`,
    `<button data-step="0" class="jump" ${state.history.length ? "" : "disabled"}>initial seed</button>`,
    `<ol>${steps.join("")}</ol>`,
    `</div>`,
  ].join("");
}

/** Polygon panel: the service-rendered triangulation, clickable per
 * diagonal; hidden entirely outside type A. */
export function renderPolygon(state: SessionState): string {
  if (!state.polygon) {
    return "";
  }
  return `<div class="polygon" data-ngon="${state.polygon.ngon}">${state.polygon.svg}</div>`;
}

export function renderMeta(state: SessionState): string {
  return `<p class="meta">${escapeHtml(state.classification)}; ` +
    `${escapeHtml(state.finiteness)}; ${state.history.length} mutations</p>`;
}

export function renderToast(toast: string | null): string {
  return toast ? `<div class="toast">${escapeHtml(toast)}</div>` : "";
}
