/** Browser bootstrap: wires the explorer to the DOM. All state lives in
 * the Explorer; this file only binds events and repaints panels. */

import { ApiClient } from "./api.js";
import { Explorer } from "./state.js";
import {
  renderCluster,
  renderHistory,
  renderMeta,
  renderPolygon,
  renderQuiver,
  renderToast,
} from "./render.js";

const DEFAULT_QUIVER = '{"n": 2, "frozen": 0, "arrows": [[1, 2, 1]]}';

function element<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
}

function main(): void {
  const serviceInput = element<HTMLInputElement>("service-url");
  const quiverInput = element<HTMLTextAreaElement>("quiver-json");
  const startButton = element<HTMLButtonElement>("start");
  const quiverPanel = element<HTMLDivElement>("quiver-panel");
  const clusterPanel = element<HTMLDivElement>("cluster-panel");
  const historyPanel = element<HTMLDivElement>("history-panel");
  const polygonPanel = element<HTMLDivElement>("polygon-panel");
  const metaPanel = element<HTMLDivElement>("meta-panel");
  const toastPanel = element<HTMLDivElement>("toast-panel");
  const tooltip = element<HTMLDivElement>("tooltip");

  quiverInput.value = DEFAULT_QUIVER;
  let explorer: Explorer | null = null;

  function repaint(): void {
    if (!explorer || !explorer.view.session) return;
    const state = explorer.view.session;
    quiverPanel.innerHTML = renderQuiver(state, explorer.view.layout);
    clusterPanel.innerHTML = renderCluster(state);
    historyPanel.innerHTML = renderHistory(state);
    polygonPanel.innerHTML = renderPolygon(state);
    metaPanel.innerHTML = renderMeta(state);
    toastPanel.innerHTML = renderToast(explorer.view.toast);
  }

  startButton.addEventListener("click", () => {
    void (async () => {
      try {
        const api = new ApiClient(serviceInput.value.replace(/\/$/, ""));
        explorer = new Explorer(api);
        explorer.onChange(repaint);
        await explorer.start(JSON.parse(quiverInput.value));
      } catch (err) {
        toastPanel.innerHTML = renderToast(String(err));
      }
    })();
  });

  quiverPanel.addEventListener("click", (ev) => {
    const target = (ev.target as HTMLElement).closest("[data-vertex]");
    if (target && explorer) {
      explorer.clearToast();
      void explorer.clickVertex(Number(target.getAttribute("data-vertex")));
    }
  });

  quiverPanel.addEventListener("mouseover", (ev) => {
    const target = (ev.target as HTMLElement).closest("[data-vertex]");
    if (!target || !explorer) return;
    const vertex = Number(target.getAttribute("data-vertex"));
    void explorer.hoverVertex(vertex).then((preview) => {
      if (preview) {
        tooltip.textContent = `mutate ${vertex} ⇒ ${preview}`;
        tooltip.style.display = "block";
      }
    });
  });
  quiverPanel.addEventListener("mouseout", () => {
    tooltip.style.display = "none";
  });

  polygonPanel.addEventListener("click", (ev) => {
    const target = (ev.target as HTMLElement).closest("[data-diagonal]");
    if (!target || !explorer) return;
    const [a, b] = (target.getAttribute("data-diagonal") ?? "")
      .split("-").map(Number);
    if (a && b) {
      void explorer.clickDiagonal([a, b]);
    }
  });

  historyPanel.addEventListener("click", (ev) => {
    const target = ev.target as HTMLElement;
    if (!explorer) return;
    if (target.dataset.undo) {
      void explorer.undoOnce();
    } else if (target.dataset.step !== undefined) {
      void explorer.jumpTo(Number(target.dataset.step));
    }
  });
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", main);
}
