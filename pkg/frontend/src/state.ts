import { ApiClient, ApiError } from "./api.js";
import { layoutQuiver, type Point } from "./layout.js";
import type { NeighborPreview, QuiverJson, SessionState } from "./types.js";

/** What the panels render. Always a pure projection of the last service
 * response; no arithmetic happens on this side. */
export interface ViewState {
  session: SessionState | null;
  layout: Point[];
  previews: NeighborPreview[] | null;
  toast: string | null;
}

/** Drives one live session.  Interactions are queued so at most one
 * mutation request is in flight; the view model is replaced wholesale by
 * each confirmed response and never edited locally. */
export class Explorer {
  view: ViewState = { session: null, layout: [], previews: null, toast: null };
  private queue: Promise<unknown> = Promise.resolve();
  private listeners: Array<() => void> = [];

  constructor(private api: ApiClient) {}

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  private accept(state: SessionState): void {
    this.view = {
      session: state,
      layout: layoutQuiver(state.quiver),
      previews: null,
      toast: this.view.toast,
    };
    this.emit();
  }

  private enqueue<T>(op: () => Promise<T>): Promise<T> {
    const next = this.queue.then(op);
    // keep the chain alive after failures; errors surface to the caller
    this.queue = next.catch(() => undefined);
    return next;
  }

  model(): SessionState {
    if (!this.view.session) throw new Error("no live session");
    return this.view.session;
  }

  async start(quiver: QuiverJson): Promise<void> {
    await this.enqueue(async () => {
      const created = await this.api.createSession(quiver);
      this.accept(created.state);
    });
  }

  /** Click on a quiver vertex (1-based).  Frozen vertices are a no-op
   * with a hint, matching the convention that coefficients never mutate. */
  async clickVertex(vertex: number): Promise<void> {
    await this.enqueue(async () => {
      const session = this.model();
      if (vertex > session.quiver.n) {
        this.view.toast = `vertex ${vertex} is frozen; coefficients do not mutate`;
        this.emit();
        return;
      }
      try {
        this.accept(await this.api.mutate(session.id, vertex));
      } catch (err) {
        this.view.toast = err instanceof ApiError ? err.message : String(err);
        this.emit();
      }
    });
  }

  /** Click on a polygon diagonal: the flip is performed by mutating the
   * aligned vertex, so polygon clicks and vertex clicks are literally the
   * same service transition. */
  async clickDiagonal(diagonal: [number, number]): Promise<void> {
    const session = this.model();
    if (!session.polygon) throw new Error("no polygon panel for this session");
    const key = JSON.stringify([...diagonal].sort((a, b) => a - b));
    for (const [vertex, d] of Object.entries(session.polygon.diagonal_of_vertex)) {
      if (JSON.stringify(d) === key) {
        await this.clickVertex(Number(vertex));
        return;
      }
    }
    throw new Error(`diagonal ${key} is not in the current triangulation`);
  }

  /** Hover preview: the exchanged variable at a vertex, served from the
   * uncommitted neighbors endpoint and cached per confirmed state. */
  async hoverVertex(vertex: number): Promise<string | null> {
    const session = this.model();
    if (vertex > session.quiver.n) return null;
    if (!this.view.previews) {
      const previews = await this.api.neighbors(session.id);
      if (this.view.session?.id === session.id
          && this.view.session.history.length === session.history.length) {
        this.view.previews = previews;
      }
      return previews.find((p) => p.vertex === vertex)?.variable.str ?? null;
    }
    return this.view.previews.find((p) => p.vertex === vertex)?.variable.str ?? null;
  }

  async undoOnce(): Promise<void> {
    await this.enqueue(async () => {
      const session = this.model();
      try {
        this.accept(await this.api.undo(session.id));
      } catch (err) {
        this.view.toast = err instanceof ApiError ? err.message : String(err);
        this.emit();
      }
    });
  }

  /** Jump to an earlier history step by undoing repeatedly. */
  async jumpTo(step: number): Promise<void> {
    if (step < 0) throw new Error("step must be nonnegative");
    while (this.model().history.length > step) {
      const before = this.model().history.length;
      await this.undoOnce();
      if (this.model().history.length >= before) break; // undo refused
    }
  }

  clearToast(): void {
    this.view.toast = null;
    this.emit();
  }
}
