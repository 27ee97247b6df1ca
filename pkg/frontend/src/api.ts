import type {
  ExchangeGraphJson,
  NeighborPreview,
  QuiverJson,
  SessionState,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

type FetchLike = typeof globalThis.fetch;

/** Thin typed client over the session endpoints; the fetch implementation
 * is injectable so tests and browsers share the code path. */
export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = globalThis.fetch.bind(globalThis),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (response.status === 204) {
      return undefined as T;
    }
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, payload?.error ?? response.statusText);
    }
    return payload as T;
  }

  createSession(quiver: QuiverJson): Promise<{ id: string; state: SessionState }> {
    return this.request("POST", "/sessions", { quiver });
  }

  getState(id: string): Promise<SessionState> {
    return this.request("GET", `/sessions/${id}`);
  }

  mutate(id: string, vertex: number): Promise<SessionState> {
    return this.request("POST", `/sessions/${id}/mutate`, { vertex });
  }

  undo(id: string): Promise<SessionState> {
    return this.request("POST", `/sessions/${id}/undo`);
  }

  async neighbors(id: string): Promise<NeighborPreview[]> {
    const body = await this.request<{ neighbors: NeighborPreview[] }>(
      "GET", `/sessions/${id}/neighbors`);
    return body.neighbors;
  }

  polygon(id: string): Promise<unknown> {
    return this.request("GET", `/sessions/${id}/polygon`);
  }

  exchangeGraph(id: string, max: number): Promise<ExchangeGraphJson> {
    return this.request("GET", `/sessions/${id}/exchange-graph?max=${max}`);
  }

  deleteSession(id: string): Promise<void> {
    return this.request("DELETE", `/sessions/${id}`);
  }
}
