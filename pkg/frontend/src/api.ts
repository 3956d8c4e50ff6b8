/**
 * Typed client for the graph catalog HTTP API.
 *
 * Every request the UI makes goes through this module, and every call
 * maps 1:1 onto a documented endpoint -- there is no hidden client-side
 * logic, so a recorded session can be replayed against the API alone.
 */

export interface Rational {
  num: number;
  den: number;
}

export type InvariantStatus = "PENDING" | "COMPUTED" | "UNKNOWN";

export interface InvariantValueDoc {
  status: InvariantStatus;
  kind?: "RATIONAL" | "BOOLEAN" | "UNDEFINED";
  num?: number;
  den?: number;
  value?: boolean;
}

export interface InvariantInfo {
  id: string;
  display: string;
  kind: "RATIONAL" | "BOOLEAN";
  cost: "POLY" | "EXP";
}

export interface GraphSummary {
  id: number;
  key: string;
  name: string | null;
  n: number;
  m: number;
}

export interface CommentDoc {
  user: string;
  at: string;
  text: string;
}

export interface GraphDetail extends GraphSummary {
  owner: string;
  provenance: string | null;
  interesting_for: string[];
  comments: CommentDoc[];
  embedding: [number, number][];
  edges: [number, number][];
  invariants: Record<string, InvariantValueDoc>;
}

export type StepDoc =
  | { kind: "keyword"; text: string }
  | { kind: "range"; invariant: string; low?: number | Rational | null;
      high?: number | Rational | null; inclusive?: boolean }
  | { kind: "interesting"; invariant: string }
  | { kind: "expr"; text: string; polarity?: "satisfy" | "not_satisfy" }
  | { kind: "exact"; key?: string; graph6?: string }
  | { kind: "bool"; invariant: string; value: boolean };

export interface SearchResponse {
  total: number;
  offset: number;
  results: GraphSummary[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  offset?: number;
}

export class ApiError extends Error {
  readonly code: string;
  readonly offset?: number;

  constructor(body: ApiErrorBody, status: number) {
    super(body.message);
    this.code = body.code;
    this.offset = body.offset;
  }
}

export type DownloadFormat = "graph6" | "multicode" | "edge-text" | "readable";

export interface DrawnPayload {
  vertices: [number, number][];
  edges: [number, number][];
}

export class ApiClient {
  private token: string | null = null;
  login: string | null = null;

  constructor(readonly baseUrl: string) {}

  setCredentials(login: string, token: string): void {
    this.login = login;
    this.token = token;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) headers["Content-Type"] = "application/json";
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    const resp = await fetch(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await resp.json();
    if (!resp.ok) {
      throw new ApiError((payload as { error: ApiErrorBody }).error, resp.status);
    }
    return payload as T;
  }

  async register(login: string): Promise<void> {
    const out = await this.request<{ login: string; token: string }>(
      "POST", "/api/users/register", { login });
    this.setCredentials(out.login, out.token);
  }

  search(steps: StepDoc[], page?: { offset: number; limit: number },
         sort = "id"): Promise<SearchResponse> {
    return this.request("POST", "/api/search", { steps, page, sort });
  }

  async downloadSearch(steps: StepDoc[], format: DownloadFormat): Promise<Blob> {
    const resp = await fetch(this.baseUrl + "/api/search", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ steps, format }),
    });
    if (!resp.ok) {
      const payload = await resp.json();
      throw new ApiError((payload as { error: ApiErrorBody }).error, resp.status);
    }
    return resp.blob();
  }

  getGraph(id: number): Promise<GraphDetail> {
    return this.request("GET", `/api/graphs/${id}`);
  }

  submitDrawn(payload: DrawnPayload, name?: string
              ): Promise<{ id: number; created: boolean }> {
    return this.request("POST", "/api/graphs",
                        { format: "drawn", payload, name: name || undefined });
  }

  updateMetadata(id: number, fields: { name?: string; provenance?: string;
                 interesting_for?: string[] }): Promise<GraphDetail> {
    return this.request("PATCH", `/api/graphs/${id}`, fields);
  }

  addComment(id: number, text: string): Promise<GraphDetail> {
    return this.request("POST", `/api/graphs/${id}/comments`, { text });
  }

  invariants(): Promise<InvariantInfo[]> {
    return this.request("GET", "/api/invariants");
  }

  jobCounts(): Promise<Record<string, number>> {
    return this.request("GET", "/api/jobs");
  }
}
