/** Thin typed client for the attacknets HTTP API.
 *
 * Every error response carries `{code, message, details}`; the client
 * rethrows it as an `ApiError` without rewording, so the UI can surface
 * the server's own message verbatim.
 */

import type {
  ApiErrorBody,
  CapabilityName,
  ModelDetail,
  ModelSummary,
  SessionState,
} from "./types";

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly details: unknown;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.name = "ApiError";
    this.status = status;
    this.code = body.code;
    this.details = body.details;
  }
}

/** The slice of the client the UI depends on; tests substitute fakes. */
export interface ExplorerApi {
  listModels(): Promise<ModelSummary[]>;
  getModel(attack: number): Promise<ModelDetail>;
  closure(attack: number): Promise<number[]>;
  createSession(
    attack: number,
    profile: CapabilityName[],
    chosen: string[],
  ): Promise<SessionState>;
  getSession(sessionId: string): Promise<SessionState>;
  fire(sessionId: string, transition: string): Promise<SessionState>;
  reset(sessionId: string): Promise<SessionState>;
  deleteSession(sessionId: string): Promise<void>;
}

export class ApiClient implements ExplorerApi {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.base = baseUrl.replace(/\/+$/, "");
    const fn = fetchFn ?? (globalThis.fetch as FetchLike | undefined);
    if (!fn) {
      throw new Error("no fetch implementation available");
    }
    this.fetchFn = (input, init) => fn(input, init);
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.base + path, init);
    const text = await response.text();
    const payload: unknown = text === "" ? null : JSON.parse(text);
    if (!response.ok) {
      throw new ApiError(response.status, payload as ApiErrorBody);
    }
    return payload as T;
  }

  listModels(): Promise<ModelSummary[]> {
    return this.request("GET", "/api/models");
  }

  getModel(attack: number): Promise<ModelDetail> {
    return this.request("GET", `/api/models/${attack}`);
  }

  closure(attack: number): Promise<number[]> {
    return this.request("GET", `/api/models/${attack}/closure`);
  }

  createSession(
    attack: number,
    profile: CapabilityName[],
    chosen: string[],
  ): Promise<SessionState> {
    return this.request("POST", "/api/sessions", { attack, profile, chosen });
  }

  getSession(sessionId: string): Promise<SessionState> {
    return this.request("GET", `/api/sessions/${sessionId}`);
  }

  fire(sessionId: string, transition: string): Promise<SessionState> {
    return this.request("POST", `/api/sessions/${sessionId}/fire`, {
      transition,
    });
  }

  reset(sessionId: string): Promise<SessionState> {
    return this.request("POST", `/api/sessions/${sessionId}/reset`);
  }

  async deleteSession(sessionId: string): Promise<void> {
    await this.request("DELETE", `/api/sessions/${sessionId}`);
  }
}
