/**
 * The service client boundary. Everything the UI knows arrives through
 * this interface, which makes the thin-client property testable: hand
 * the controller an intercepting implementation and every call is
 * visible.
 */

import type {
  CompleteResponse,
  CorpusStatsResponse,
  CreateSessionResponse,
  EventRequest,
  HealthResponse,
  PostEventResponse,
  SessionStateResponse,
} from "./types";

export interface ServiceClient {
  health(): Promise<HealthResponse>;
  createSession(user: string, session?: string | null): Promise<CreateSessionResponse>;
  postEvent(sessionId: string, event: EventRequest): Promise<PostEventResponse>;
  getState(sessionId: string): Promise<SessionStateResponse>;
  complete(sessionId: string): Promise<CompleteResponse>;
  corpusStats(): Promise<CorpusStatsResponse>;
}

/** Error body the service attaches to non-2xx responses. */
export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

type ErrorBody = { error?: { code?: string; message?: string } };

export class HttpServiceClient implements ServiceClient {
  constructor(private readonly baseUrl: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let parsed: ErrorBody = {};
      try {
        parsed = (await response.json()) as ErrorBody;
      } catch {
        // non-JSON error body; fall through to the generic message
      }
      throw new ServiceError(
        response.status,
        parsed.error?.code ?? "HttpError",
        parsed.error?.message ?? `request failed with status ${response.status}`,
      );
    }
    return (await response.json()) as T;
  }

  health(): Promise<HealthResponse> {
    return this.request("GET", "/health");
  }

  createSession(user: string, session: string | null = null): Promise<CreateSessionResponse> {
    return this.request("POST", "/sessions", { user, session });
  }

  postEvent(sessionId: string, event: EventRequest): Promise<PostEventResponse> {
    return this.request("POST", `/sessions/${sessionId}/events`, event);
  }

  getState(sessionId: string): Promise<SessionStateResponse> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  complete(sessionId: string): Promise<CompleteResponse> {
    return this.request("POST", `/sessions/${sessionId}/complete`);
  }

  corpusStats(): Promise<CorpusStatsResponse> {
    return this.request("GET", "/corpus/stats");
  }
}
