/** Thin typed client for the session endpoints. */

import type {
  AdvanceResponse,
  ApiErrorDetail,
  CreateSessionResponse,
  EndSessionResponse,
  EventsResponse,
  PatchResponse,
  StateResponse,
  StimulusResponse,
  ThresholdsPatch,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
    public readonly field?: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function raiseFor(response: Response): Promise<never> {
  let detail: ApiErrorDetail = { code: "http_error", message: response.statusText };
  try {
    const body = (await response.json()) as { detail?: ApiErrorDetail };
    if (body.detail?.code) detail = body.detail;
  } catch {
    // non-JSON error body; keep the generic detail
  }
  throw new ApiError(response.status, detail.code, detail.message, detail.field);
}

export class PsychotClient {
  private readonly fetchImpl: typeof fetch;

  constructor(
    private readonly baseUrl: string,
    fetchImpl?: typeof fetch,
  ) {
    // wrap instead of storing the bare global: browsers reject fetch
    // calls whose `this` is not the window
    this.fetchImpl = fetchImpl ?? ((...args) => fetch(...args));
  }

  private async post<T>(path: string, payload: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
    if (!response.ok) await raiseFor(response);
    return (await response.json()) as T;
  }

  private async get<T>(path: string, params: Record<string, string | number>): Promise<T> {
    const query = new URLSearchParams(
      Object.entries(params).map(([key, value]) => [key, String(value)]),
    );
    const response = await this.fetchImpl(`${this.baseUrl}${path}?${query}`);
    if (!response.ok) await raiseFor(response);
    return (await response.json()) as T;
  }

  createSession(scenario: string): Promise<CreateSessionResponse> {
    return this.post("/create-session", { scenario });
  }

  postStimulus(
    sessionId: string,
    agentId: string,
    stimulus: string,
    mode: string = "auto",
  ): Promise<StimulusResponse> {
    return this.post("/post-stimulus", {
      session_id: sessionId,
      agent_id: agentId,
      stimulus,
      mode,
    });
  }

  advance(sessionId: string, ticks: number, cursor?: number): Promise<AdvanceResponse> {
    return this.post("/advance", { session_id: sessionId, ticks, cursor });
  }

  getState(sessionId: string): Promise<StateResponse> {
    return this.get("/get-state", { session_id: sessionId });
  }

  getEvents(sessionId: string, cursor: number, waitMs = 0): Promise<EventsResponse> {
    return this.get("/get-events", {
      session_id: sessionId,
      cursor,
      wait_ms: waitMs,
    });
  }

  setThresholds(
    sessionId: string,
    agentId: string,
    thresholds?: ThresholdsPatch,
    profile?: { a?: number; b?: number },
  ): Promise<PatchResponse> {
    return this.post("/set-thresholds", {
      session_id: sessionId,
      agent_id: agentId,
      thresholds,
      profile,
    });
  }

  endSession(sessionId: string, saveLog = false): Promise<EndSessionResponse> {
    return this.post("/end-session", { session_id: sessionId, save_log: saveLog });
  }
}
