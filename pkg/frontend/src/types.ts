/** Wire types for the psychot session protocol and its event logs. */

export interface Measures {
  I?: number;
  D?: number;
  score?: number;
  pleasure?: number;
}

export interface WireEvent {
  tick: number;
  seq: number;
  agent: string;
  kind: string;
  idea: string;
  point?: string;
  processor?: string;
  measures?: Measures;
  root_wish?: string;
  config?: Record<string, unknown>;
}

export interface MetricInfo {
  kind: string;
  p: number;
  m: number;
}

export interface RunHeader {
  kind: "RunHeader";
  version: number;
  run_ticks: number;
  seed: number;
  coupling: string;
  metric: MetricInfo;
  agents: { id: string; model_level: number }[];
}

export interface QueueEntry {
  idea_id: string;
  score: number;
  pinned: boolean;
  enqueued_tick: number;
  age: number;
}

export interface AgentSnapshot {
  agent_id: string;
  tick: number;
  model_level: number;
  queue: QueueEntry[];
  repressed: { idea_id: string; point: string; repressed_tick: number; leak_count: number }[];
  databases: Record<string, { name: string; points: string[] }>;
  thresholds: Record<string, number>;
  profile: { a: number; b: number };
  metrics: Record<string, number | null>;
}

export interface CreateSessionResponse {
  session_id: string;
  status: string;
  tick: number;
  run_ticks: number;
  agents: string[];
}

export interface StimulusResponse {
  idea_id: string;
  point: string;
  tick: number;
}

export interface AdvanceResponse {
  tick: number;
  status: string;
  cursor: number;
  events: WireEvent[];
}

export interface StateResponse {
  session_id: string;
  status: string;
  tick: number;
  run_ticks: number;
  cursor: number;
  agents: Record<string, AgentSnapshot>;
}

export interface EventsResponse {
  events: WireEvent[];
  cursor: number;
  tick: number;
  status: string;
}

export interface ThresholdsPatch {
  realization?: number;
  preserving?: number;
  max_interest?: number;
  max_interdiction?: number;
}

export interface PatchResponse {
  ok: boolean;
  effective_tick: number;
  event: WireEvent;
}

export interface EndSessionResponse {
  status: string;
  tick: number;
  log: string;
  log_path: string | null;
}

export interface ApiErrorDetail {
  code: string;
  message: string;
  field?: string;
}
