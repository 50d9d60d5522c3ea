/** DOM wiring: one session at a time, streamed into the timeline. */

import { ApiError, PsychotClient } from "./api.js";
import { checkDraft, echoLabel } from "./composer.js";
import { parseLog } from "./log.js";
import { renderAllPanels } from "./panels.js";
import { SessionStore } from "./state.js";
import { buildTimeline, renderTimelineHtml } from "./timeline.js";
import type { MetricInfo, StateResponse } from "./types.js";
import { buildPatch } from "./whatif.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
};

const DEFAULT_SCENARIO = `metric: {p: 2, m: 3}
seed: 11
run_ticks: 50
agents:
  - id: anna
    model_level: 4
    thresholds:
      realization: 0.0
      preserving: 0.45
      max_interest: 0.9
      max_interdiction: 0.9
    unconscious: {leak_rate: 1.0, retry_attempts: 0}
    interest_db: ["111", "000"]
    interdiction_db: ["111"]
    routing:
      - {prefix: "110", processor: wishmaker}
    processors:
      - id: dreamwork
        map: {kind: prefix_rewrite, rules: [{from: "111", to: "011"}]}
        blocking_threshold: 1.0
      - id: wishmaker
        map: {kind: prefix_rewrite, rules: [{from: "110", to: "111"}]}
`;

let client: PsychotClient | null = null;
let store = new SessionStore();
let sessionId = "";
let metric: MetricInfo = { kind: "PrefixUltrametric", p: 2, m: 3 };
let following = false;

function setStatus(text: string, isError = false): void {
  const node = $("status");
  node.textContent = text;
  node.classList.toggle("error", isError);
}

function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    return error.field ? `${error.code}: ${error.message} (${error.field})` : `${error.code}: ${error.message}`;
  }
  return String(error);
}

function redrawTimeline(): void {
  const html = renderTimelineHtml(buildTimeline(store.events));
  const echoes = store.pending
    .map((p) => `<div class="row pending">${echoLabel({ agentId: p.agentId, stimulus: p.stimulus, mode: p.mode })}</div>`)
    .join("");
  const container = $("timeline");
  container.innerHTML = html + echoes;
  container.scrollTop = container.scrollHeight;
  $("counts").textContent =
    `${store.events.length} events | tick ${store.tick} | ` +
    `${store.countKind("Repressed")} repressed | ${store.countKind("Symptom")} symptoms`;
}

function redrawPanels(state: StateResponse): void {
  store.agents = state.agents;
  store.tick = state.tick;
  store.status = state.status;
  $("panels").innerHTML = renderAllPanels(state.agents);
  const select = $<HTMLSelectElement>("agent-select");
  const ids = Object.keys(state.agents);
  if (select.options.length !== ids.length) {
    select.innerHTML = ids.map((id) => `<option value="${id}">${id}</option>`).join("");
  }
  const patchSelect = $<HTMLSelectElement>("patch-agent");
  if (patchSelect.options.length !== ids.length) {
    patchSelect.innerHTML = select.innerHTML;
  }
}

async function refreshState(): Promise<void> {
  if (!client || !sessionId) return;
  redrawPanels(await client.getState(sessionId));
}

async function createSession(): Promise<void> {
  const base = $<HTMLInputElement>("base-url").value.replace(/\/$/, "");
  client = new PsychotClient(base);
  store = new SessionStore();
  try {
    const created = await client.createSession($<HTMLTextAreaElement>("scenario").value);
    sessionId = created.session_id;
    const state = await client.getState(sessionId);
    const parsedMetric = /p:\s*(\d+),\s*m:\s*(\d+)/.exec($<HTMLTextAreaElement>("scenario").value);
    if (parsedMetric) metric = { kind: metric.kind, p: Number(parsedMetric[1]), m: Number(parsedMetric[2]) };
    redrawPanels(state);
    redrawTimeline();
    setStatus(`session ${sessionId} ready: agents ${created.agents.join(", ")}, ${created.run_ticks} ticks`);
  } catch (error) {
    setStatus(describeError(error), true);
  }
}

async function advance(ticks: number): Promise<void> {
  if (!client || !sessionId) return;
  try {
    const body = await client.advance(sessionId, ticks, store.cursor);
    store.append(body.events, body.cursor);
    store.tick = body.tick;
    redrawTimeline();
    await refreshState();
    setStatus(`advanced to tick ${body.tick}`);
  } catch (error) {
    setStatus(describeError(error), true);
  }
}

async function followLoop(): Promise<void> {
  while (following && client && sessionId) {
    try {
      const body = await client.getEvents(sessionId, store.cursor, 2000);
      const fresh = store.append(body.events, body.cursor);
      store.tick = body.tick;
      if (fresh.length > 0) {
        redrawTimeline();
        await refreshState();
      }
      if (body.status === "Ended") break;
    } catch (error) {
      setStatus(describeError(error), true);
      break;
    }
  }
}

async function sendStimulus(): Promise<void> {
  if (!client || !sessionId) return;
  const draft = {
    agentId: $<HTMLSelectElement>("agent-select").value,
    stimulus: $<HTMLInputElement>("stimulus").value.trim(),
    mode: $<HTMLSelectElement>("mode").value,
  };
  const verdict = checkDraft(draft, metric);
  if (!verdict.ok) {
    setStatus(verdict.reason ?? "invalid stimulus", true);
    return;
  }
  store.echoStimulus(draft.agentId, draft.stimulus, draft.mode);
  redrawTimeline();
  try {
    await client.postStimulus(sessionId, draft.agentId, draft.stimulus, draft.mode);
    const body = await client.getEvents(sessionId, store.cursor);
    store.append(body.events, body.cursor);
    redrawTimeline();
    setStatus(`stimulus queued for ${draft.agentId}`);
    $<HTMLInputElement>("stimulus").value = "";
  } catch (error) {
    store.pending.pop();
    redrawTimeline();
    setStatus(describeError(error), true);
  }
}

async function applyPatch(): Promise<void> {
  if (!client || !sessionId) return;
  const agentId = $<HTMLSelectElement>("patch-agent").value;
  const current = store.agents[agentId]?.thresholds ?? {};
  const verdict = buildPatch(
    {
      realization: $<HTMLInputElement>("patch-realization").value,
      preserving: $<HTMLInputElement>("patch-preserving").value,
      max_interest: $<HTMLInputElement>("patch-interest").value,
      max_interdiction: $<HTMLInputElement>("patch-interdiction").value,
    },
    current,
  );
  if (!verdict.ok || !verdict.patch) {
    setStatus(verdict.reason ?? "invalid patch", true);
    return;
  }
  try {
    const body = await client.setThresholds(sessionId, agentId, verdict.patch);
    const events = await client.getEvents(sessionId, store.cursor);
    store.append(events.events, events.cursor);
    redrawTimeline();
    await refreshState();
    setStatus(`patched ${agentId} at tick ${body.effective_tick}`);
  } catch (error) {
    setStatus(describeError(error), true);
  }
}

async function endSession(): Promise<void> {
  if (!client || !sessionId) return;
  try {
    const body = await client.endSession(sessionId);
    const parsed = parseLog(body.log);
    setStatus(`session ended at tick ${body.tick}; log holds ${parsed.events.length} events`);
    const blob = new Blob([body.log], { type: "application/jsonl" });
    const link = $<HTMLAnchorElement>("download");
    link.href = URL.createObjectURL(blob);
    link.download = `${sessionId}.jsonl`;
    link.classList.remove("hidden");
  } catch (error) {
    setStatus(describeError(error), true);
  }
}

export function mount(): void {
  $<HTMLTextAreaElement>("scenario").value = DEFAULT_SCENARIO;
  $<HTMLInputElement>("base-url").value = window.location.origin;
  $("create").addEventListener("click", () => void createSession());
  $("advance-1").addEventListener("click", () => void advance(1));
  $("advance-5").addEventListener("click", () => void advance(5));
  $("send").addEventListener("click", () => void sendStimulus());
  $("apply-patch").addEventListener("click", () => void applyPatch());
  $("end").addEventListener("click", () => void endSession());
  $<HTMLInputElement>("follow").addEventListener("change", (event) => {
    following = (event.target as HTMLInputElement).checked;
    if (following) void followLoop();
  });
}

mount();
