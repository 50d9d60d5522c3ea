/** Client-side session store: the event stream plus optimistic echoes. */

import type { AgentSnapshot, WireEvent } from "./types.js";

export interface PendingStimulus {
  agentId: string;
  stimulus: string;
  mode: string;
  sentAt: number;
}

/**
 * Accumulates the published event stream by cursor. Batches may overlap
 * when a poll races an advance, so appends are deduplicated by the
 * (agent, seq) identity, which the server never reuses within a session.
 */
export class SessionStore {
  readonly events: WireEvent[] = [];
  cursor = 0;
  tick = 0;
  status = "Ready";
  agents: Record<string, AgentSnapshot> = {};
  readonly pending: PendingStimulus[] = [];
  private readonly seen = new Set<string>();

  append(events: WireEvent[], cursor: number): WireEvent[] {
    const fresh: WireEvent[] = [];
    for (const event of events) {
      const key = `${event.agent}#${event.seq}`;
      if (this.seen.has(key)) continue;
      this.seen.add(key);
      this.events.push(event);
      fresh.push(event);
    }
    if (cursor > this.cursor) this.cursor = cursor;
    for (const event of fresh) {
      if (event.kind === "StimulusEncoded") this.settlePending(event);
    }
    return fresh;
  }

  echoStimulus(agentId: string, stimulus: string, mode: string): void {
    this.pending.push({ agentId, stimulus, mode, sentAt: Date.now() });
  }

  private settlePending(event: WireEvent): void {
    const index = this.pending.findIndex((p) => p.agentId === event.agent);
    if (index >= 0) this.pending.splice(index, 1);
  }

  countKind(kind: string): number {
    let total = 0;
    for (const event of this.events) if (event.kind === kind) total += 1;
    return total;
  }
}
