/** Stimulus composer: local validation and optimistic echo bookkeeping. */

import type { MetricInfo } from "./types.js";

export interface StimulusDraft {
  agentId: string;
  stimulus: string;
  mode: string;
}

export interface DraftCheck {
  ok: boolean;
  reason?: string;
}

const DIGIT_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz";

/**
 * Mirror of the server's acceptance rules so obviously bad input fails
 * locally before a round trip. The server remains the authority.
 */
export function checkDraft(draft: StimulusDraft, metric: MetricInfo): DraftCheck {
  if (!draft.agentId) return { ok: false, reason: "pick an agent" };
  if (draft.stimulus.length === 0) return { ok: false, reason: "stimulus is empty" };
  if (!["auto", "point", "label"].includes(draft.mode)) {
    return { ok: false, reason: `unknown mode ${draft.mode}` };
  }
  if (draft.mode === "point") {
    if (draft.stimulus.length !== metric.m) {
      return { ok: false, reason: `a point needs exactly ${metric.m} digits` };
    }
    const alphabet = DIGIT_CHARS.slice(0, metric.p);
    for (const ch of draft.stimulus) {
      if (!alphabet.includes(ch)) {
        return { ok: false, reason: `digit ${ch} is outside base ${metric.p}` };
      }
    }
  }
  return { ok: true };
}

/** What the composer shows for an in-flight stimulus before the server echoes it. */
export function echoLabel(draft: StimulusDraft): string {
  return `→ ${draft.agentId}: ${draft.stimulus} (${draft.mode}, sending...)`;
}
