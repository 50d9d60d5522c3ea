/** Pure timeline model: events in, renderable rows and lineage links out.
 *
 * The same function builds the timeline whether events arrive one advance
 * batch at a time or all at once from a recorded log, so a live session and
 * its replay render identically by construction - and the tests hold the
 * renderer to that.
 */

import type { WireEvent } from "./types.js";

export interface TimelineRow {
  anchor: string;
  tick: number;
  agent: string;
  kind: string;
  idea: string;
  point: string;
  detail: string;
  /** anchor of the Repressed row this Symptom/Leaked row traces back to */
  linkTo?: string;
  rootWish?: string;
}

const KIND_DETAIL: Record<string, (event: WireEvent) => string> = {
  StimulusEncoded: () => "stimulus encoded",
  Dispatched: (e) => `sent to ${e.processor ?? "?"}`,
  AttractorFound: (e) => `settled via ${e.processor ?? "?"}`,
  NoSolution: () => "thinking never settled",
  ReDispatch: () => "sent back for more thinking",
  UnconsciousPerformance: () => "acted silently, below awareness",
  Blocked: (e) => `censored at ${e.processor ?? "?"}`,
  Queued: (e) => `queued at score ${fmt(e.measures?.score)}`,
  Discarded: () => "dropped",
  Purged: () => "faded from the queue",
  Repressed: () => "buried as a hidden wish",
  Leaked: () => "hidden wish leaked back",
  Realized: (e) => `acted on, pleasure ${fmt(e.measures?.pleasure)}`,
  Symptom: (e) => `symptom in disguise, pleasure ${fmt(e.measures?.pleasure)}`,
  ConfigChanged: () => "configuration patched",
};

function fmt(value: number | undefined): string {
  return value === undefined ? "-" : value.toFixed(3);
}

export function eventAnchor(event: WireEvent): string {
  return `ev-${event.agent}-${event.seq}`;
}

/**
 * Find the anchor of the repression that planted an event's root wish.
 * Returns undefined when the event has no lineage or the wish's burial
 * is not in view (e.g. a fragmentary log).
 */
export function resolveLineage(
  events: readonly WireEvent[],
  event: WireEvent,
): string | undefined {
  if (!event.root_wish) return undefined;
  for (const candidate of events) {
    if (
      candidate.kind === "Repressed" &&
      candidate.agent === event.agent &&
      candidate.idea === event.root_wish
    ) {
      return eventAnchor(candidate);
    }
  }
  return undefined;
}

export function buildTimeline(events: readonly WireEvent[]): TimelineRow[] {
  return events.map((event) => {
    const describe = KIND_DETAIL[event.kind];
    const row: TimelineRow = {
      anchor: eventAnchor(event),
      tick: event.tick,
      agent: event.agent,
      kind: event.kind,
      idea: event.idea,
      point: event.point ?? "",
      detail: describe ? describe(event) : event.kind,
    };
    if (event.root_wish) {
      row.rootWish = event.root_wish;
      const target = resolveLineage(events, event);
      if (target) row.linkTo = target;
    }
    return row;
  });
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderTimelineHtml(rows: readonly TimelineRow[]): string {
  const parts: string[] = [];
  let lastTick = -1;
  for (const row of rows) {
    if (row.tick !== lastTick) {
      parts.push(`<div class="tick-header">tick ${row.tick}</div>`);
      lastTick = row.tick;
    }
    const lineage = row.linkTo
      ? ` <a class="lineage" href="#${row.linkTo}">wish ${escapeHtml(row.rootWish ?? "")}</a>`
      : "";
    parts.push(
      `<div class="row kind-${row.kind}" id="${row.anchor}">` +
        `<span class="agent">${escapeHtml(row.agent)}</span>` +
        `<span class="kind">${escapeHtml(row.kind)}</span>` +
        `<span class="idea">${escapeHtml(row.idea)}</span>` +
        `<span class="point">${escapeHtml(row.point)}</span>` +
        `<span class="detail">${escapeHtml(row.detail)}</span>` +
        lineage +
        `</div>`,
    );
  }
  return parts.join("\n");
}
