/** Agent state panels: queue, hidden wishes, thresholds, running counts. */

import type { AgentSnapshot } from "./types.js";

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function queueRows(snapshot: AgentSnapshot): string {
  if (snapshot.queue.length === 0) return '<div class="empty">queue empty</div>';
  return snapshot.queue
    .map(
      (entry) =>
        `<div class="queue-row${entry.pinned ? " pinned" : ""}">` +
        `${escapeHtml(entry.idea_id)} score ${entry.score.toFixed(3)}` +
        `${entry.pinned ? " (pinned)" : ""} age ${entry.age}</div>`,
    )
    .join("");
}

function wishRows(snapshot: AgentSnapshot): string {
  if (snapshot.repressed.length === 0) return '<div class="empty">nothing hidden</div>';
  return snapshot.repressed
    .map(
      (wish) =>
        `<div class="wish-row">${escapeHtml(wish.idea_id)} at ${escapeHtml(wish.point)}, ` +
        `buried tick ${wish.repressed_tick}, leaked ${wish.leak_count}x</div>`,
    )
    .join("");
}

export function renderAgentPanel(snapshot: AgentSnapshot): string {
  const t = snapshot.thresholds;
  const counts = ["realizations", "symptoms", "repressions", "blocks", "leaks"]
    .map((key) => `${key} ${snapshot.metrics[key] ?? 0}`)
    .join(" | ");
  return (
    `<section class="agent-panel" data-agent="${escapeHtml(snapshot.agent_id)}">` +
    `<h3>${escapeHtml(snapshot.agent_id)} <small>level ${snapshot.model_level}, tick ${snapshot.tick}</small></h3>` +
    `<div class="thresholds">realize ≥ ${t.realization} | pin ≥ ${t.preserving} | ` +
    `ceilings ${t.max_interest}/${t.max_interdiction} | mood a=${snapshot.profile.a} b=${snapshot.profile.b}</div>` +
    `<h4>waiting queue</h4>${queueRows(snapshot)}` +
    `<h4>hidden wishes</h4>${wishRows(snapshot)}` +
    `<div class="counts">${counts}</div>` +
    `</section>`
  );
}

export function renderAllPanels(agents: Record<string, AgentSnapshot>): string {
  return Object.values(agents).map(renderAgentPanel).join("\n");
}
