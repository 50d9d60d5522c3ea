/** Scripted what-if loop against a real service process.
 *
 * Drives the same modules the browser uses (client, store, composer,
 * what-if editor, timeline) through a live session: provoke repressions,
 * raise both ceilings mid-session, then show that the same stimulus no
 * longer represses anything.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { readFileSync } from "node:fs";
import { createServer } from "node:net";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { PsychotClient } from "../src/api.js";
import { checkDraft } from "../src/composer.js";
import { SessionStore } from "../src/state.js";
import { buildTimeline } from "../src/timeline.js";
import { liftCeilingsPatch } from "../src/whatif.js";

const SCENARIO_URL = new URL("../../fixtures/scenarios/symptom_pathway.yaml", import.meta.url);
const METRIC = { kind: "PrefixUltrametric", p: 2, m: 3 };

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = createServer();
    probe.once("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address === null || typeof address === "string") {
        reject(new Error("no port assigned"));
        return;
      }
      probe.close(() => resolve(address.port));
    });
  });
}

async function waitForService(baseUrl: string, deadlineMs: number): Promise<void> {
  const deadline = Date.now() + deadlineMs;
  for (;;) {
    try {
      await fetch(`${baseUrl}/get-state?session_id=warmup`);
      return;
    } catch {
      if (Date.now() > deadline) throw new Error(`service at ${baseUrl} never came up`);
      await new Promise((r) => setTimeout(r, 150));
    }
  }
}

let server: ChildProcess | null = null;
let baseUrl = "";

beforeAll(async () => {
  const port = await freePort();
  baseUrl = `http://127.0.0.1:${port}`;
  const child = spawn(
    "python3",
    ["-m", "psychot", "serve", "--host", "127.0.0.1", "--port", String(port)],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  server = child;
  let stderr = "";
  child.stderr.on("data", (chunk: Buffer) => {
    stderr += chunk.toString();
  });
  child.once("exit", (code) => {
    if (code !== null && code !== 0) {
      console.error(`service exited with ${code}:\n${stderr}`);
    }
  });
  await waitForService(baseUrl, 30_000);
}, 45_000);

afterAll(() => {
  server?.kill("SIGTERM");
});

describe("what-if threshold loop", () => {
  it(
    "raising both ceilings mid-session stops further repressions",
    async () => {
      const client = new PsychotClient(baseUrl);
      const store = new SessionStore();
      const scenario = readFileSync(SCENARIO_URL, "utf8");

      const created = await client.createSession(scenario);
      const agentId = created.agents[0]!;

      // provoke: the scripted stimulus and the composer agree it is valid
      const draft = { agentId, stimulus: "110", mode: "point" };
      expect(checkDraft(draft, METRIC)).toEqual({ ok: true });

      const echoed = await client.postStimulus(created.session_id, agentId, "110", "point");
      expect(echoed.point).toBe("110");

      let body = await client.advance(created.session_id, 2, store.cursor);
      store.append(body.events, body.cursor);
      const repressedBefore = store.countKind("Repressed");
      expect(repressedBefore).toBeGreaterThanOrEqual(2);

      // the what-if: raise both maxima so doubt can never trigger again
      const patch = liftCeilingsPatch();
      const ack = await client.setThresholds(created.session_id, agentId, patch);
      expect(ack.ok).toBe(true);
      const patchTick = ack.effective_tick;

      const marker = await client.getEvents(created.session_id, store.cursor);
      store.append(marker.events, marker.cursor);
      const markerRows = buildTimeline(store.events).filter((r) => r.kind === "ConfigChanged");
      expect(markerRows.length).toBe(1);

      // same stimulus again, more ticks: zero new Repressed rows
      await client.postStimulus(created.session_id, agentId, "110", "point");
      body = await client.advance(created.session_id, 3, store.cursor);
      store.append(body.events, body.cursor);

      const rows = buildTimeline(store.events);
      const lateRepressions = rows.filter(
        (row) => row.kind === "Repressed" && row.tick >= patchTick,
      );
      expect(lateRepressions).toEqual([]);
      expect(store.countKind("Repressed")).toBe(repressedBefore);

      // the stimulus still went through: it queued instead of vanishing
      const lateQueued = rows.filter((row) => row.kind === "Queued" && row.tick >= patchTick);
      expect(lateQueued.length).toBeGreaterThan(0);

      const ended = await client.endSession(created.session_id);
      expect(ended.status).toBe("Ended");
    },
    30_000,
  );
});
