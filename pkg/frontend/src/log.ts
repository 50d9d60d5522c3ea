/** Parsing of recorded run logs (JSON lines: one header, then events). */

import type { RunHeader, WireEvent } from "./types.js";

export interface ParsedLog {
  header: RunHeader;
  events: WireEvent[];
}

export function parseLog(text: string): ParsedLog {
  const lines = text.split("\n").filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new Error("log is empty");
  }
  const header = JSON.parse(lines[0]!) as RunHeader;
  if (header.kind !== "RunHeader") {
    throw new Error("log does not start with a RunHeader line");
  }
  const events = lines.slice(1).map((line) => JSON.parse(line) as WireEvent);
  return { header, events };
}
