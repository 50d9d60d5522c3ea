/** What-if editor: build and pre-check threshold patches from form input. */

import type { ThresholdsPatch } from "./types.js";

export interface PatchCheck {
  ok: boolean;
  reason?: string;
  patch?: ThresholdsPatch;
}

const FIELDS: (keyof ThresholdsPatch)[] = [
  "realization",
  "preserving",
  "max_interest",
  "max_interdiction",
];

/**
 * Turn raw form strings into a patch, dropping blanks. The invariant
 * preserving > realization is checked against the merged result the
 * server will compute, using current values for the untouched fields.
 */
export function buildPatch(
  raw: Partial<Record<keyof ThresholdsPatch, string>>,
  current: Record<string, number>,
): PatchCheck {
  const patch: ThresholdsPatch = {};
  for (const field of FIELDS) {
    const text = raw[field];
    if (text === undefined || text.trim() === "") continue;
    const value = Number(text);
    if (!Number.isFinite(value)) {
      return { ok: false, reason: `${field} is not a number` };
    }
    patch[field] = value;
  }
  if (Object.keys(patch).length === 0) {
    return { ok: false, reason: "nothing to change" };
  }
  const realization = patch.realization ?? current.realization ?? 0;
  const preserving = patch.preserving ?? current.preserving ?? 0;
  if (preserving <= realization) {
    return { ok: false, reason: "preserving must stay above realization" };
  }
  if ((patch.max_interest ?? 0) < 0 || (patch.max_interdiction ?? 0) < 0) {
    return { ok: false, reason: "ceilings cannot be negative" };
  }
  return { ok: true, patch };
}

/** The quick preset: raise both ceilings so nothing is undecidable anymore. */
export function liftCeilingsPatch(factor = 1.5): ThresholdsPatch {
  return { max_interest: factor, max_interdiction: factor };
}
