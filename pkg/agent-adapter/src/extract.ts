/**
 * src/extract.ts - pull target keys out of a model completion.
 *
 * Extraction is deliberately dumb: only `TARGET: <token>` lines count,
 * and the token must exactly match a catalog unit id or answer key.
 * Free-text-only completions therefore yield no targets, which the
 * harness scores as an unknown-style turn rather than guessing.
 */

import type { CatalogEntry } from "./protocol.js";

const TARGET_LINE = /^\s*TARGET:\s*(\S+)\s*$/;

export interface Extraction {
  /** answer keys, catalog order, deduplicated */
  targetKeys: string[];
  /** the completion with TARGET lines removed, for use as question text */
  questionText: string;
}

export function extractTargets(
  completion: string,
  catalog: CatalogEntry[],
): Extraction {
  const byId = new Map<string, CatalogEntry>();
  const byKey = new Map<string, CatalogEntry>();
  for (const entry of catalog) {
    byId.set(entry.id, entry);
    byKey.set(entry.answer_key, entry);
  }

  const matched = new Set<string>();
  const textLines: string[] = [];
  for (const line of completion.split(/\r?\n/)) {
    const hit = TARGET_LINE.exec(line);
    if (hit === null) {
      textLines.push(line);
      continue;
    }
    const token = hit[1] ?? "";
    const entry = byId.get(token) ?? byKey.get(token);
    if (entry !== undefined) {
      matched.add(entry.answer_key);
    }
    // unmatched tokens are dropped, not guessed at
  }

  const ordered = catalog
    .map((e) => e.answer_key)
    .filter((key) => matched.has(key));
  return {
    targetKeys: ordered,
    questionText: textLines.join("\n").trim(),
  };
}
