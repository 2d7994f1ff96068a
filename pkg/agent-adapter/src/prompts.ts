/**
 * src/prompts.ts - prompt templates for the three interviewer profiles.
 *
 * The profiles are reconstructions: they describe the intended behavior
 * of each configuration (free-roaming, stage-steered, and
 * generation-only under an external controller) rather than reproducing
 * any particular deployment's prompts verbatim.
 */

import type { PromptProfile } from "./config.js";
import type { CatalogEntry, ViewMessage } from "./protocol.js";

const TARGET_RULE = `After your question, emit one line per targeted unit, exactly:
TARGET: <unit id>
Use ids from the catalog verbatim. No other text on those lines.`;

const SYSTEM_PROMPTS: Record<PromptProfile, string> = {
  pure: `You are an interviewer filling out a structured intake record.
Ask one concise question per turn, chosen however you see fit from the
catalog of information units. Avoid re-asking for units already filled.
${TARGET_RULE}`,

  stage_prompted: `You are an interviewer working through a staged intake
record. Stay within the CURRENT STAGE shown below; ask one concise
question per turn for a unit of that stage, moving on only when the
stage looks complete. Avoid re-asking for units already filled.
${TARGET_RULE}`,

  softfsm_generation_only: `You are the question-wording component of a
controlled interview. The controller has already chosen what to ask:
the first unit listed under MANDATORY UNMET. Write one natural question
for exactly that unit - do not choose a different one.
${TARGET_RULE}`,
};

export function systemPrompt(profile: PromptProfile): string {
  return SYSTEM_PROMPTS[profile];
}

function catalogLines(catalog: CatalogEntry[]): string {
  return catalog
    .map((e) => `- ${e.id} [stage ${e.stage_id}]: ${e.description}`)
    .join("\n");
}

/** Render the per-turn user message from the harness view. */
export function userPrompt(view: ViewMessage): string {
  const parts = [
    `Turn ${view.turn}. ${view.filled_count} of ${view.schema_size} units filled.`,
    `CURRENT STAGE: ${view.current_stage ?? "(none)"}`,
    `MANDATORY UNMET (current stage): ${view.unmet_mandatory.join(", ") || "(none)"}`,
    `ALL UNMET: ${view.unmet_all.join(", ") || "(none)"}`,
  ];
  if (view.last_answer_kind) {
    parts.push(`The previous answer was: ${view.last_answer_kind}.`);
  }
  parts.push("CATALOG:", catalogLines(view.kiu_catalog));
  parts.push("Ask your next question.");
  return parts.join("\n");
}
