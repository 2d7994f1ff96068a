/**
 * src/agent.ts - turn a harness view into a protocol-valid question.
 *
 * Pure logic: the network is injected, so tests can feed arbitrary
 * completions (or failures) and check every path stays protocol-valid.
 */

import type { AdapterConfig } from "./config.js";
import type { ChatRequest, CompleteFn } from "./endpoint.js";
import { extractTargets } from "./extract.js";
import { systemPrompt, userPrompt } from "./prompts.js";
import type { QuestionReply, ViewMessage } from "./protocol.js";

/**
 * Offline test mode: target the first unmet mandatory unit of the
 * current stage, falling back to the first unmet unit overall - the
 * same decision rule as the harness's built-in staged inquirer, so
 * episode traces line up decision-for-decision.
 */
export function offlineEchoQuestion(view: ViewMessage): QuestionReply {
  const targetId = view.unmet_mandatory[0] ?? view.unmet_all[0];
  if (targetId === undefined) {
    return { type: "question", text: "Anything else to add?", target_keys: [] };
  }
  const entry = view.kiu_catalog.find((e) => e.id === targetId);
  if (entry === undefined) {
    return {
      type: "question",
      text: `Please describe ${targetId}.`,
      target_keys: [],
    };
  }
  return {
    type: "question",
    text: `Could you walk me through ${entry.description}?`,
    target_keys: [entry.answer_key],
  };
}

function fallbackQuestion(reason: string): QuestionReply {
  return {
    type: "question",
    text: `[endpoint unavailable: ${reason}] Could you tell me anything not yet covered?`,
    target_keys: [],
  };
}

export function buildRequest(config: AdapterConfig, view: ViewMessage): ChatRequest {
  return {
    system: systemPrompt(config.system_prompt_profile),
    user: userPrompt(view),
  };
}

/**
 * Ask the endpoint for a question and post-process the completion.
 * Never throws for endpoint misbehavior; the worst outcome is a
 * no-target question, which the harness scores as unknown.
 */
export async function endpointQuestion(
  config: AdapterConfig,
  view: ViewMessage,
  complete: CompleteFn,
): Promise<QuestionReply> {
  let completion: string;
  try {
    completion = await complete(config, buildRequest(config, view));
  } catch (err) {
    return fallbackQuestion(err instanceof Error ? err.message : String(err));
  }

  const { targetKeys, questionText } = extractTargets(completion, view.kiu_catalog);

  let keys = targetKeys;
  if (config.system_prompt_profile === "softfsm_generation_only") {
    // the controller's choice is law: drop anything outside the current
    // stage's unmet mandatory units, so this profile can never re-ask
    const allowed = new Set(
      view.kiu_catalog
        .filter((e) => view.unmet_mandatory.includes(e.id))
        .map((e) => e.answer_key),
    );
    keys = keys.filter((k) => allowed.has(k));
  }

  return {
    type: "question",
    text: questionText.length > 0 ? questionText : "(no question text returned)",
    target_keys: keys,
  };
}
