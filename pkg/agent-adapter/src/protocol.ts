/**
 * src/protocol.ts - newline-delimited JSON wire protocol types.
 *
 * The harness speaks one JSON object per line on the agent's stdin and
 * expects one JSON object per line on its stdout:
 *
 *   harness -> agent   {"type": "hello", "protocol": 1, "case_id": ...}
 *   agent -> harness   {"type": "ready"}
 *   harness -> agent   {"type": "view", ...turn state..., "kiu_catalog": [...]}
 *   agent -> harness   {"type": "question", "text": ..., "target_keys": [...]}
 *   harness -> agent   {"type": "end", "reason": ...}
 */

export const PROTOCOL_VERSION = 1;

export interface CatalogEntry {
  id: string;
  description: string;
  answer_key: string;
  stage_id: string;
}

export interface HelloMessage {
  type: "hello";
  protocol: number;
  case_id: string;
}

export interface ViewMessage {
  type: "view";
  turn: number;
  current_stage: string | null;
  unmet_mandatory: string[];
  unmet_all: string[];
  filled_count: number;
  schema_size: number;
  last_answer_kind: string | null;
  kiu_catalog: CatalogEntry[];
}

export interface EndMessage {
  type: "end";
  reason: string;
}

export type InboundMessage = HelloMessage | ViewMessage | EndMessage;

export interface ReadyReply {
  type: "ready";
}

export interface QuestionReply {
  type: "question";
  text: string;
  target_keys: string[];
}

export type OutboundMessage = ReadyReply | QuestionReply;

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function isStringArray(value: unknown): value is string[] {
  return Array.isArray(value) && value.every((v) => typeof v === "string");
}

function isCatalogEntry(value: unknown): value is CatalogEntry {
  return (
    isRecord(value) &&
    typeof value.id === "string" &&
    typeof value.description === "string" &&
    typeof value.answer_key === "string" &&
    typeof value.stage_id === "string"
  );
}

/** Parse one inbound line; null for anything that is not a known message. */
export function parseInbound(line: string): InboundMessage | null {
  let doc: unknown;
  try {
    doc = JSON.parse(line);
  } catch {
    return null;
  }
  if (!isRecord(doc)) return null;
  switch (doc.type) {
    case "hello":
      if (typeof doc.protocol === "number" && typeof doc.case_id === "string") {
        return { type: "hello", protocol: doc.protocol, case_id: doc.case_id };
      }
      return null;
    case "view":
      if (
        typeof doc.turn === "number" &&
        (doc.current_stage === null || typeof doc.current_stage === "string") &&
        isStringArray(doc.unmet_mandatory) &&
        isStringArray(doc.unmet_all) &&
        typeof doc.filled_count === "number" &&
        typeof doc.schema_size === "number" &&
        Array.isArray(doc.kiu_catalog) &&
        doc.kiu_catalog.every(isCatalogEntry)
      ) {
        return {
          type: "view",
          turn: doc.turn,
          current_stage: doc.current_stage,
          unmet_mandatory: doc.unmet_mandatory,
          unmet_all: doc.unmet_all,
          filled_count: doc.filled_count,
          schema_size: doc.schema_size,
          last_answer_kind:
            typeof doc.last_answer_kind === "string" ? doc.last_answer_kind : null,
          kiu_catalog: doc.kiu_catalog,
        };
      }
      return null;
    case "end":
      return { type: "end", reason: String(doc.reason ?? "") };
    default:
      return null;
  }
}

/**
 * True when an object is a reply the harness will accept. The adapter
 * runs every outgoing message through this gate, so endpoint garbage can
 * never leak a malformed line onto the wire.
 */
export function isValidReply(value: unknown): value is OutboundMessage {
  if (!isRecord(value)) return false;
  if (value.type === "ready") return true;
  return (
    value.type === "question" &&
    typeof value.text === "string" &&
    isStringArray(value.target_keys)
  );
}

export function serializeReply(reply: OutboundMessage): string {
  if (!isValidReply(reply)) {
    throw new Error("refusing to serialize a protocol-invalid reply");
  }
  return JSON.stringify(reply);
}
