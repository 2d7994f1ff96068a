import { describe, expect, it } from "vitest";

import {
  isValidReply,
  parseInbound,
  serializeReply,
  type CatalogEntry,
} from "../src/protocol.js";

export const CATALOG: CatalogEntry[] = [
  { id: "s1k1", description: "claimant name", answer_key: "s1k1_fact", stage_id: "S1" },
  { id: "s1k2", description: "claimant address", answer_key: "s1k2_fact", stage_id: "S1" },
  { id: "s2k1", description: "incident date", answer_key: "s2k1_fact", stage_id: "S2" },
];

describe("parseInbound", () => {
  it("parses hello", () => {
    const msg = parseInbound('{"type":"hello","protocol":1,"case_id":"case_a"}');
    expect(msg).toEqual({ type: "hello", protocol: 1, case_id: "case_a" });
  });

  it("parses a full view", () => {
    const msg = parseInbound(
      JSON.stringify({
        type: "view",
        turn: 3,
        current_stage: "S1",
        unmet_mandatory: ["s1k2"],
        unmet_all: ["s1k2", "s2k1"],
        filled_count: 1,
        schema_size: 3,
        last_answer_kind: "fact",
        kiu_catalog: CATALOG,
      }),
    );
    expect(msg?.type).toBe("view");
    if (msg?.type === "view") {
      expect(msg.unmet_mandatory).toEqual(["s1k2"]);
      expect(msg.kiu_catalog).toHaveLength(3);
    }
  });

  it("rejects garbage without throwing", () => {
    expect(parseInbound("not json at all")).toBeNull();
    expect(parseInbound('"just a string"')).toBeNull();
    expect(parseInbound('{"type":"mystery"}')).toBeNull();
    expect(parseInbound('{"type":"view","turn":"NaN"}')).toBeNull();
    expect(parseInbound('{"type":"view","turn":1,"kiu_catalog":[{"id":1}]}')).toBeNull();
  });

  it("parses end with any reason", () => {
    expect(parseInbound('{"type":"end"}')).toEqual({ type: "end", reason: "" });
    expect(parseInbound('{"type":"end","reason":"budget"}')).toEqual({
      type: "end",
      reason: "budget",
    });
  });
});

describe("isValidReply", () => {
  it("accepts the two reply shapes", () => {
    expect(isValidReply({ type: "ready" })).toBe(true);
    expect(isValidReply({ type: "question", text: "", target_keys: [] })).toBe(true);
    expect(
      isValidReply({ type: "question", text: "q", target_keys: ["a", "b"] }),
    ).toBe(true);
  });

  it("rejects everything else", () => {
    expect(isValidReply(null)).toBe(false);
    expect(isValidReply({ type: "question", text: 5, target_keys: [] })).toBe(false);
    expect(isValidReply({ type: "question", text: "q", target_keys: [1] })).toBe(false);
    expect(isValidReply({ type: "question", text: "q" })).toBe(false);
    expect(isValidReply({ type: "banana" })).toBe(false);
  });
});

describe("serializeReply", () => {
  it("round-trips via JSON", () => {
    const line = serializeReply({ type: "question", text: "q", target_keys: ["k"] });
    expect(JSON.parse(line)).toEqual({ type: "question", text: "q", target_keys: ["k"] });
    expect(line).not.toContain("\n");
  });

  it("refuses invalid replies", () => {
    expect(() =>
      serializeReply({ type: "question", text: 9 as unknown as string, target_keys: [] }),
    ).toThrow();
  });
});
