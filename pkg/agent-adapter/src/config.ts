/**
 * src/config.ts - adapter configuration: one JSON file plus one API-key
 * environment variable (named in the file, read at request time).
 */

import { readFileSync } from "node:fs";

export const PROFILES = ["pure", "stage_prompted", "softfsm_generation_only"] as const;
export type PromptProfile = (typeof PROFILES)[number];

export interface AdapterConfig {
  endpoint_url: string;
  model_name: string;
  system_prompt_profile: PromptProfile;
  temperature: number;
  timeout_s: number;
  api_key_env: string;
}

export const DEFAULTS = {
  temperature: 0.2,
  timeout_s: 30,
  api_key_env: "ADAPTER_API_KEY",
} as const;

export class ConfigError extends Error {}

function isProfile(value: unknown): value is PromptProfile {
  return typeof value === "string" && (PROFILES as readonly string[]).includes(value);
}

export function parseConfig(text: string): AdapterConfig {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new ConfigError(`config is not valid JSON: ${String(err)}`);
  }
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new ConfigError("config must be a JSON object");
  }
  const raw = doc as Record<string, unknown>;

  const known = new Set([
    "endpoint_url",
    "model_name",
    "system_prompt_profile",
    "temperature",
    "timeout_s",
    "api_key_env",
  ]);
  const unknown = Object.keys(raw).filter((k) => !known.has(k));
  if (unknown.length > 0) {
    throw new ConfigError(`unknown config fields: ${unknown.join(", ")}`);
  }

  if (typeof raw.endpoint_url !== "string" || raw.endpoint_url.length === 0) {
    throw new ConfigError("endpoint_url must be a non-empty string");
  }
  try {
    new URL(raw.endpoint_url);
  } catch {
    throw new ConfigError(`endpoint_url is not a valid URL: ${raw.endpoint_url}`);
  }
  if (typeof raw.model_name !== "string" || raw.model_name.length === 0) {
    throw new ConfigError("model_name must be a non-empty string");
  }
  if (!isProfile(raw.system_prompt_profile)) {
    throw new ConfigError(
      `system_prompt_profile must be one of: ${PROFILES.join(", ")}`,
    );
  }
  const temperature = raw.temperature ?? DEFAULTS.temperature;
  if (typeof temperature !== "number" || temperature < 0) {
    throw new ConfigError("temperature must be a non-negative number");
  }
  const timeout_s = raw.timeout_s ?? DEFAULTS.timeout_s;
  if (typeof timeout_s !== "number" || timeout_s <= 0) {
    throw new ConfigError("timeout_s must be > 0");
  }
  const api_key_env = raw.api_key_env ?? DEFAULTS.api_key_env;
  if (typeof api_key_env !== "string" || api_key_env.length === 0) {
    throw new ConfigError("api_key_env must be a non-empty string");
  }

  return {
    endpoint_url: raw.endpoint_url,
    model_name: raw.model_name,
    system_prompt_profile: raw.system_prompt_profile,
    temperature,
    timeout_s,
    api_key_env,
  };
}

export function loadConfig(path: string): AdapterConfig {
  return parseConfig(readFileSync(path, "utf8"));
}
