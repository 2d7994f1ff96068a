/**
 * src/endpoint.ts - minimal chat-completions client.
 *
 * Talks to any OpenAI-compatible endpoint. `endpoint_url` is the full
 * completions URL (e.g. https://host/v1/chat/completions). One request
 * per turn, no retries; every failure mode surfaces as EndpointError so
 * the caller can fall back to a no-target question.
 */

import type { AdapterConfig } from "./config.js";

export class EndpointError extends Error {}

export interface ChatRequest {
  system: string;
  user: string;
}

export type CompleteFn = (
  config: AdapterConfig,
  request: ChatRequest,
) => Promise<string>;

export const completeChat: CompleteFn = async (config, request) => {
  const controller = new AbortController();
  const timer = setTimeout(() => controller.abort(), config.timeout_s * 1000);

  const headers: Record<string, string> = {
    "Content-Type": "application/json",
  };
  const apiKey = process.env[config.api_key_env];
  if (apiKey) {
    headers.Authorization = `Bearer ${apiKey}`;
  }

  let response: Response;
  try {
    response = await fetch(config.endpoint_url, {
      method: "POST",
      headers,
      signal: controller.signal,
      body: JSON.stringify({
        model: config.model_name,
        temperature: config.temperature,
        messages: [
          { role: "system", content: request.system },
          { role: "user", content: request.user },
        ],
      }),
    });
  } catch (err) {
    throw new EndpointError(`request failed: ${String(err)}`);
  } finally {
    clearTimeout(timer);
  }

  if (!response.ok) {
    const detail = await response.text().catch(() => "");
    throw new EndpointError(
      `endpoint returned ${response.status}: ${detail.slice(0, 200)}`,
    );
  }

  let data: unknown;
  try {
    data = await response.json();
  } catch (err) {
    throw new EndpointError(`response body is not JSON: ${String(err)}`);
  }

  const content = (data as { choices?: { message?: { content?: unknown } }[] })
    ?.choices?.[0]?.message?.content;
  if (typeof content !== "string") {
    throw new EndpointError("response has no choices[0].message.content string");
  }
  return content;
};
