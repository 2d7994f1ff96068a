/**
 * src/serve.ts - the stdio loop: read harness messages line by line,
 * write exactly one reply per hello/view.
 *
 * Unknown or malformed inbound lines are logged to stderr and skipped;
 * the loop only ends on `end`, stdin EOF, or a broken output stream.
 */

import { createInterface } from "node:readline";
import type { Readable, Writable } from "node:stream";

import { endpointQuestion, offlineEchoQuestion } from "./agent.js";
import type { AdapterConfig } from "./config.js";
import { completeChat, type CompleteFn } from "./endpoint.js";
import {
  isValidReply,
  serializeReply,
  type OutboundMessage,
  type ViewMessage,
} from "./protocol.js";
import { parseInbound } from "./protocol.js";

export interface ServeOptions {
  config: AdapterConfig | null;
  offlineEcho: boolean;
  input?: Readable;
  output?: Writable;
  errorOutput?: Writable;
  complete?: CompleteFn;
}

async function answerView(options: ServeOptions, view: ViewMessage) {
  if (options.offlineEcho || options.config === null) {
    return offlineEchoQuestion(view);
  }
  return endpointQuestion(options.config, view, options.complete ?? completeChat);
}

export async function serve(options: ServeOptions): Promise<number> {
  const input = options.input ?? process.stdin;
  const output = options.output ?? process.stdout;
  const errors = options.errorOutput ?? process.stderr;

  const send = (reply: OutboundMessage) => {
    output.write(serializeReply(reply) + "\n");
  };

  const reader = createInterface({ input, crlfDelay: Infinity });
  for await (const line of reader) {
    if (line.trim().length === 0) continue;
    const message = parseInbound(line);
    if (message === null) {
      errors.write(`adapter: ignoring unrecognized line: ${line.slice(0, 120)}\n`);
      continue;
    }
    if (message.type === "hello") {
      send({ type: "ready" });
    } else if (message.type === "view") {
      const reply = await answerView(options, message);
      // belt and braces: never let a bug put a bad line on the wire
      if (!isValidReply(reply)) {
        send({
          type: "question",
          text: "[adapter error] Could you tell me anything not yet covered?",
          target_keys: [],
        });
        continue;
      }
      send(reply);
    } else {
      return 0; // end
    }
  }
  return 0; // EOF
}
