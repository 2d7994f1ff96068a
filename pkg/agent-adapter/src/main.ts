#!/usr/bin/env node
/**
 * src/main.ts - CLI entry point.
 *
 *   node dist/main.js --config adapter.json
 *   node dist/main.js --offline-echo            # test mode, no network
 *
 * Launch it from the harness with:
 *   inquest run ... --agent external --bridge-command "node dist/main.js --offline-echo"
 */

import { parseArgs } from "node:util";

import { ConfigError, loadConfig, type AdapterConfig } from "./config.js";
import { serve } from "./serve.js";

function usage(): string {
  return [
    "usage: main.js [--config <file>] [--offline-echo]",
    "",
    "  --config <file>   adapter configuration JSON",
    "  --offline-echo    answer deterministically without a network endpoint",
  ].join("\n");
}

async function main(): Promise<number> {
  let values;
  try {
    ({ values } = parseArgs({
      options: {
        config: { type: "string" },
        "offline-echo": { type: "boolean", default: false },
        help: { type: "boolean", default: false },
      },
    }));
  } catch (err) {
    process.stderr.write(`${String(err)}\n${usage()}\n`);
    return 2;
  }
  if (values.help) {
    process.stdout.write(usage() + "\n");
    return 0;
  }

  const offlineEcho = values["offline-echo"] ?? false;
  let config: AdapterConfig | null = null;
  if (values.config !== undefined) {
    try {
      config = loadConfig(values.config);
    } catch (err) {
      const detail = err instanceof ConfigError ? err.message : String(err);
      process.stderr.write(`adapter: bad config: ${detail}\n`);
      return 2;
    }
  } else if (!offlineEcho) {
    process.stderr.write(`adapter: --config is required unless --offline-echo\n${usage()}\n`);
    return 2;
  }

  return serve({ config, offlineEcho });
}

main().then(
  (code) => process.exit(code),
  (err) => {
    process.stderr.write(`adapter: fatal: ${String(err)}\n`);
    process.exit(1);
  },
);
