/** Process-level plumbing: every operation shells out to the core CLI. */

import { spawnSync } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

/**
 * The command that runs the core CLI. Override with WLKIT_CLI (whitespace
 * separated), e.g. `WLKIT_CLI="python3 -m wlkit.cli"` or a `wlkit` binary
 * on PATH.
 */
function cliCommand(): string[] {
  const override = process.env.WLKIT_CLI;
  if (override) {
    return override.split(/\s+/).filter(Boolean);
  }
  return ["python3", "-m", "wlkit.cli"];
}

export function runCli(args: string[]): string {
  const [command, ...prefix] = cliCommand();
  const result = spawnSync(command, [...prefix, ...args], {
    encoding: "utf-8",
    maxBuffer: 256 * 1024 * 1024,
  });
  if (result.error) {
    throw new Error(`failed to launch core CLI: ${result.error.message}`);
  }
  if (result.status !== 0) {
    const detail = (result.stderr || "").trim() || `exit code ${result.status}`;
    throw new Error(`wlkit ${args[0]} failed: ${detail}`);
  }
  return result.stdout;
}

/** Run `body` with a scratch directory that is removed afterwards. */
export function withScratchDir<T>(body: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "wlkit-"));
  try {
    return body(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

export function writeJson(dir: string, name: string, value: unknown): string {
  const path = join(dir, name);
  writeFileSync(path, JSON.stringify(value) + "\n", "utf-8");
  return path;
}

/** Parse the embed command's CSV into a number matrix (feature columns only). */
export function parseEmbeddingCsv(csv: string): number[][] {
  const lines = csv.trim().split("\n");
  const header = lines[0].split(",");
  const featureStart = 2; // problem_index, state_index
  const featureEnd = header[header.length - 1] === "label" ? header.length - 1 : header.length;
  return lines.slice(1).map((line) => {
    const cells = line.split(",");
    return cells.slice(featureStart, featureEnd).map(Number);
  });
}
