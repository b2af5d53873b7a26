#!/usr/bin/env node
/**
 * Usage:
 *   pqa-mis-plots render --kind ar_curves --input results.csv \
 *       [--graph-type er05] --out fig.svg
 *
 * Kinds: ar_curves (results CSV), resource_bars and runs_bars (aggregate
 * CSV). resource_bars writes one image per metric next to --out.
 */

import { FIGURE_KINDS, FigureKind, FigureSpec, render } from "./figures.js";

function parseArgs(argv: string[]): FigureSpec {
  if (argv[0] !== "render") {
    throw new Error(`unknown command "${argv[0] ?? ""}"; expected "render"`);
  }
  const flags = new Map<string, string>();
  for (let i = 1; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key.startsWith("--") || value === undefined) {
      throw new Error(`malformed flag pair near "${key}"`);
    }
    flags.set(key.slice(2), value);
  }
  const kind = flags.get("kind");
  const input = flags.get("input");
  const out = flags.get("out");
  if (!kind || !input || !out) {
    throw new Error("required flags: --kind, --input, --out");
  }
  if (!(FIGURE_KINDS as readonly string[]).includes(kind)) {
    throw new Error(`unknown kind "${kind}"; expected one of ${FIGURE_KINDS.join(", ")}`);
  }
  return {
    kind: kind as FigureKind,
    input,
    out,
    graphType: flags.get("graph-type"),
  };
}

export function main(argv: string[]): number {
  try {
    const spec = parseArgs(argv);
    const written = render(spec);
    for (const path of written) {
      console.log(`wrote ${path}`);
    }
    return 0;
  } catch (error) {
    console.error(`error: ${(error as Error).message}`);
    return 1;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
