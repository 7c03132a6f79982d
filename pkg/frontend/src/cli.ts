/**
 * CLI: `render --in bands.csv --out fig1.svg [--dpi N] [--include-lag-zero]`
 *
 * Reads the bands table written by the experiment command, validates it and
 * writes a two-panel SVG figure.  --dpi scales the pixel dimensions relative
 * to the default 96 dpi canvas.  Exits nonzero on any validation error, with
 * the row/column of the failure on stderr.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { CsvError, parseBandsCsv } from "./csv.js";
import { DEFAULT_STYLE, renderFigure } from "./render.js";

interface Args {
  input: string;
  output: string;
  dpi: number;
  includeLagZero: boolean;
}

function parseArgs(argv: string[]): Args {
  if (argv[0] !== "render") {
    throw new Error(`unknown command ${JSON.stringify(argv[0] ?? "")}; expected "render"`);
  }
  let input = "";
  let output = "";
  let dpi = 96;
  let includeLagZero = false;
  for (let i = 1; i < argv.length; i++) {
    const a = argv[i];
    if (a === "--in") input = argv[++i] ?? "";
    else if (a === "--out") output = argv[++i] ?? "";
    else if (a === "--dpi") dpi = Number(argv[++i]);
    else if (a === "--include-lag-zero") includeLagZero = true;
    else throw new Error(`unknown flag ${a}`);
  }
  if (!input || !output) throw new Error("both --in and --out are required");
  if (!Number.isFinite(dpi) || dpi <= 0) throw new Error(`--dpi must be a positive number`);
  return { input, output, dpi, includeLagZero };
}

export function run(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    const rows = parseBandsCsv(readFileSync(args.input, "utf-8"));
    const scale = args.dpi / 96;
    const svg = renderFigure(rows, {
      width: Math.round(DEFAULT_STYLE.width * scale),
      height: Math.round(DEFAULT_STYLE.height * scale),
      includeLagZero: args.includeLagZero,
    });
    writeFileSync(args.output, svg);
    console.log(`wrote ${args.output} (${rows.length} lags)`);
    return 0;
  } catch (err) {
    if (err instanceof CsvError || err instanceof Error) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  process.exit(run(process.argv.slice(2)));
}
