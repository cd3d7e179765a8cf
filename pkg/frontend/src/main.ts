/**
 * CLI: render one figure replica from simulator CSV files.
 *
 *   node dist/src/main.js --fig fig4a --in t0.csv t1.csv t2.csv --out fig4a.svg
 */

import { FIGURE_IDS, FigureId, FigureSpec } from "./figures.js";
import { renderToFile } from "./render.js";

function parseArgs(argv: string[]): FigureSpec {
  let fig: string | null = null;
  const inputs: string[] = [];
  let output: string | null = null;
  let i = 0;
  while (i < argv.length) {
    const arg = argv[i]!;
    if (arg === "--fig") {
      fig = argv[++i] ?? null;
      i++;
    } else if (arg === "--in") {
      i++;
      while (i < argv.length && !argv[i]!.startsWith("--")) {
        inputs.push(argv[i]!);
        i++;
      }
    } else if (arg === "--out") {
      output = argv[++i] ?? null;
      i++;
    } else {
      throw new Error(`unknown argument ${arg}`);
    }
  }
  if (fig === null || output === null || inputs.length === 0) {
    throw new Error("usage: --fig <id> --in <csv...> --out <path>");
  }
  if (!(FIGURE_IDS as string[]).includes(fig)) {
    throw new Error(`unknown figure id ${fig}; expected one of ${FIGURE_IDS.join(", ")}`);
  }
  return { fig: fig as FigureId, inputs, output };
}

try {
  const spec = parseArgs(process.argv.slice(2));
  const result = renderToFile(spec);
  console.log(`${spec.fig}: ${result.series.length} series -> ${spec.output}`);
} catch (err) {
  console.error(`error: ${err instanceof Error ? err.message : err}`);
  process.exit(1);
}
