import { mkdirSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";

import { readCsv } from "./csv.js";
import { FigureData, FigureSpec, buildFigure } from "./figures.js";
import { renderSvg } from "./svg.js";

export interface RenderResult extends FigureData {
  svg: string;
}

/** Pure CSV -> plot data -> SVG; throws before touching the output file. */
export function render(spec: FigureSpec): RenderResult {
  const tables = spec.inputs.map(readCsv);
  const data = buildFigure(spec, tables);
  const svg = renderSvg(data.series, data.options);
  return { ...data, svg };
}

export function renderToFile(spec: FigureSpec): RenderResult {
  const result = render(spec);
  mkdirSync(dirname(spec.output), { recursive: true });
  writeFileSync(spec.output, result.svg, "utf-8");
  return result;
}
