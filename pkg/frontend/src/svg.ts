/**
 * Minimal deterministic SVG line/scatter plotter.
 *
 * No timestamps or generated ids: identical input series always produce
 * identical bytes.
 */

export type LineStyle = "black-dotted" | "solid" | "gray-dashed" | "red" | "plain";

export interface Series {
  label: string;
  x: number[];
  y: number[];
  style: LineStyle;
  /** scatter markers instead of a connected line */
  points?: boolean;
}

export interface PlotOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  width?: number;
  height?: number;
}

const STYLE_ATTRS: Record<LineStyle, string> = {
  "black-dotted": 'stroke="#000000" stroke-dasharray="1.5,3"',
  solid: 'stroke="#1f5fbf"',
  "gray-dashed": 'stroke="#888888" stroke-dasharray="7,4"',
  red: 'stroke="#c23b22"',
  plain: 'stroke="#222222"',
};

const MARGIN = { top: 34, right: 16, bottom: 42, left: 64 };

function fmt(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1);
  return String(Number(v.toPrecision(6)));
}

function niceTicks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) {
    const pad = Math.abs(lo) > 0 ? Math.abs(lo) * 0.5 : 0.5;
    return niceTicks(lo - pad, hi + pad, target);
  }
  const rawStep = (hi - lo) / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= rawStep) {
      step = m * mag;
      break;
    }
  }
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
    ticks.push(Math.abs(t) < step * 1e-9 ? 0 : t);
  }
  return ticks;
}

interface Scale {
  (v: number): number;
  lo: number;
  hi: number;
}

function linearScale(lo: number, hi: number, rLo: number, rHi: number): Scale {
  if (hi === lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  const f = ((v: number) => rLo + ((v - lo) / (hi - lo)) * (rHi - rLo)) as Scale;
  f.lo = lo;
  f.hi = hi;
  return f;
}

export function renderSvg(series: Series[], opts: PlotOptions): string {
  const width = opts.width ?? 640;
  const height = opts.height ?? 420;
  const xs = series.flatMap((s) => s.x);
  const ys = series.flatMap((s) => s.y);
  const xScale = linearScale(
    Math.min(...xs),
    Math.max(...xs),
    MARGIN.left,
    width - MARGIN.right,
  );
  const yScale = linearScale(
    Math.min(...ys, 0),
    Math.max(...ys),
    height - MARGIN.bottom,
    MARGIN.top,
  );

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="#ffffff"/>`);
  parts.push(
    `<text x="${width / 2}" y="18" text-anchor="middle" font-size="14">${opts.title}</text>`,
  );

  // axes and ticks
  const x0 = MARGIN.left;
  const x1 = width - MARGIN.right;
  const y0 = height - MARGIN.bottom;
  const y1 = MARGIN.top;
  for (const t of niceTicks(xScale.lo, xScale.hi)) {
    const px = xScale(t);
    parts.push(`<line x1="${px.toFixed(2)}" y1="${y0}" x2="${px.toFixed(2)}" y2="${y1}" stroke="#eeeeee"/>`);
    parts.push(
      `<text x="${px.toFixed(2)}" y="${y0 + 16}" text-anchor="middle">${fmt(t)}</text>`,
    );
  }
  for (const t of niceTicks(yScale.lo, yScale.hi)) {
    const py = yScale(t);
    parts.push(`<line x1="${x0}" y1="${py.toFixed(2)}" x2="${x1}" y2="${py.toFixed(2)}" stroke="#eeeeee"/>`);
    parts.push(
      `<text x="${x0 - 6}" y="${(py + 4).toFixed(2)}" text-anchor="end">${fmt(t)}</text>`,
    );
  }
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="#000000"/>`);
  parts.push(`<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="#000000"/>`);
  if (yScale.lo < 0) {
    const zero = yScale(0);
    parts.push(
      `<line x1="${x0}" y1="${zero.toFixed(2)}" x2="${x1}" y2="${zero.toFixed(2)}" stroke="#bbbbbb" stroke-dasharray="2,2"/>`,
    );
  }
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${height - 8}" text-anchor="middle">${opts.xLabel}</text>`,
  );
  parts.push(
    `<text x="16" y="${(y0 + y1) / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${(y0 + y1) / 2})">${opts.yLabel}</text>`,
  );

  // series
  series.forEach((s, i) => {
    const attrs = STYLE_ATTRS[s.style];
    if (s.points) {
      const fill = attrs.match(/stroke="([^"]+)"/)?.[1] ?? "#000000";
      for (let k = 0; k < s.x.length; k++) {
        parts.push(
          `<circle cx="${xScale(s.x[k]!).toFixed(2)}" cy="${yScale(s.y[k]!).toFixed(2)}" r="2.4" fill="${fill}"/>`,
        );
      }
    } else {
      const pts = s.x
        .map((x, k) => `${xScale(x).toFixed(2)},${yScale(s.y[k]!).toFixed(2)}`)
        .join(" ");
      parts.push(`<polyline fill="none" stroke-width="1.6" ${attrs} points="${pts}"/>`);
    }
    // legend entry
    const ly = MARGIN.top + 6 + i * 16;
    const colour = attrs.match(/stroke="([^"]+)"/)?.[1] ?? "#000000";
    parts.push(`<rect x="${x1 - 150}" y="${ly - 9}" width="10" height="10" fill="${colour}"/>`);
    parts.push(`<text x="${x1 - 135}" y="${ly}">${s.label}</text>`);
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
