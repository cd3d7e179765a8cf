/**
 * Figure registry: which CSV schema each figure id consumes and how its
 * plotted series are extracted.  All physics numbers come from the
 * simulator's files; the only transforms here are sign flips and
 * discrete differences used for presentation.
 */

import { CsvError, CsvTable, column, requireColumns } from "./csv.js";
import { PlotOptions, Series } from "./svg.js";

export type FigureId =
  | "fig2a"
  | "fig2b"
  | "fig3a"
  | "fig3b"
  | "fig4a"
  | "fig4b"
  | "fig5-left"
  | "fig5-right";

export const FIGURE_IDS: FigureId[] = [
  "fig2a",
  "fig2b",
  "fig3a",
  "fig3b",
  "fig4a",
  "fig4b",
  "fig5-left",
  "fig5-right",
];

export interface FigureSpec {
  fig: FigureId;
  inputs: string[];
  output: string;
}

export interface FigureData {
  series: Series[];
  options: PlotOptions;
}

const TRAJECTORY_SCHEMA = [
  "n", "delta_U", "delta_Q", "work", "entropy_S", "delta_S",
  "landauer_gap", "cum_gap", "mutual_info", "blochx", "blochy", "blochz",
];
const SWEEP_SCHEMA = ["axis", "replica", "sigma_r", "mean_D"];
const SYNCHRONY_SCHEMA = ["n", "sigma_n", "landauer_gap", "mutual_info", "delta_mi"];

/** Caption convention: memoryless run dotted black, intermediate solid,
 * complete-swap gray dashed. */
const COUPLING_STYLES = ["black-dotted", "solid", "gray-dashed"] as const;

function expectInputs(spec: FigureSpec, lo: number, hi: number): void {
  const n = spec.inputs.length;
  if (n < lo || n > hi) {
    const want = lo === hi ? `${lo}` : `${lo}..${hi}`;
    throw new CsvError(`${spec.fig}: expected ${want} input file(s), got ${n}`);
  }
}

function overlay(
  tables: CsvTable[],
  columnName: string,
  yLabel: string,
  title: string,
): FigureData {
  const series: Series[] = tables.map((t, i) => {
    requireColumns(t, TRAJECTORY_SCHEMA);
    return {
      label: t.meta["label"] ?? `series ${i + 1}`,
      x: column(t, "n"),
      y: column(t, columnName),
      style: COUPLING_STYLES[i % COUPLING_STYLES.length]!,
    };
  });
  return { series, options: { title, xLabel: "collision n", yLabel } };
}

export function buildFigure(spec: FigureSpec, tables: CsvTable[]): FigureData {
  switch (spec.fig) {
    case "fig2a": {
      expectInputs(spec, 1, 1);
      const t = tables[0]!;
      requireColumns(t, ["n", "trace_distance", "fidelity"]);
      return {
        series: [
          { label: "distance D", x: column(t, "n"), y: column(t, "trace_distance"), style: "plain" },
          { label: "fidelity F", x: column(t, "n"), y: column(t, "fidelity"), style: "red" },
        ],
        options: {
          title: "Approach to the average environment state",
          xLabel: "collision n",
          yLabel: "D, F",
        },
      };
    }
    case "fig2b": {
      expectInputs(spec, 1, 1);
      const t = tables[0]!;
      requireColumns(t, TRAJECTORY_SCHEMA);
      return {
        series: [
          { label: "energy change", x: column(t, "n"), y: column(t, "delta_U"), style: "solid" },
          { label: "heat", x: column(t, "n"), y: column(t, "delta_Q"), style: "plain" },
          { label: "work", x: column(t, "n"), y: column(t, "work"), style: "red" },
        ],
        options: {
          title: "Per-collision energy bookkeeping",
          xLabel: "collision n",
          yLabel: "energy (dimensionless)",
        },
      };
    }
    case "fig3a": {
      expectInputs(spec, 1, 1);
      const t = tables[0]!;
      requireColumns(t, SWEEP_SCHEMA);
      return {
        series: [
          {
            label: "sigma_r",
            x: column(t, "axis"),
            y: column(t, "sigma_r"),
            style: "plain",
            points: true,
          },
          {
            label: "mean distance",
            x: column(t, "axis"),
            y: column(t, "mean_D"),
            style: "red",
            points: true,
          },
        ],
        options: {
          title: "Asymptotic fluctuations vs preparation noise",
          xLabel: "sigma_beta",
          yLabel: "sigma_r, mean D",
        },
      };
    }
    case "fig3b": {
      expectInputs(spec, 1, 1);
      const t = tables[0]!;
      requireColumns(t, ["omega_s", "omega_e", "area"]);
      const ws = column(t, "omega_s");
      const we = column(t, "omega_e");
      const area = column(t, "area");
      const groups = [...new Set(ws)].sort((a, b) => a - b);
      const series: Series[] = groups.map((w, i) => {
        const idx = ws.map((v, k) => [v, k] as const).filter(([v]) => v === w).map(([, k]) => k);
        return {
          label: `omega_s = ${w}`,
          x: idx.map((k) => we[k]!),
          y: idx.map((k) => area[k]!),
          style: COUPLING_STYLES[i % COUPLING_STYLES.length]!,
        };
      });
      return {
        series,
        options: {
          title: "Fluctuation-cloud area vs level spacings",
          xLabel: "omega_e",
          yLabel: "area",
        },
      };
    }
    case "fig4a": {
      expectInputs(spec, 1, 3);
      return overlay(tables, "landauer_gap", "beta dQ - dS", "Instantaneous dissipation bound");
    }
    case "fig4b": {
      expectInputs(spec, 1, 3);
      return overlay(tables, "cum_gap", "beta Q - S", "Cumulative dissipation bound");
    }
    case "fig5-left": {
      expectInputs(spec, 1, 1);
      const t = tables[0]!;
      requireColumns(t, SYNCHRONY_SCHEMA);
      return {
        series: [
          { label: "sigma_n", x: column(t, "n"), y: column(t, "sigma_n"), style: "solid" },
          { label: "bound gap", x: column(t, "n"), y: column(t, "landauer_gap"), style: "plain" },
          { label: "mutual info", x: column(t, "n"), y: column(t, "mutual_info"), style: "red" },
        ],
        options: {
          title: "Backflow, bound gap and correlations",
          xLabel: "collision n",
          yLabel: "dimensionless",
        },
      };
    }
    case "fig5-right": {
      expectInputs(spec, 1, 1);
      const t = tables[0]!;
      requireColumns(t, SYNCHRONY_SCHEMA);
      // bound check shown with reversed sign, against the correlation increments
      const negGap = column(t, "landauer_gap").map((v) => -v);
      return {
        series: [
          { label: "-(beta dQ - dS)", x: column(t, "n"), y: negGap, style: "plain" },
          { label: "delta mutual info", x: column(t, "n"), y: column(t, "delta_mi"), style: "solid" },
        ],
        options: {
          title: "Reversed-sign bound vs correlation change",
          xLabel: "collision n",
          yLabel: "dimensionless",
        },
      };
    }
  }
}
