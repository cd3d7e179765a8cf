/**
 * Reader for the simulator's CSV files: `#`-prefixed metadata comments,
 * a header row, then numeric rows.
 */

import { readFileSync } from "node:fs";

export interface CsvTable {
  path: string;
  meta: Record<string, string>;
  columns: string[];
  /** column name -> numeric values, in file order */
  data: Record<string, number[]>;
  rowCount: number;
}

export class CsvError extends Error {}

export function parseCsv(text: string, path = "<string>"): CsvTable {
  const meta: Record<string, string> = {};
  let columns: string[] | null = null;
  const rows: number[][] = [];

  for (const rawLine of text.split("\n")) {
    const line = rawLine.trimEnd();
    if (line === "") continue;
    if (line.startsWith("#")) {
      const body = line.slice(1).trim();
      const eq = body.indexOf("=");
      if (eq > 0) meta[body.slice(0, eq).trim()] = body.slice(eq + 1);
      continue;
    }
    if (columns === null) {
      columns = line.split(",").map((c) => c.trim());
      continue;
    }
    const parts = line.split(",");
    if (parts.length !== columns.length) {
      throw new CsvError(
        `${path}: row has ${parts.length} fields, header has ${columns.length}`,
      );
    }
    const row = parts.map((p) => {
      const v = Number(p);
      if (!Number.isFinite(v)) throw new CsvError(`${path}: non-numeric value ${p}`);
      return v;
    });
    rows.push(row);
  }

  if (columns === null) throw new CsvError(`${path}: no header row`);
  if (rows.length === 0) throw new CsvError(`${path}: no data rows`);

  const data: Record<string, number[]> = {};
  columns.forEach((name, i) => {
    data[name] = rows.map((r) => r[i]!);
  });
  return { path, meta, columns, data, rowCount: rows.length };
}

export function readCsv(path: string): CsvTable {
  return parseCsv(readFileSync(path, "utf-8"), path);
}

/** Fail with the full expected schema when a column is missing. */
export function requireColumns(table: CsvTable, required: string[]): void {
  const missing = required.filter((c) => !(c in table.data));
  if (missing.length > 0) {
    throw new CsvError(
      `${table.path}: missing column(s) ${missing.join(", ")}; ` +
        `expected schema: ${required.join(",")}`,
    );
  }
}

export function column(table: CsvTable, name: string): number[] {
  const values = table.data[name];
  if (values === undefined) {
    throw new CsvError(`${table.path}: missing column ${name}`);
  }
  return values;
}
