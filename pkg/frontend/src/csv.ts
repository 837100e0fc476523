/**
 * Reader for the solver's CSV dialect: '#'-prefixed comment lines, one
 * comma-separated header row, then float rows ('.' decimals).
 */

import fs from "node:fs";

export interface Table {
  columns: string[];
  /** rows[i][j] = value of columns[j] in row i */
  rows: number[][];
}

export function readCsv(path: string): Table {
  const text = fs.readFileSync(path, "utf8");
  const columns: string[] = [];
  const rows: number[][] = [];
  for (const raw of text.split("\n")) {
    const line = raw.trim();
    if (!line || line.startsWith("#")) continue;
    if (columns.length === 0) {
      columns.push(...line.split(","));
      continue;
    }
    const row = line.split(",").map(Number);
    if (row.some((v) => Number.isNaN(v))) {
      throw new Error(`non-numeric row in ${path}: ${line}`);
    }
    if (row.length !== columns.length) {
      throw new Error(`ragged row in ${path}: ${line}`);
    }
    rows.push(row);
  }
  if (columns.length === 0) throw new Error(`no header found in ${path}`);
  return { columns, rows };
}

export function column(table: Table, name: string): number[] {
  const j = table.columns.indexOf(name);
  if (j < 0) throw new Error(`column ${name} not present`);
  return table.rows.map((r) => r[j]);
}
