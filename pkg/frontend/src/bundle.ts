/** Result-bundle access: manifest, gauge series, snapshots. */

import fs from "node:fs";
import path from "node:path";

import { readCsv, Table } from "./csv.js";

export class MissingColumn extends Error {}
export class MissingSnapshot extends Error {}

export interface GaugeInfo {
  name: string;
  x: number;
}

export interface Manifest {
  version: string;
  gauges: GaugeInfo[];
  files: {
    gauges: string | null;
    steps: string;
    snapshots: Record<string, string>;
  };
}

export interface Bundle {
  dir: string;
  manifest: Manifest;
}

export function openBundle(dir: string): Bundle {
  const manifestPath = path.join(dir, "manifest.json");
  if (!fs.existsSync(manifestPath)) {
    throw new Error(`not a result bundle (no manifest.json): ${dir}`);
  }
  const manifest = JSON.parse(fs.readFileSync(manifestPath, "utf8")) as Manifest;
  return { dir, manifest };
}

export interface GaugeSeries {
  t: number[];
  /** elevation per gauge, keyed by gauge name */
  s: Map<string, number[]>;
}

export function readGauges(bundle: Bundle): GaugeSeries {
  const file = bundle.manifest.files.gauges;
  if (!file) throw new MissingColumn("bundle has no gauge series");
  const table = readCsv(path.join(bundle.dir, file));
  const tIdx = table.columns.indexOf("t");
  if (tIdx < 0) throw new MissingColumn("gauge CSV has no 't' column");
  const s = new Map<string, number[]>();
  table.columns.forEach((name, j) => {
    if (j !== tIdx) s.set(name, table.rows.map((r) => r[j]));
  });
  return { t: table.rows.map((r) => r[tIdx]), s };
}

export function gaugeColumn(series: GaugeSeries, name: string): number[] {
  const col = series.s.get(name);
  if (!col) {
    throw new MissingColumn(
      `gauge ${name} absent; available: ${[...series.s.keys()].join(", ")}`,
    );
  }
  return col;
}

export interface Snapshot {
  t: number;
  x: number[];
  b: number[];
  d: number[];
  v: number[];
  s: number[];
}

export function readSnapshot(bundle: Bundle, t: number): Snapshot {
  const snaps = bundle.manifest.files.snapshots ?? {};
  let file: string | undefined;
  let tKey = NaN;
  for (const [key, name] of Object.entries(snaps)) {
    const tv = Number(key);
    if (Math.abs(tv - t) <= 1e-9 * Math.max(1, Math.abs(t))) {
      file = name;
      tKey = tv;
    }
  }
  if (!file) {
    const have = Object.keys(snaps).join(", ") || "(none)";
    throw new MissingSnapshot(`no snapshot at t=${t}; available: ${have}`);
  }
  const table = readCsv(path.join(bundle.dir, file));
  const get = (name: string) => {
    const j = table.columns.indexOf(name);
    if (j < 0) throw new MissingColumn(`snapshot lacks column ${name}`);
    return table.rows.map((r) => r[j]);
  };
  return { t: tKey, x: get("x"), b: get("b"), d: get("d"), v: get("v"), s: get("s") };
}

/** Experimental overlay file: column t plus one column per gauge. */
export function readExperiment(file: string): Table {
  return readCsv(file);
}
