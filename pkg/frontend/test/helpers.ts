import fs from "node:fs";
import os from "node:os";
import path from "node:path";

export interface SyntheticBundle {
  dir: string;
  t: number[];
  g0: number[];
  g1: number[];
  snapshot: { x: number[]; b: number[]; d: number[]; v: number[]; s: number[] };
}

/** Write a miniature result bundle in the solver's exact on-disk format. */
export function makeBundle(): SyntheticBundle {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "bundle-"));
  const n = 40;
  const t = Array.from({ length: n }, (_, i) => i * 0.25);
  const g0 = t.map((tv) => 0.02 * Math.cos(1.3 * tv));
  const g1 = t.map((tv) => 0.015 * Math.sin(0.9 * tv + 0.4));

  const gaugeLines = [
    "# surface elevation time series; t [s], columns g* [m]",
    "# gauge locations [m]: g0=3.04, g1=9.44",
    "t,g0,g1",
    ...t.map((tv, i) => [tv, g0[i], g1[i]].join(",")),
  ];
  fs.writeFileSync(path.join(dir, "gauges.csv"), gaugeLines.join("\n") + "\n");

  const m = 24;
  const x = Array.from({ length: m }, (_, i) => -10 + i);
  const b = x.map((xv) => (xv > 0 ? 0.5 : 0));
  const d = x.map((xv, i) => 0.8 - b[i] + 0.01 * Math.sin(xv));
  const v = x.map((xv) => 0.05 * Math.cos(xv));
  const s = x.map((_, i) => d[i] + b[i] - 0.8);
  const snapLines = [
    "# field snapshot at t = 5 s; x [m], b [m], d [m], v [m/s], s [m]",
    "x,b,d,v,s",
    ...x.map((_, i) => [x[i], b[i], d[i], v[i], s[i]].join(",")),
  ];
  fs.writeFileSync(path.join(dir, "snapshot_t5.000000.csv"), snapLines.join("\n") + "\n");

  fs.writeFileSync(
    path.join(dir, "steps.csv"),
    "# per-step diagnostics\nt,E,min_depth,dt\n0,1,0.8,0.25\n",
  );

  const manifest = {
    version: "0.1.0",
    config: {},
    grid: { x_left: -10, x_right: 14, n_cells: m, h: 1.0 },
    gauges: [
      { name: "g0", x: 3.04 },
      { name: "g1", x: 9.44 },
    ],
    files: {
      gauges: "gauges.csv",
      steps: "steps.csv",
      snapshots: { "5": "snapshot_t5.000000.csv" },
    },
  };
  fs.writeFileSync(path.join(dir, "manifest.json"), JSON.stringify(manifest, null, 2));
  return { dir, t, g0, g1, snapshot: { x, b, d, v, s } };
}
