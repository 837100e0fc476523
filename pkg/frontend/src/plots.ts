/**
 * Figure builders.  Gauge figures show the simulated surface elevation,
 * shifted in time by a user constant, optionally overlaid with experimental
 * measurements; when an overlay is present both curves are cut to the time
 * interval where they overlap.  A headless extraction mode exposes exactly
 * the arrays that would be drawn.
 */

import fs from "node:fs";
import path from "node:path";

import {
  Bundle,
  MissingColumn,
  gaugeColumn,
  readExperiment,
  readGauges,
  readSnapshot,
} from "./bundle.js";
import { renderChart, Series } from "./svg.js";

export interface GaugePlotJob {
  bundleDir: string;
  gauges?: string[]; // default: all in manifest order
  tMin?: number;
  tMax?: number;
  shift: number; // added to simulation time before plotting
  experimentCsv?: string;
  outDir: string;
}

export interface PlottedSeries {
  label: string;
  t: number[];
  s: number[];
}

export interface GaugeFigure {
  gauge: string;
  x: number;
  file: string;
  series: PlottedSeries[];
}

function windowIndices(t: number[], lo: number, hi: number): number[] {
  const idx: number[] = [];
  for (let i = 0; i < t.length; i++) if (t[i] >= lo && t[i] <= hi) idx.push(i);
  return idx;
}

const pick = (a: number[], idx: number[]) => idx.map((i) => a[i]);

export function buildGaugeFigures(bundle: Bundle, job: GaugePlotJob): GaugeFigure[] {
  const series = readGauges(bundle);
  const manifestGauges = bundle.manifest.gauges;
  const wanted = job.gauges ?? manifestGauges.map((g) => g.name);

  let exp: { t: number[]; byName: Map<string, number[]> } | undefined;
  if (job.experimentCsv) {
    const table = readExperiment(job.experimentCsv);
    const tIdx = table.columns.indexOf("t");
    if (tIdx < 0) throw new MissingColumn("experiment CSV has no 't' column");
    const byName = new Map<string, number[]>();
    // align by column name when names match, else by gauge position
    table.columns.forEach((name, j) => {
      if (j !== tIdx) byName.set(name, table.rows.map((r) => r[j]));
    });
    if (!manifestGauges.some((g) => byName.has(g.name))) {
      const dataCols = table.columns.filter((_, j) => j !== tIdx);
      manifestGauges.forEach((g, i) => {
        if (i < dataCols.length) byName.set(g.name, table.rows.map((r) => r[table.columns.indexOf(dataCols[i])]));
      });
    }
    exp = { t: table.rows.map((r) => r[tIdx]), byName };
  }

  const figures: GaugeFigure[] = [];
  for (const name of wanted) {
    const info = manifestGauges.find((g) => g.name === name);
    if (!info) {
      throw new MissingColumn(
        `gauge ${name} not in manifest; available: ${manifestGauges.map((g) => g.name).join(", ")}`,
      );
    }
    const simS = gaugeColumn(series, name);
    const simT = series.t.map((t) => t + job.shift);

    let lo = job.tMin ?? -Infinity;
    let hi = job.tMax ?? Infinity;
    const expS = exp?.byName.get(name);
    if (exp && expS) {
      lo = Math.max(lo, Math.min(simT[0], simT[simT.length - 1]), Math.min(exp.t[0], exp.t[exp.t.length - 1]));
      hi = Math.min(hi, Math.max(simT[0], simT[simT.length - 1]), Math.max(exp.t[0], exp.t[exp.t.length - 1]));
    }
    const simIdx = windowIndices(simT, lo, hi);
    if (simIdx.length === 0) throw new Error(`empty time window for gauge ${name}`);

    const plotted: PlottedSeries[] = [
      { label: "simulation", t: pick(simT, simIdx), s: pick(simS, simIdx) },
    ];
    if (exp && expS) {
      const expIdx = windowIndices(exp.t, lo, hi);
      plotted.push({ label: "experiment", t: pick(exp.t, expIdx), s: pick(expS, expIdx) });
    }
    figures.push({ gauge: name, x: info.x, file: `gauge_${name}.svg`, series: plotted });
  }
  return figures;
}

export function plotGauges(bundle: Bundle, job: GaugePlotJob): string[] {
  const figures = buildGaugeFigures(bundle, job);
  fs.mkdirSync(job.outDir, { recursive: true });
  const written: string[] = [];
  for (const fig of figures) {
    const colors = ["#1f77b4", "#ff7f0e"];
    const svg = renderChart({
      title: `surface elevation at x = ${fig.x} m (${fig.gauge})`,
      xLabel: "t [s]",
      yLabel: "s [m]",
      series: fig.series.map(
        (p, i): Series => ({
          label: p.label,
          x: p.t,
          y: p.s,
          color: colors[i % colors.length],
          dashed: i > 0,
        }),
      ),
    });
    const out = path.join(job.outDir, fig.file);
    fs.writeFileSync(out, svg);
    written.push(out);
  }
  return written;
}

export interface SnapshotPlotJob {
  bundleDir: string;
  t: number;
  xMin?: number;
  xMax?: number;
  outFile: string;
}

export interface SnapshotFigure {
  t: number;
  x: number[];
  s: number[];
  bottom: number[];
}

export function buildSnapshotFigure(bundle: Bundle, job: SnapshotPlotJob): SnapshotFigure {
  const snap = readSnapshot(bundle, job.t);
  const lo = job.xMin ?? -Infinity;
  const hi = job.xMax ?? Infinity;
  const idx = windowIndices(snap.x, lo, hi);
  if (idx.length === 0) throw new Error("empty x window");
  return {
    t: snap.t,
    x: pick(snap.x, idx),
    s: pick(snap.s, idx),
    bottom: pick(snap.b, idx),
  };
}

export function plotSnapshot(bundle: Bundle, job: SnapshotPlotJob): string {
  const fig = buildSnapshotFigure(bundle, job);
  // scale the bottom into the elevation band so both fit one frame
  const sMax = Math.max(...fig.s.map(Math.abs), 1e-9);
  const bMax = Math.max(...fig.bottom.map(Math.abs), 1e-9);
  const scale = (0.8 * sMax) / bMax;
  const svg = renderChart({
    title: `surface elevation at t = ${fig.t} s`,
    xLabel: "x [m]",
    yLabel: "s [m]",
    series: [
      { label: "surface", x: fig.x, y: fig.s, color: "#1f77b4" },
      {
        label: `bottom (x${scale.toExponential(1)})`,
        x: fig.x,
        y: fig.bottom.map((b) => b * scale),
        color: "#8c564b",
        dashed: true,
      },
    ],
  });
  fs.mkdirSync(path.dirname(path.resolve(job.outFile)), { recursive: true });
  fs.writeFileSync(job.outFile, svg);
  return job.outFile;
}
