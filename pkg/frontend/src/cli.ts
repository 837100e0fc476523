#!/usr/bin/env node
/**
 * plot-gauges   --bundle DIR [--exp CSV] [--shift F] [--gauges g0,g2]
 *               [--tmin F] [--tmax F] [--out DIR] [--extract-json PATH]
 * plot-snapshot --bundle DIR --t F [--xmin F] [--xmax F]
 *               [--out FILE] [--extract-json PATH]
 *
 * --extract-json dumps the exact arrays that would be drawn (headless
 * data-fidelity mode) instead of requiring image inspection.
 */

import fs from "node:fs";
import path from "node:path";

import { openBundle } from "./bundle.js";
import {
  buildGaugeFigures,
  buildSnapshotFigure,
  plotGauges,
  plotSnapshot,
} from "./plots.js";

function parseArgs(argv: string[]): Map<string, string> {
  const out = new Map<string, string>();
  for (let i = 0; i < argv.length; i++) {
    const a = argv[i];
    if (!a.startsWith("--")) throw new Error(`unexpected argument ${a}`);
    const key = a.slice(2);
    const val = argv[i + 1];
    if (val === undefined || val.startsWith("--")) throw new Error(`missing value for --${key}`);
    out.set(key, val);
    i++;
  }
  return out;
}

function need(args: Map<string, string>, key: string): string {
  const v = args.get(key);
  if (v === undefined) throw new Error(`--${key} is required`);
  return v;
}

const num = (v: string | undefined) => (v === undefined ? undefined : Number(v));

export function main(argv: string[], invokedAs: string): number {
  let command = invokedAs;
  if (!command.startsWith("plot-")) {
    command = argv[0] ?? "";
    argv = argv.slice(1);
  }
  try {
    const args = parseArgs(argv);
    const bundle = openBundle(need(args, "bundle"));

    if (command === "plot-gauges") {
      const job = {
        bundleDir: need(args, "bundle"),
        gauges: args.get("gauges")?.split(","),
        tMin: num(args.get("tmin")),
        tMax: num(args.get("tmax")),
        shift: num(args.get("shift")) ?? 0,
        experimentCsv: args.get("exp"),
        outDir: args.get("out") ?? path.join(need(args, "bundle"), "plots"),
      };
      const extract = args.get("extract-json");
      if (extract) {
        const figures = buildGaugeFigures(bundle, job);
        fs.writeFileSync(extract, JSON.stringify({ figures }, null, 1) + "\n");
        console.log(`extracted ${figures.length} figure(s) -> ${extract}`);
        return 0;
      }
      const files = plotGauges(bundle, job);
      files.forEach((f) => console.log(f));
      return 0;
    }

    if (command === "plot-snapshot") {
      const job = {
        bundleDir: need(args, "bundle"),
        t: Number(need(args, "t")),
        xMin: num(args.get("xmin")),
        xMax: num(args.get("xmax")),
        outFile:
          args.get("out") ?? path.join(need(args, "bundle"), `snapshot_t${need(args, "t")}.svg`),
      };
      const extract = args.get("extract-json");
      if (extract) {
        const figure = buildSnapshotFigure(bundle, job);
        fs.writeFileSync(extract, JSON.stringify({ figure }, null, 1) + "\n");
        console.log(`extracted snapshot -> ${extract}`);
        return 0;
      }
      console.log(plotSnapshot(bundle, job));
      return 0;
    }

    console.error(`unknown command ${command}; use plot-gauges or plot-snapshot`);
    return 2;
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 1;
  }
}

const invoked = path.basename(process.argv[1] ?? "");
if (invoked === "cli.js" || invoked.startsWith("plot-")) {
  process.exit(main(process.argv.slice(2), invoked));
}
