#!/usr/bin/env python3
"""Grid study of the trapezoidal-bar benchmark: run a sequence of spacings,
write one result bundle per grid, and report the pairwise gauge differences.

The long reference run (T=70) is only stable at the conventional Courant
reading of the time step (dt = CFL*h/sqrt(gH)); pass --courant to use it.

Usage:
  python scripts/dingemans_study.py --h 0.2 --h 0.1 --Tend 20 --out results/dinge
  python scripts/dingemans_study.py --h 0.1 --Tend 70 --courant --out results/long
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from bouss1d.cli import cmd_run, gauge_l2_difference
from bouss1d.config import parse_config
from bouss1d.errors import BlowUp
from bouss1d.output import read_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--h", type=float, action="append", required=True)
    ap.add_argument("--Tend", type=float, default=20.0)
    ap.add_argument("--set", default="set3")
    ap.add_argument("--lambda", type=float, default=0.1, dest="lambda0")
    ap.add_argument("--cfl", type=float, default=0.2)
    ap.add_argument("--courant", action="store_true",
                    help="normalize the step by the offshore wave speed sqrt(gH)")
    ap.add_argument("--gauge", type=int, default=0)
    ap.add_argument("--out", default="results/dingemans")
    args = ap.parse_args()

    cfl = args.cfl / np.sqrt(9.81 * 0.8) if args.courant else args.cfl
    gauge_files = []
    for h in args.h:
        out = Path(args.out) / f"h{h:g}"
        cfg = parse_config({
            "scenario": "dingemans",
            "h": h,
            "cfl": cfl,
            "lambda0": args.lambda0,
            "param_set": args.set,
            "t_end": args.Tend,
            "out_dir": str(out),
            "snapshots": [args.Tend],
        })
        try:
            bundle, reports = cmd_run(cfg)
        except BlowUp as exc:
            print(f"h={h:g}: {exc} (try --courant or a finer grid)")
            continue
        E = np.array([r.energy for r in reports])
        print(f"h={h:g}: {len(reports) - 1} steps, max E/E0 = {E.max() / E[0]:.5f} -> {out}")
        gauge_files.append((h, bundle.gauge_csv))

    if len(gauge_files) > 1:
        print(f"\npairwise L2 differences at gauge {args.gauge}:")
        _, ref = read_csv(gauge_files[0][1])
        t_ref = ref[:, 0]
        col = 1 + args.gauge
        prev = None
        for h, path in gauge_files:
            _, data = read_csv(path)
            s = np.interp(t_ref, data[:, 0], data[:, col])
            if prev is not None:
                d = gauge_l2_difference(t_ref, prev[1], t_ref, s)
                print(f"  h={prev[0]:g} vs h={h:g}: {d:.6e}")
            prev = (h, s)


if __name__ == "__main__":
    main()
