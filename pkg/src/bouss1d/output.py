"""Result bundle on disk: gauge series, snapshots, step reports, manifest.

All CSV files use '.' decimals, comma separators, and '#'-prefixed header
comment lines declaring units.  Numbers are written with repr-faithful
precision so identical runs produce byte-identical bodies.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .config import RunConfig
from .grid import Bathymetry, Grid, State
from .scenarios import GaugeSeries
from .stepper import StepReport

_FMT = "%.17g"


def _fmt(x: float) -> str:
    return _FMT % x


def _write_csv(path: Path, comment_lines: list[str], header: list[str], rows):
    with open(path, "w", newline="\n") as f:
        for line in comment_lines:
            f.write(f"# {line}\n")
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(_fmt(x) for x in row) + "\n")


@dataclass
class ResultBundle:
    directory: Path
    gauge_csv: Path | None
    steps_csv: Path
    snapshot_csvs: dict[float, Path]
    manifest_json: Path


def snapshot_filename(t: float) -> str:
    return f"snapshot_t{t:.6f}.csv"


def write_bundle(
    out_dir: str | Path,
    config: RunConfig,
    grid: Grid,
    bathy: Bathymetry,
    gauges: GaugeSeries,
    reports: list[StepReport],
    snapshots: dict[float, State],
) -> ResultBundle:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    gauge_csv = None
    gauge_names = [f"g{i}" for i in range(len(gauges.locations))]
    if len(gauges.locations):
        gauge_csv = out / "gauges.csv"
        _write_csv(
            gauge_csv,
            [
                "surface elevation time series; t [s], columns g* [m]",
                "gauge locations [m]: "
                + ", ".join(f"{n}={_fmt(x)}" for n, x in zip(gauge_names, gauges.locations)),
            ],
            ["t"] + gauge_names,
            (np.concatenate([[t], row]) for t, row in zip(gauges.t, gauges.s)),
        )

    steps_csv = out / "steps.csv"
    _write_csv(
        steps_csv,
        ["per-step diagnostics; t [s], E [J/m width / rho], min_depth [m], dt [s]"],
        ["t", "E", "min_depth", "dt"],
        ((r.t, r.energy, r.min_depth, r.dt) for r in reports),
    )

    snap_paths: dict[float, Path] = {}
    for t, state in sorted(snapshots.items()):
        p = out / snapshot_filename(t)
        s = state.d + bathy.b - bathy.H
        _write_csv(
            p,
            [f"field snapshot at t = {_fmt(t)} s; x [m], b [m], d [m], v [m/s], s [m]"],
            ["x", "b", "d", "v", "s"],
            zip(grid.x, bathy.b, state.d, state.v, s),
        )
        snap_paths[t] = p

    manifest = {
        "version": __version__,
        "config": config.to_dict(),
        "grid": {"x_left": grid.x_left, "x_right": grid.x_right, "n_cells": grid.n_cells, "h": grid.h},
        "gauges": [
            {"name": n, "x": float(x)} for n, x in zip(gauge_names, gauges.locations)
        ],
        "files": {
            "gauges": gauge_csv.name if gauge_csv else None,
            "steps": steps_csv.name,
            "snapshots": {(_FMT % t): p.name for t, p in snap_paths.items()},
        },
    }
    manifest_json = out / "manifest.json"
    manifest_json.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")

    return ResultBundle(out, gauge_csv, steps_csv, snap_paths, manifest_json)


def read_csv(path: str | Path) -> tuple[list[str], np.ndarray]:
    """Read one of our CSVs: returns (column names, 2-D float array)."""
    names: list[str] = []
    rows: list[list[float]] = []
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if not names:
                names = line.split(",")
                continue
            rows.append([float(tok) for tok in line.split(",")])
    return names, np.asarray(rows, dtype=float)
