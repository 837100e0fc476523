"""Command-line surface: run, dispersion, fit, check, converge.

Exit codes: 0 success, 2 configuration error, 3 blow-up, 4 check failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .config import RunConfig, load_config, parse_config
from .dispersion import (
    error_curve,
    fit_params,
    get_param_set,
    omega_euler,
    omega_model,
    sweep_workers,
)
from .dispersive import build_coeffs
from .errors import BlowUp, Bouss1dError, ConfigError
from .grid import State
from .output import read_csv, write_bundle
from .scenarios import build_scenario_fields, builtin_scenario
from .stepper import OperatorCache, imex_step, run, total_mass
from .swe import DiffusionConfig, ad_interface_production, shuffle_terms

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BLOWUP = 3
EXIT_CHECK = 4


def cmd_run(config: RunConfig, out_dir: str | None = None):
    scenario = config.effective_scenario()
    grid = scenario.make_grid()
    snapshots: dict[float, State] = {}
    wanted = sorted(set(config.snapshots))

    def capture(step, t, state):
        while wanted and t >= wanted[0] - 1e-12:
            snapshots[wanted.pop(0)] = state.copy()

    final, reports, gauges = run(
        scenario,
        params=config.param_set,
        grid=grid,
        callbacks=[capture],
        g=config.gravity,
    )
    from .scenarios import build_bathymetry

    bathy = build_bathymetry(scenario, grid)
    bundle = write_bundle(
        out_dir or config.out_dir, config, grid, bathy, gauges, reports, snapshots
    )
    return bundle, reports


def cmd_dispersion(pset_or_name, k_max: float, n: int, kind: str, out_path=None):
    """Error-curve CSV: k, omega_euler, omega_model, rel_err, abs_err."""
    pset = get_param_set(pset_or_name)
    curve = error_curve(pset, 0.0, k_max, n, "relative")
    k = curve.k
    w_e = omega_euler(k)
    w_m = omega_model(k, pset)
    rel = np.abs(w_m - w_e) / w_e
    ab = np.abs(w_m - w_e)
    lines = ["# dispersion error curve (nondimensional); columns: k, omega_euler, omega_model, rel_err, abs_err"]
    lines.append(f"# params: {pset.name} alpha_t={pset.alpha_t!r} beta_t={pset.beta_t!r} gamma_t={pset.gamma_t!r}")
    lines.append("k,omega_euler,omega_model,rel_err,abs_err")
    for row in zip(k, w_e, w_m, rel, ab):
        lines.append(",".join("%.17g" % x for x in row))
    text = "\n".join(lines) + "\n"
    if out_path:
        Path(out_path).write_text(text)
    reported = float(np.max(rel)) if kind.startswith("rel") else float(np.max(ab))
    return text, reported


def cmd_fit(k_min, k_max, kind, alpha_free, n=1000, resolution=25):
    pset = fit_params(
        k_min, k_max, kind=kind, alpha_free=alpha_free,
        sweep_resolution=resolution, n_samples=n,
    )
    achieved = error_curve(pset, k_min, k_max, n, kind).max_error
    rel_level = error_curve(pset, k_min, k_max, n, "relative").max_error
    return pset, achieved, rel_level


def cmd_check(scenario_name: str, h: float = 0.1, g: float = 9.81, n_random: int = 200):
    """Well-balance, entropy-identity, and diffusion-sign checks on a scenario.

    Returns (ok, report_lines).
    """
    scenario = builtin_scenario(scenario_name).with_overrides(h=h)
    try:
        grid = scenario.make_grid()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    from .scenarios import build_bathymetry

    bathy = build_bathymetry(scenario, grid)
    lines = []
    ok = True

    # 1. entropy-conservation identity on random states over this bathymetry
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(n_random):
        d = rng.uniform(0.1, 2.0, grid.n_cells)
        v = rng.uniform(-1.0, 1.0, grid.n_cells)
        st = State(d, d * v)
        lhs, rhs = shuffle_terms(st, bathy, g)
        scale = max(np.abs(lhs).max(), np.abs(rhs).max(), 1e-300)
        worst = max(worst, float(np.abs(lhs - rhs).max() / scale))
    passed = worst <= 1e-12
    ok &= passed
    lines.append(f"entropy-flux identity: max residual {worst:.3e} (tol 1e-12) "
                 f"{'PASS' if passed else 'FAIL'}")

    # 2. lake at rest, 1000 production steps
    coeffs = build_coeffs(bathy, g, get_param_set(scenario.param_set))
    ops = OperatorCache.build(coeffs, grid)
    cfg = DiffusionConfig(scenario.lambda0, scenario.adaptive_lambda)
    state = State(bathy.h_s.copy(), np.zeros(grid.n_cells))
    dt = scenario.cfl * grid.h
    for _ in range(1000):
        state = imex_step(state, bathy, coeffs, cfg, g, grid.h, dt, ops)
    drift = float(np.abs(state.d + bathy.b - bathy.H).max())
    vmax = float(np.abs(state.v).max())
    passed = drift <= 1e-12 and vmax <= 1e-12
    ok &= passed
    lines.append(f"lake-at-rest 1000 steps: max|d+b-H| {drift:.3e}, max|v| {vmax:.3e} "
                 f"(tol 1e-12) {'PASS' if passed else 'FAIL'}")

    # 3. diffusion entropy-production sign
    worst_ad = -np.inf
    cfg_ad = DiffusionConfig(scenario.lambda0 or 0.1)
    for _ in range(n_random):
        d = rng.uniform(0.1, 2.0, grid.n_cells)
        v = rng.uniform(-1.0, 1.0, grid.n_cells)
        st = State(d, d * v)
        worst_ad = max(worst_ad, float(ad_interface_production(st, bathy, cfg_ad, g).max()))
    passed = worst_ad <= 0.0
    ok &= passed
    lines.append(f"diffusion sign: max interface production {worst_ad:.3e} (<= 0) "
                 f"{'PASS' if passed else 'FAIL'}")
    return ok, lines


def gauge_l2_difference(t_ref, s_ref, t_other, s_other) -> float:
    """Discrete L2 norm of the difference after resampling to t_ref."""
    resampled = np.interp(t_ref, t_other, s_other)
    dt = np.diff(t_ref, prepend=t_ref[0] - (t_ref[1] - t_ref[0]))
    return float(np.sqrt(np.sum(dt * (s_ref - resampled) ** 2)))


def cmd_converge(scenario_name: str, h_list, gauge_index: int = 0, t_end=None, cfl=None):
    """Pairwise gauge-series L2 differences between consecutive resolutions."""
    if len(h_list) < 2:
        return [], ["warning: need at least two grid spacings, nothing to compare"]
    base = builtin_scenario(scenario_name)
    if t_end is not None:
        base = base.with_overrides(t_end=float(t_end))
    if cfl is not None:
        base = base.with_overrides(cfl=float(cfl))
    if not base.gauges:
        raise ConfigError(f"scenario {scenario_name!r} has no gauges")
    if not 0 <= gauge_index < len(base.gauges):
        raise ConfigError(f"gauge index {gauge_index} out of range")

    def one(h):
        _, _, gauges = run(base.with_overrides(h=float(h)))
        return gauges.t, gauges.s[:, gauge_index]

    with ThreadPoolExecutor(max_workers=min(sweep_workers(), len(h_list))) as pool:
        series = list(pool.map(one, h_list))

    t_ref = series[0][0]  # coarsest run's time grid
    rows = []
    for (h1, (t1, s1)), (h2, (t2, s2)) in zip(
        zip(h_list, series), zip(h_list[1:], series[1:])
    ):
        a = np.interp(t_ref, t1, s1)
        b = np.interp(t_ref, t2, s2)
        diff = gauge_l2_difference(t_ref, a, t_ref, b)
        rows.append((float(h1), float(h2), diff))
    lines = [f"gauge {gauge_index} at x={base.gauges[gauge_index]}: L2 differences"]
    lines += [f"  h={h1:g} vs h={h2:g}: {d:.6e}" for h1, h2, d in rows]
    return rows, lines


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bouss1d", description=__doc__)
    p.add_argument("--version", action="version", version=f"bouss1d {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="time-integrate a scenario and write a result bundle")
    run_p.add_argument("scenario", nargs="?", help="builtin scenario name (or use --config)")
    run_p.add_argument("--config", help="JSON config path")
    run_p.add_argument("--out", help="output directory (overrides config)")
    run_p.add_argument("--h", type=float, action="append", help="grid spacing [m]")
    run_p.add_argument("--Tend", type=float, dest="t_end")
    run_p.add_argument("--cfl", type=float)
    run_p.add_argument("--lambda", type=float, dest="lambda0")
    run_p.add_argument("--set", dest="param_set", help="parameter set name")

    disp_p = sub.add_parser("dispersion", help="dispersion error curve CSV")
    disp_p.add_argument("--set", dest="param_set", default="set3")
    disp_p.add_argument("--kmax", type=float, default=float(2 * np.pi))
    disp_p.add_argument("--kind", choices=["rel", "abs"], default="rel")
    disp_p.add_argument("--n", type=int, default=1000)
    disp_p.add_argument("--out", help="CSV output path (default stdout)")

    fit_p = sub.add_parser("fit", help="sweep dispersive coefficients on a wavenumber window")
    fit_p.add_argument("--kmin", type=float, default=0.0)
    fit_p.add_argument("--kmax", type=float, required=True)
    fit_p.add_argument("--kind", choices=["rel", "abs"], default="rel")
    fit_p.add_argument("--alpha-free", action="store_true")
    fit_p.add_argument("--resolution", type=int, default=25)

    check_p = sub.add_parser("check", help="structural checks on a scenario's bathymetry")
    check_p.add_argument("scenario")
    check_p.add_argument("--h", type=float, action="append")

    conv_p = sub.add_parser("converge", help="grid study of gauge time series")
    conv_p.add_argument("scenario")
    conv_p.add_argument("--h", type=float, action="append", required=True)
    conv_p.add_argument("--gauge", type=int, default=0)
    conv_p.add_argument("--Tend", type=float, dest="t_end")
    conv_p.add_argument("--cfl", type=float)

    return p


def _run_config_from_args(args) -> RunConfig:
    if args.config:
        cfg = load_config(args.config)
        raw = cfg.to_dict()
    elif args.scenario:
        raw = {"scenario": args.scenario, "h": builtin_scenario(args.scenario).h}
    else:
        raise ConfigError("run needs a scenario name or --config")
    if args.h:
        raw["h"] = args.h[-1]
    if args.t_end is not None:
        raw["t_end"] = args.t_end
    if args.cfl is not None:
        raw["cfl"] = args.cfl
    if args.lambda0 is not None:
        raw["lambda0"] = args.lambda0
    if getattr(args, "param_set", None):
        raw["param_set"] = args.param_set
    if args.out:
        raw["out_dir"] = args.out
    return parse_config(raw)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            try:
                config = _run_config_from_args(args)
            except KeyError as exc:
                raise ConfigError(str(exc)) from exc
            bundle, reports = cmd_run(config, out_dir=args.out)
            last = reports[-1]
            print(f"wrote {bundle.directory} (t={last.t:g}, E={last.energy:.6g}, "
                  f"min depth={last.min_depth:.4g})")
            return EXIT_OK

        if args.command == "dispersion":
            try:
                pset = get_param_set(args.param_set)
            except KeyError as exc:
                raise ConfigError(str(exc)) from exc
            text, reported = cmd_dispersion(pset, args.kmax, args.n, args.kind, args.out)
            if not args.out:
                sys.stdout.write(text)
            kind_name = "relative" if args.kind == "rel" else "absolute"
            print(f"max {kind_name} error: {reported:.6g}", file=sys.stderr)
            return EXIT_OK

        if args.command == "fit":
            kind = "relative" if args.kind == "rel" else "absolute"
            pset, achieved, rel_level = cmd_fit(
                args.kmin, args.kmax, kind, args.alpha_free, resolution=args.resolution
            )
            print(f"alpha_t = {pset.alpha_t!r}")
            print(f"beta_t  = {pset.beta_t!r}")
            print(f"gamma_t = {pset.gamma_t!r}")
            print(f"achieved max {kind} error: {achieved:.6g}")
            if kind == "absolute":
                print(f"resulting max relative error: {rel_level:.6g}")
            return EXIT_OK

        if args.command == "check":
            h = args.h[-1] if args.h else 0.1
            try:
                ok, lines = cmd_check(args.scenario, h=h)
            except KeyError as exc:
                raise ConfigError(str(exc)) from exc
            print("\n".join(lines))
            return EXIT_OK if ok else EXIT_CHECK

        if args.command == "converge":
            try:
                rows, lines = cmd_converge(
                    args.scenario, args.h, args.gauge, t_end=args.t_end, cfl=args.cfl
                )
            except KeyError as exc:
                raise ConfigError(str(exc)) from exc
            print("\n".join(lines))
            return EXIT_OK

        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BlowUp as exc:
        print(f"blow-up: {exc}", file=sys.stderr)
        return EXIT_BLOWUP
    except Bouss1dError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
