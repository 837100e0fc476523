"""Semi-discrete right-hand side, reference RK4 integrator, the semi-implicit
production stepper, and the discrete modified-energy monitor.

The momentum equation carries a time derivative both of P and, through the
beta operator, of the velocity gradient.  Writing P_t = d_t v + d v_t turns
the semi-discrete system into a linear solve for v_t with the symmetric
positive-definite mass matrix diag(d) - L_beta.  The production stepper
treats the shallow-water part explicitly and the third-difference gamma
terms implicitly, which removes their step-size restriction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import swe
from .dispersive import (
    DispersiveCoeffs,
    apply_L_gamma,
    beta_matrix,
    build_coeffs,
    d3_P,
    d3_d,
    gamma_matrix,
)
from .errors import AlphaNotZero, BlowUp
from .grid import Bathymetry, Grid, State, d_minus, d_plus
from .linalg import CyclicBandedMatrix, cyclic_banded_solve
from .swe import DiffusionConfig


@dataclass(frozen=True)
class StepReport:
    t: float
    dt: float
    energy: float
    min_depth: float
    max_abs_v: float


@dataclass
class OperatorCache:
    """Matrices that depend only on the bathymetry, assembled once per run."""

    L_beta: CyclicBandedMatrix
    L_gamma: CyclicBandedMatrix

    @classmethod
    def build(cls, coeffs: DispersiveCoeffs, grid: Grid) -> "OperatorCache":
        return cls(beta_matrix(coeffs, grid), gamma_matrix(coeffs, grid))


def semi_discrete_rhs(
    state: State,
    bathy: Bathymetry,
    coeffs: DispersiveCoeffs,
    cfg: DiffusionConfig,
    g: float,
    h: float,
    ops: OperatorCache | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Exact semi-discrete time derivatives (d_t, P_t) of the full system."""
    state.require_positive_depth()
    d, v = state.d, state.v
    b = bathy.b

    ddt_d_swe, residual_P = swe.swe_rhs(state, bathy, cfg, g, h)
    ddt_d = ddt_d_swe + d3_d(coeffs, d, b, h)

    gamma_term = ops.L_gamma.matvec(v) if ops is not None else apply_L_gamma(coeffs, v, h)
    rhs_v = -v * ddt_d + residual_P + d3_P(coeffs, v, d, b, h) + gamma_term
    if ops is None:
        grid = Grid(0.0, h * len(d), len(d))
        mass = beta_matrix(coeffs, grid).scaled(-1.0).add_diagonal(d)
    else:
        mass = ops.L_beta.scaled(-1.0).add_diagonal(d)
    v_t = cyclic_banded_solve(mass, rhs_v)
    return ddt_d, v * ddt_d + d * v_t


def reference_step_rk4(
    state: State,
    bathy: Bathymetry,
    coeffs: DispersiveCoeffs,
    cfg: DiffusionConfig,
    g: float,
    h: float,
    dt: float,
    ops: OperatorCache | None = None,
) -> State:
    """Classical four-stage explicit step; verification-grade only (the
    caller owns the step-size restriction of the third-derivative terms)."""

    def f(s: State):
        return semi_discrete_rhs(s, bathy, coeffs, cfg, g, h, ops)

    d0, P0 = state.d, state.P
    k1d, k1P = f(state)
    k2d, k2P = f(State(d0 + 0.5 * dt * k1d, P0 + 0.5 * dt * k1P))
    k3d, k3P = f(State(d0 + 0.5 * dt * k2d, P0 + 0.5 * dt * k2P))
    k4d, k4P = f(State(d0 + dt * k3d, P0 + dt * k3P))
    return State(
        d0 + dt / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d),
        P0 + dt / 6.0 * (k1P + 2.0 * k2P + 2.0 * k3P + k4P),
    )


def imex_step(
    state: State,
    bathy: Bathymetry,
    coeffs: DispersiveCoeffs,
    cfg: DiffusionConfig,
    g: float,
    h: float,
    dt: float,
    ops: OperatorCache | None = None,
) -> State:
    """One semi-implicit step: explicit shallow-water part, implicit gamma
    terms, beta terms differenced in time.  Requires alpha_t = 0."""
    if coeffs.has_alpha:
        raise AlphaNotZero("semi-implicit stepping requires alpha_t = 0")
    state.require_positive_depth()
    d, v = state.d, state.v

    if ops is None:
        grid = Grid(0.0, h * len(d), len(d))
        ops = OperatorCache.build(coeffs, grid)

    P_tilde, Q_tilde = swe._interface_fluxes(state, bathy, cfg, g)
    div_P = d_minus(P_tilde, h)
    d_new = d - dt * div_P

    rhs_n = v * div_P - d_minus(Q_tilde, h) - swe.bathy_source(d, bathy.b, g, h)
    mass = ops.L_beta.scaled(-1.0).add_diagonal(d)
    A = (ops.L_beta + ops.L_gamma.scaled(dt)).scaled(-1.0).add_diagonal(d)
    v_new = cyclic_banded_solve(A, mass.matvec(v) + dt * rhs_n)
    return State(d_new, d_new * v_new)


def modified_energy(
    state: State, bathy: Bathymetry, coeffs: DispersiveCoeffs, g: float, h: float
) -> float:
    """Discrete bounded quantity: cell sums of the mechanical energy plus the
    beta-weighted two-sided velocity-gradient energy."""
    U = swe.entropy_U(state, bathy, g)
    v = state.v
    grad_term = coeffs.beta_hat * (d_plus(v, h) ** 2 + d_minus(v, h) ** 2)
    return float(h * np.sum(U) + 0.25 * h * np.sum(grad_term))


def energy_rate(
    state: State,
    bathy: Bathymetry,
    coeffs: DispersiveCoeffs,
    cfg: DiffusionConfig,
    g: float,
    h: float,
    ops: OperatorCache | None = None,
) -> float:
    """dE/dt by chain rule from the semi-discrete right-hand side."""
    ddt_d, ddt_P = semi_discrete_rhs(state, bathy, coeffs, cfg, g, h, ops)
    w1, w2 = swe.entropy_variables(state, bathy, g)
    v = state.v
    v_t = (ddt_P - v * ddt_d) / state.d
    core = h * np.sum(w1 * ddt_d + w2 * ddt_P)
    grad = 0.5 * h * np.sum(
        coeffs.beta_hat
        * (d_plus(v, h) * d_plus(v_t, h) + d_minus(v, h) * d_minus(v_t, h))
    )
    return float(core + grad)


def total_mass(state: State, h: float) -> float:
    return float(h * np.sum(state.d))


def run(
    scenario,
    params=None,
    grid: Grid | None = None,
    cfl: float | None = None,
    t_end: float | None = None,
    callbacks=(),
    g: float = 9.81,
):
    """Advance a scenario with the semi-implicit stepper at dt = CFL * h.

    Returns (final state, list of StepReport, GaugeSeries).  Gauges are
    sampled every step, including the initial state.  Raises BlowUp with the
    offending step index when NaN or nonpositive depth appears.
    """
    from .dispersion import get_param_set
    from .scenarios import GaugeSeries, build_scenario_fields, sample_gauges

    grid = grid if grid is not None else scenario.make_grid()
    cfl = cfl if cfl is not None else scenario.cfl
    t_end = t_end if t_end is not None else scenario.t_end
    pset = get_param_set(params if params is not None else scenario.param_set)
    if cfl <= 0.0:
        raise ValueError("CFL must be positive")

    bathy, state = build_scenario_fields(scenario, grid, g)
    coeffs_obj = build_coeffs(bathy, g, pset)
    cfg = DiffusionConfig(scenario.lambda0, scenario.adaptive_lambda)
    ops = OperatorCache.build(coeffs_obj, grid)

    h = grid.h
    dt = cfl * h
    n_steps = int(np.ceil(t_end / dt - 1e-12))
    gauges = GaugeSeries(locations=np.asarray(scenario.gauges, dtype=float))
    reports: list[StepReport] = []

    t = 0.0
    sample_gauges(state, bathy, gauges, grid, t)
    reports.append(_report(state, bathy, coeffs_obj, g, h, t, dt))
    for cb in callbacks:
        cb(0, t, state)

    for step in range(1, n_steps + 1):
        state = imex_step(state, bathy, coeffs_obj, cfg, g, h, dt, ops)
        t = step * dt
        if not np.all(np.isfinite(state.d)) or not np.all(np.isfinite(state.P)):
            raise BlowUp(step, t, "non-finite field values")
        if state.min_depth <= 0.0:
            raise BlowUp(step, t, f"nonpositive depth {state.min_depth:.3g}")
        sample_gauges(state, bathy, gauges, grid, t)
        reports.append(_report(state, bathy, coeffs_obj, g, h, t, dt))
        for cb in callbacks:
            cb(step, t, state)

    gauges.finalize()
    return state, reports, gauges


def _report(state, bathy, coeffs, g, h, t, dt) -> StepReport:
    return StepReport(
        t=t,
        dt=dt,
        energy=modified_energy(state, bathy, coeffs, g, h),
        min_depth=state.min_depth,
        max_abs_v=float(np.max(np.abs(state.v))),
    )
