"""Benchmark geometries, wave-train initial data, and gauge probes.

Three built-in cases: a trapezoidal bar in a wave flume (gauge comparison),
a sharp triangular spike with a jump on its lee side, and a rectangular
cavity between two shallow plateaus.  All run on the periodic domain
[-138, 46] with still-water level H = 0.8 m, so the offshore depth of the
flume cases is 0.8 m and the cavity plateaus sit at depth 0.3 m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.optimize

from .errors import GeometryError
from .grid import Bathymetry, Grid, State

GRAVITY = 9.81

#: wave probe locations of the flume's first measurement line
GAUGES_A = (3.04, 9.44, 20.04, 26.04, 30.44, 37.04)
GAUGES_B = (7.04, 9.44, 24.04, 28.04, 33.64, 41.04)


def solve_wavenumber(omega: float, d0: float, g: float = GRAVITY) -> float:
    """Positive root K of omega^2 = g K tanh(K d0), to ~1e-12 relative."""
    if omega <= 0.0 or d0 <= 0.0:
        raise ValueError("omega and d0 must be positive")
    target = omega**2

    def f(K):
        return g * K * math.tanh(K * d0) - target

    hi = max(target / g, omega / math.sqrt(g * d0)) * 2.0
    while f(hi) < 0.0:
        hi *= 2.0
    K = scipy.optimize.brentq(f, 1e-14, hi, xtol=1e-15, rtol=8.9e-16)
    # one Newton polish; derivative of g K tanh(K d0)
    th = math.tanh(K * d0)
    K -= (g * K * th - target) / (g * th + g * K * d0 * (1.0 - th**2))
    return K


@dataclass(frozen=True)
class WaveTrainSpec:
    """Right-moving packet of small-amplitude crests with tapered ends."""

    amplitude: float = 0.02
    period: float = 2.02 * math.sqrt(2.0)
    n_crests: int = 8
    center_x: float = -60.0

    @property
    def omega(self) -> float:
        return 2.0 * math.pi / self.period


def wave_train(
    grid: Grid,
    A: float,
    K: float,
    d0: float,
    g: float,
    n_crests: int,
    center_x: float,
    b: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Surface elevation and velocity of the packet on the grid nodes.

    Elevation is A cos(K(x-c)) under a raised-cosine envelope spanning
    n_crests wavelengths (one wavelength ramp at each end); the velocity is
    the right-moving linear-wave relation sqrt(g/K tanh(K d0)) * s / d0.
    Both vanish identically outside the envelope.  Raises GeometryError when
    the envelope covers non-constant bathymetry.
    """
    x = grid.x
    wavelength = 2.0 * math.pi / K
    half_width = 0.5 * n_crests * wavelength
    xi = x - center_x

    if center_x - half_width < grid.x_left or center_x + half_width > grid.x_right:
        raise GeometryError("wave train does not fit inside the domain")
    inside = np.abs(xi) <= half_width
    if b is not None:
        local = b[inside]
        if local.size and local.max() != local.min():
            raise GeometryError("wave train overlaps non-flat bathymetry")

    envelope = np.zeros_like(x)
    core = np.abs(xi) <= half_width - wavelength
    ramp = inside & ~core
    envelope[core] = 1.0
    envelope[ramp] = np.cos(
        0.5 * math.pi * (np.abs(xi[ramp]) - (half_width - wavelength)) / wavelength
    ) ** 2

    s = A * np.cos(K * xi) * envelope
    speed = math.sqrt(g / K * math.tanh(K * d0))
    return s, speed * s / d0


def dingemans_bathymetry(x) -> np.ndarray:
    """Trapezoidal bar: 1:20 up-slope from x=11.01, 4 m crest at 0.6 m,
    1:10 down-slope back to the 0.8 m flat by x=33.07."""
    x = np.asarray(x, dtype=float)
    b = np.zeros_like(x)
    up = (x >= 11.01) & (x < 23.04)
    b[up] = 0.6 * (x[up] - 11.01) / (23.04 - 11.01)
    b[(x >= 23.04) & (x < 27.04)] = 0.6
    down = (x >= 27.04) & (x < 33.07)
    b[down] = 0.6 * (33.07 - x[down]) / (33.07 - 27.04)
    return b


def spike_bathymetry(x) -> np.ndarray:
    """Linear ramp from 0 to 0.7 m over (-26, -25], then a jump back to 0."""
    x = np.asarray(x, dtype=float)
    b = np.zeros_like(x)
    ramp = (x > -26.0) & (x <= -25.0)
    b[ramp] = 0.7 * (x[ramp] + 26.0)
    return b


def cavity_bathymetry(x) -> np.ndarray:
    """Plateaus at 0.5 m with a rectangular cavity of floor 0 on (-75, -50)."""
    x = np.asarray(x, dtype=float)
    return np.where((x > -75.0) & (x < -50.0), 0.0, 0.5)


def flat_bathymetry(x) -> np.ndarray:
    return np.zeros_like(np.asarray(x, dtype=float))


BATHYMETRIES = {
    "flat": flat_bathymetry,
    "dingemans": dingemans_bathymetry,
    "spike": spike_bathymetry,
    "cavity": cavity_bathymetry,
}


def mollify(b: np.ndarray, delta: float, passes: int, h: float) -> np.ndarray:
    """Periodic moving average over [x - delta, x + delta], repeated
    `passes` times; each pass raises the regularity by one."""
    if passes < 0:
        raise ValueError("passes must be >= 0")
    if passes == 0:
        return b.copy()
    if delta < h:
        raise ValueError("delta must be at least one grid spacing")
    half = int(round(delta / h))
    weights = np.full(2 * half + 1, 1.0 / (2 * half + 1))
    out = b.copy()
    n = len(b)
    for _ in range(passes):
        padded = np.concatenate([out[-half:], out, out[:half]])
        out = np.convolve(padded, weights, mode="valid")
        assert len(out) == n
    return out


@dataclass
class GaugeSeries:
    """Surface elevation samples at fixed probe locations."""

    locations: np.ndarray
    times: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    t: np.ndarray | None = None
    s: np.ndarray | None = None

    def append(self, t: float, values: np.ndarray):
        self.times.append(t)
        self.rows.append(values)

    def finalize(self):
        self.t = np.asarray(self.times, dtype=float)
        self.s = np.asarray(self.rows, dtype=float).reshape(len(self.times), -1)
        return self


def sample_gauges(
    state: State, bathy: Bathymetry, gauges: GaugeSeries, grid: Grid, t: float
):
    """Append one row: s = d + b - H linearly interpolated at each probe."""
    if gauges.locations.size == 0:
        gauges.append(t, np.empty(0))
        return
    s_field = state.d + bathy.b - bathy.H
    pos = (gauges.locations - grid.x_left) / grid.h
    idx = np.floor(pos).astype(int) % grid.n_cells
    frac = pos - np.floor(pos)
    vals = (1.0 - frac) * s_field[idx] + frac * s_field[(idx + 1) % grid.n_cells]
    gauges.append(t, vals)


@dataclass(frozen=True)
class Scenario:
    """Complete description of one benchmark run."""

    name: str
    x_left: float
    x_right: float
    bathymetry: str
    still_water_level: float
    wave_train: WaveTrainSpec
    gauges: tuple = ()
    param_set: str = "set3"
    lambda0: float = 0.1
    adaptive_lambda: bool = False
    cfl: float = 0.2
    t_end: float = 10.0
    h: float = 0.1
    mollify_delta: float = 0.0
    mollify_passes: int = 0

    def make_grid(self, h: float | None = None) -> Grid:
        h = h if h is not None else self.h
        n = int(round((self.x_right - self.x_left) / h))
        return Grid(self.x_left, self.x_left + n * h, n)

    def with_overrides(self, **kwargs) -> "Scenario":
        return replace(self, **kwargs)


def builtin_scenario(name: str) -> Scenario:
    if name == "dingemans":
        return Scenario(
            name="dingemans",
            x_left=-138.0,
            x_right=46.0,
            bathymetry="dingemans",
            still_water_level=0.8,
            wave_train=WaveTrainSpec(center_x=-60.0),
            gauges=GAUGES_A,
            param_set="set3",
            t_end=70.0,
        )
    if name == "spike":
        return Scenario(
            name="spike",
            x_left=-138.0,
            x_right=46.0,
            bathymetry="spike",
            still_water_level=0.8,
            wave_train=WaveTrainSpec(center_x=-60.0),
            gauges=(-30.0, -10.0),
            param_set="set4",
            t_end=10.0,
        )
    if name == "cavity":
        # The packet cannot sit astride the cavity walls, so it starts on the
        # left plateau; its wavenumber follows from the local 0.3 m depth.
        return Scenario(
            name="cavity",
            x_left=-138.0,
            x_right=46.0,
            bathymetry="cavity",
            still_water_level=0.8,
            wave_train=WaveTrainSpec(center_x=-110.0),
            gauges=(-62.0, -40.0),
            param_set="set4",
            t_end=20.0,
        )
    raise KeyError(f"unknown scenario {name!r}; known: dingemans, spike, cavity")


def build_bathymetry(scenario: Scenario, grid: Grid) -> Bathymetry:
    try:
        builder = BATHYMETRIES[scenario.bathymetry]
    except KeyError:
        raise KeyError(
            f"unknown bathymetry {scenario.bathymetry!r}; known: {sorted(BATHYMETRIES)}"
        ) from None
    b = builder(grid.x)
    if scenario.mollify_passes > 0:
        b = mollify(b, scenario.mollify_delta, scenario.mollify_passes, grid.h)
    return Bathymetry(b, scenario.still_water_level)


def initial_state(scenario: Scenario, grid: Grid, bathy: Bathymetry, g: float) -> State:
    """Lake at rest plus the scenario's wave train."""
    spec = scenario.wave_train
    d_rest = bathy.h_s.copy()
    if spec.amplitude == 0.0:
        return State(d_rest, np.zeros_like(d_rest))

    c_idx = int(round((spec.center_x - grid.x_left) / grid.h)) % grid.n_cells
    d0 = float(bathy.h_s[c_idx])
    if d0 <= 0.0:
        raise GeometryError("wave train centred over dry bathymetry")
    K = solve_wavenumber(spec.omega, d0, g)
    s, v = wave_train(
        grid, spec.amplitude, K, d0, g, spec.n_crests, spec.center_x, b=bathy.b
    )
    d = d_rest + s
    return State(d, d * v)


def build_scenario_fields(scenario: Scenario, grid: Grid, g: float):
    bathy = build_bathymetry(scenario, grid)
    return bathy, initial_state(scenario, grid, bathy, g)
