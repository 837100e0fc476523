"""Linear dispersion relations, error metrics, and coefficient fitting.

Everything here is nondimensional (g = 1, reference depth 1): the full
water-wave relation is omega = sqrt(k tanh k) and the model relation is the
positive branch of a quadratic in omega whose coefficients carry the triple
(alpha_t, beta_t, gamma_t).  `fit_params` recovers such triples by a nested
coarse-to-fine grid sweep of the minimax error over a wavenumber window.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ComplexRoots


def sweep_workers() -> int:
    """Concurrency cap for parameter sweeps and grid studies."""
    raw = os.environ.get("BOUSSINESQ_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return max(1, n) if n > 0 else min(4, os.cpu_count() or 1)


@dataclass(frozen=True)
class ParamSet:
    """Nondimensional dispersive coefficients plus the window they were
    tuned on and the error metric used."""

    name: str
    alpha_t: float
    beta_t: float
    gamma_t: float
    fitted_range: tuple[float, float] = (0.0, 0.0)
    error_kind: str = "relative"

    def __post_init__(self):
        if self.beta_t < 0.0:
            raise ValueError("beta_t must be >= 0")
        if self.error_kind not in ("relative", "absolute"):
            raise ValueError("error_kind must be 'relative' or 'absolute'")

    def triple(self) -> tuple[float, float, float]:
        return (self.alpha_t, self.beta_t, self.gamma_t)


PARAM_SETS: dict[str, ParamSet] = {
    "set1": ParamSet("set1", -1.0 / 3.0, 0.0, 0.0, (0.0, 1.0), "relative"),
    "set2": ParamSet(
        "set2",
        0.0004040404040404049,
        0.49292929292929294,
        0.15707070707070708,
        (0.0, 2 * np.pi),
        "relative",
    ),
    "set3": ParamSet(
        "set3",
        0.0,
        0.27946992481203003,
        0.0521077694235589,
        (0.0, 8 * np.pi),
        "relative",
    ),
    "set4": ParamSet(
        "set4",
        0.0,
        0.2308939393939394,
        0.04034343434343434,
        (0.0, 2 * np.pi),
        "absolute",
    ),
}


def omega_euler(k):
    """Full water-wave frequency sqrt(k tanh k) for k > 0."""
    k = np.asarray(k, dtype=float)
    return np.sqrt(k * np.tanh(k))


def omega_series3(k):
    """Three-term long-wave expansion k (1 - k^2/6 + k^4/15)."""
    k = np.asarray(k, dtype=float)
    return k * (1.0 - k**2 / 6.0 + k**4 / 15.0)


def _char_coeffs(k, alpha_t, beta_t, gamma_t):
    """Quadratic A w^2 + B w + C = 0 satisfied by the model frequency."""
    A = 1.0 + beta_t * k**2
    B = (-alpha_t - beta_t * alpha_t * k**2 - gamma_t) * k**3
    C = -(k**2) + gamma_t * alpha_t * k**6
    return A, B, C


def omega_model(k, params):
    """Positive branch of the model dispersion relation (tends to +k as k->0).

    Raises ComplexRoots where the discriminant is negative, signalling an
    inadmissible parameter set at that wavenumber.
    """
    if hasattr(params, "alpha_t"):
        alpha_t, beta_t, gamma_t = params.alpha_t, params.beta_t, params.gamma_t
    else:
        alpha_t, beta_t, gamma_t = params
    k = np.asarray(k, dtype=float)
    A, B, C = _char_coeffs(k, alpha_t, beta_t, gamma_t)
    disc = B**2 - 4.0 * A * C
    if np.any(disc < 0.0):
        bad = np.asarray(k)[np.asarray(disc < 0.0)]
        raise ComplexRoots(f"negative discriminant at k = {np.atleast_1d(bad)[0]:.6g}")
    return (-B + np.sqrt(disc)) / (2.0 * A)


def char_residual(k, omega, params) -> np.ndarray:
    """A w^2 + B w + C scaled by the largest of the three terms."""
    alpha_t, beta_t, gamma_t = (
        (params.alpha_t, params.beta_t, params.gamma_t)
        if hasattr(params, "alpha_t")
        else params
    )
    A, B, C = _char_coeffs(np.asarray(k, dtype=float), alpha_t, beta_t, gamma_t)
    terms = np.stack([A * omega**2, B * omega, C * np.ones_like(omega)])
    return np.sum(terms, axis=0) / np.max(np.abs(terms), axis=0)


def k_samples(k_min: float, k_max: float, n_samples: int) -> np.ndarray:
    """Uniform samples on (0, k_max]; k_min <= 0 is replaced by k_max/n."""
    if k_min <= 0.0:
        k_min = k_max / n_samples
    return np.linspace(k_min, k_max, n_samples)


class ErrorCurve(NamedTuple):
    max_error: float
    argmax_k: float
    k: np.ndarray
    errors: np.ndarray


def error_curve(
    params, k_min: float, k_max: float, n_samples: int = 1000, kind: str = "relative"
) -> ErrorCurve:
    """Sampled dispersion error of a parameter set against the Euler relation."""
    if n_samples < 100:
        raise ValueError("n_samples must be >= 100")
    if not k_max > max(k_min, 0.0):
        raise ValueError("need 0 <= k_min < k_max")
    k = k_samples(k_min, k_max, n_samples)
    w_ref = omega_euler(k)
    w_mod = omega_model(k, params)
    err = np.abs(w_mod - w_ref)
    if kind == "relative":
        err = err / w_ref
    elif kind != "absolute":
        raise ValueError("kind must be 'relative' or 'absolute'")
    j = int(np.argmax(err))
    return ErrorCurve(float(err[j]), float(k[j]), k, err)


def _sweep_objective(k, w_ref, alpha, beta, gamma, kind):
    """Max error over k for a batch of candidate triples (vectorized).

    alpha, beta, gamma are flat arrays of equal length; returns that shape.
    Candidates whose discriminant goes negative anywhere get +inf.
    """
    k = k[None, :]
    a = alpha[:, None]
    b = beta[:, None]
    c = gamma[:, None]
    A = 1.0 + b * k**2
    B = (-a - b * a * k**2 - c) * k**3
    C = -(k**2) + c * a * k**6
    disc = B**2 - 4.0 * A * C
    bad = np.any(disc < 0.0, axis=1)
    w = (-B + np.sqrt(np.maximum(disc, 0.0))) / (2.0 * A)
    err = np.abs(w - w_ref[None, :])
    if kind == "relative":
        err = err / w_ref[None, :]
    out = np.max(err, axis=1)
    out[bad] = np.inf
    return out


def _axis(lo: float, hi: float, n: int) -> np.ndarray:
    if n == 1:
        return np.array([lo])
    return np.linspace(lo, hi, n)


def fit_params(
    k_min: float,
    k_max: float,
    kind: str = "relative",
    alpha_free: bool = False,
    sweep_resolution: int = 21,
    n_samples: int = 1000,
    levels: int = 4,
    name: str = "fit",
) -> ParamSet:
    """Minimax fit of (alpha_t, beta_t, gamma_t) on a wavenumber window.

    Nested grid sweep: each level re-grids a box centred on the current best
    point at 1.5 old spacings per side.  beta_t >= 0 and alpha_t >= 0 are
    enforced by the search box.  Returns the best point found.
    """
    if kind not in ("relative", "absolute"):
        raise ValueError("kind must be 'relative' or 'absolute'")
    k = k_samples(k_min, k_max, n_samples)
    w_ref = omega_euler(k)

    boxes = {
        "alpha": (0.0, 0.002) if alpha_free else (0.0, 0.0),
        "beta": (0.0, 1.2),
        "gamma": (0.0, 0.4),
    }
    n_alpha = max(sweep_resolution // 2, 5) if alpha_free else 1
    best = None
    best_err = np.inf

    workers = sweep_workers()
    chunk = 2048

    for _ in range(levels):
        ax_a = _axis(*boxes["alpha"], n_alpha)
        ax_b = _axis(*boxes["beta"], sweep_resolution)
        ax_g = _axis(*boxes["gamma"], sweep_resolution)
        A, B, G = np.meshgrid(ax_a, ax_b, ax_g, indexing="ij")
        cand = np.stack([A.ravel(), B.ravel(), G.ravel()], axis=1)
        slices = [slice(lo, lo + chunk) for lo in range(0, len(cand), chunk)]

        def eval_chunk(sl):
            return _sweep_objective(k, w_ref, cand[sl, 0], cand[sl, 1], cand[sl, 2], kind)

        errs = np.empty(len(cand))
        if workers > 1 and len(slices) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                for sl, res in zip(slices, pool.map(eval_chunk, slices)):
                    errs[sl] = res
        else:
            for sl in slices:
                errs[sl] = eval_chunk(sl)
        j = int(np.argmin(errs))
        if errs[j] < best_err:
            best_err = float(errs[j])
            best = cand[j]

        # shrink each axis around the winner, clamped at the sign constraints
        def shrink(axis, value):
            span = axis[1] - axis[0] if len(axis) > 1 else 0.0
            return (max(0.0, value - 1.5 * span), value + 1.5 * span)

        boxes = {
            "alpha": shrink(ax_a, best[0]) if alpha_free else (0.0, 0.0),
            "beta": shrink(ax_b, best[1]),
            "gamma": shrink(ax_g, best[2]),
        }

    return ParamSet(
        name=name,
        alpha_t=float(best[0]),
        beta_t=float(best[1]),
        gamma_t=float(best[2]),
        fitted_range=(k_min if k_min > 0 else 0.0, k_max),
        error_kind=kind,
    )


def dimensionalize(params, d0: float, g: float) -> tuple[float, float, float]:
    """Scale the nondimensional triple to a reference depth d0 and gravity g."""
    if not (d0 > 0.0 and g > 0.0):
        raise ValueError("d0 and g must be positive")
    alpha_t, beta_t, gamma_t = (
        (params.alpha_t, params.beta_t, params.gamma_t)
        if hasattr(params, "alpha_t")
        else params
    )
    c0 = np.sqrt(g * d0)
    return (alpha_t * c0 * d0**2, beta_t * d0**3, gamma_t * c0 * d0**3)


def get_param_set(name_or_triple) -> ParamSet:
    """Look up a built-in set by name or wrap an explicit triple."""
    if isinstance(name_or_triple, ParamSet):
        return name_or_triple
    if isinstance(name_or_triple, str):
        try:
            return PARAM_SETS[name_or_triple]
        except KeyError:
            raise KeyError(
                f"unknown parameter set {name_or_triple!r}; "
                f"known: {sorted(PARAM_SETS)}"
            ) from None
    a, b, c = name_or_triple
    return ParamSet("custom", float(a), float(b), float(c))
