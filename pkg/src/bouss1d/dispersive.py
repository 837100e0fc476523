"""Depth-dependent dispersive coefficients and the discrete third-order terms.

The nondimensional triple (alpha_t, beta_t, gamma_t) is promoted to node
fields via the still-water depth h_s(x):

    alpha_hat^2 = alpha_t * sqrt(g h_s) * h_s^2
    beta_hat    = beta_t * h_s^3
    gamma_hat   = gamma_t * sqrt(g h_s) * h_s^3

so the dispersive terms reproduce the tuned flat-bottom behaviour at any
constant depth and switch themselves off as h_s -> 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NegativeParameter
from .grid import Bathymetry, Grid, d_minus, d_plus, d2, mean
from .linalg import CyclicBandedMatrix


@dataclass(frozen=True)
class DispersiveCoeffs:
    alpha_hat: np.ndarray
    beta_hat: np.ndarray
    gamma_hat: np.ndarray

    @property
    def has_alpha(self) -> bool:
        return bool(np.any(self.alpha_hat != 0.0))


def _unpack_params(params) -> tuple[float, float, float]:
    if hasattr(params, "alpha_t"):
        return params.alpha_t, params.beta_t, params.gamma_t
    a, b, c = params
    return float(a), float(b), float(c)


def build_coeffs(bathy: Bathymetry, g: float, params) -> DispersiveCoeffs:
    """Evaluate (alpha_hat, beta_hat, gamma_hat) pointwise at the nodes."""
    alpha_t, beta_t, gamma_t = _unpack_params(params)
    if alpha_t < 0.0:
        raise NegativeParameter(
            f"alpha_t = {alpha_t} < 0 is incompatible with depth-dependent coefficients"
        )
    if beta_t < 0.0:
        raise NegativeParameter(f"beta_t = {beta_t} < 0 breaks the energy bound")
    hs = bathy.h_s
    root = np.sqrt(g * hs)
    return DispersiveCoeffs(
        alpha_hat=np.sqrt(alpha_t * root * hs**2),
        beta_hat=beta_t * hs**3,
        gamma_hat=gamma_t * root * hs**3,
    )


def d3_d(coeffs: DispersiveCoeffs, d: np.ndarray, b: np.ndarray, h: float) -> np.ndarray:
    """Surface-dispersion term of the depth equation: the symmetrized nested
    stencil (1/2)[D-(a D+(a D-(d+b))) + D+(a D-(a D+(d+b)))], a = alpha_hat."""
    a = coeffs.alpha_hat
    s = d + b
    one = d_minus(a * d_plus(a * d_minus(s, h), h), h)
    two = d_plus(a * d_minus(a * d_plus(s, h), h), h)
    return 0.5 * (one + two)


def d3_P(
    coeffs: DispersiveCoeffs, v: np.ndarray, d: np.ndarray, b: np.ndarray, h: float
) -> np.ndarray:
    """Momentum counterpart of d3_d with interface-averaged velocity weights."""
    a = coeffs.alpha_hat
    s = d + b
    vbar = mean(v)  # value at interface i+1/2, stored at index i
    inner_minus = a * d_plus(a * d_minus(s, h), h)
    inner_plus = a * d_minus(a * d_plus(s, h), h)
    one = d_minus(np.roll(vbar, 1) * inner_minus, h)
    two = d_plus(vbar * inner_plus, h)
    return 0.5 * (one + two)


def apply_L_beta(coeffs: DispersiveCoeffs, v: np.ndarray, h: float) -> np.ndarray:
    """Symmetric negative-semidefinite operator inside the time derivative:
    (1/2)[D-(beta_hat D+ v) + D+(beta_hat D- v)]."""
    bh = coeffs.beta_hat
    return 0.5 * (d_minus(bh * d_plus(v, h), h) + d_plus(bh * d_minus(v, h), h))


def apply_L_gamma(coeffs: DispersiveCoeffs, v: np.ndarray, h: float) -> np.ndarray:
    """Skew-symmetric third-difference operator:
    (1/2)[D+(gamma_hat D2 v) + D2(gamma_hat D- v)]."""
    gh = coeffs.gamma_hat
    return 0.5 * (d_plus(gh * d2(v, h), h) + d2(gh * d_minus(v, h), h))


def beta_matrix(coeffs: DispersiveCoeffs, grid: Grid) -> CyclicBandedMatrix:
    """Tridiagonal (cyclic) matrix of apply_L_beta; symmetric by construction."""
    bh = coeffs.beta_hat
    h2 = grid.h**2
    upper = (bh + np.roll(bh, -1)) / (2.0 * h2)  # coeff of v_{i+1} in row i
    return CyclicBandedMatrix(
        grid.n_cells,
        1,
        {
            1: upper,
            -1: np.roll(upper, 1),  # coeff of v_{i-1} in row i, same values
            0: -(np.roll(bh, 1) + 2.0 * bh + np.roll(bh, -1)) / (2.0 * h2),
        },
    )


def gamma_matrix(coeffs: DispersiveCoeffs, grid: Grid) -> CyclicBandedMatrix:
    """Pentadiagonal (cyclic) matrix of apply_L_gamma; skew-symmetric."""
    gh = coeffs.gamma_hat
    h3 = grid.h**3
    two_up = np.roll(gh, -1) / (2.0 * h3)  # coeff of v_{i+2} in row i
    one_up = -(np.roll(gh, -1) + gh) / (2.0 * h3)
    return CyclicBandedMatrix(
        grid.n_cells,
        2,
        {
            2: two_up,
            1: one_up,
            0: np.zeros(grid.n_cells),
            -1: -np.roll(one_up, 1),
            -2: -np.roll(two_up, 2),
        },
    )


def matrix_of(op: str, coeffs: DispersiveCoeffs, grid: Grid) -> CyclicBandedMatrix:
    """Matrix representation of 'beta' (bandwidth 1) or 'gamma' (bandwidth 2)."""
    if op == "beta":
        return beta_matrix(coeffs, grid)
    if op == "gamma":
        return gamma_matrix(coeffs, grid)
    raise ValueError(f"unknown operator {op!r}")
