"""Periodic uniform 1-D grid and the discrete difference/mean operators.

Conventions used throughout the package:

* a "field" is a contiguous float64 array with one value per node
  x_i = x_left + i*h, i = 0..n_cells-1; indexing is periodic (mod n).
* quantities living on the interface i+1/2 (means, fluxes, interface
  diffusion coefficients) are stored in node-indexed arrays at index i,
  so index i refers to the interface between nodes i and i+1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonpositiveDepth


@dataclass(frozen=True)
class Grid:
    """Uniform periodic mesh on [x_left, x_right) with n_cells nodes."""

    x_left: float
    x_right: float
    n_cells: int

    def __post_init__(self):
        if self.n_cells < 8:
            raise ValueError(f"n_cells must be >= 8, got {self.n_cells}")
        if not self.x_right > self.x_left:
            raise ValueError("x_right must exceed x_left")

    @property
    def h(self) -> float:
        return (self.x_right - self.x_left) / self.n_cells

    @property
    def x(self) -> np.ndarray:
        return self.x_left + self.h * np.arange(self.n_cells)

    def field(self, fill: float = 0.0) -> np.ndarray:
        return np.full(self.n_cells, float(fill))


@dataclass
class State:
    """Conserved fields: depth d [m] and depth-integrated momentum P [m^2/s]."""

    d: np.ndarray
    P: np.ndarray

    def __post_init__(self):
        self.d = np.asarray(self.d, dtype=float)
        self.P = np.asarray(self.P, dtype=float)
        if self.d.shape != self.P.shape:
            raise ValueError("d and P must have the same length")

    @property
    def v(self) -> np.ndarray:
        return self.P / self.d

    @property
    def min_depth(self) -> float:
        return float(self.d.min())

    def require_positive_depth(self):
        if not np.all(self.d > 0.0):
            raise NonpositiveDepth(f"min depth {self.d.min():.6g} <= 0")

    def copy(self) -> "State":
        return State(self.d.copy(), self.P.copy())


@dataclass
class Bathymetry:
    """Bottom elevation b [m] and still-water level H [m] over the same datum."""

    b: np.ndarray
    H: float
    _h_s: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.b = np.asarray(self.b, dtype=float)
        self._h_s = self.H - self.b
        if np.any(self._h_s < 0.0):
            raise ValueError("still water below the bottom: H - b < 0 somewhere")

    @property
    def h_s(self) -> np.ndarray:
        """Still-water depth H - b(x)."""
        return self._h_s


# -- difference and mean operators (all periodic) ----------------------------

def delta_plus(a: np.ndarray) -> np.ndarray:
    """a_{i+1} - a_i."""
    return np.roll(a, -1) - a


def delta_minus(a: np.ndarray) -> np.ndarray:
    """a_i - a_{i-1}."""
    return a - np.roll(a, 1)


def d_plus(a: np.ndarray, h: float) -> np.ndarray:
    return delta_plus(a) / h


def d_minus(a: np.ndarray, h: float) -> np.ndarray:
    return delta_minus(a) / h


def d_zero(a: np.ndarray, h: float) -> np.ndarray:
    """Central difference, (D+ + D-)/2."""
    return (d_plus(a, h) + d_minus(a, h)) / 2.0


def d2(a: np.ndarray, h: float) -> np.ndarray:
    """Second difference D+ D- (identical to D- D+)."""
    return d_plus(d_minus(a, h), h)


def mean(a: np.ndarray) -> np.ndarray:
    """(a_{i+1} + a_i)/2, the value at interface i+1/2, stored at index i."""
    return (np.roll(a, -1) + a) / 2.0


def mean_sq(a: np.ndarray) -> np.ndarray:
    """(a_{i+1}^2 + a_i^2)/2: the mean of the squares, not the square of the mean."""
    return (np.roll(a, -1) ** 2 + a**2) / 2.0
