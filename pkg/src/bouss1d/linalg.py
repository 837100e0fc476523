"""Cyclic banded matrices and their direct solver.

A matrix is stored by diagonals: diags[o][i] = A[i, (i+o) mod n] for offsets
o = -bw..bw.  The solve splits A into its non-wrapping band plus a rank-2*bw
corner update and applies the Woodbury identity on top of a banded LU
factorization (scipy.linalg.solve_banded).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import SingularMatrix

#: per-row residual bound asserted by the solver contract
SOLVE_RTOL = 1e-10


@dataclass
class CyclicBandedMatrix:
    n: int
    bandwidth: int
    diags: dict[int, np.ndarray]

    def __post_init__(self):
        if self.bandwidth not in (1, 2):
            raise ValueError("bandwidth must be 1 or 2")
        if 2 * self.bandwidth + 1 > self.n:
            raise ValueError("bandwidth too large for matrix size")
        for o in range(-self.bandwidth, self.bandwidth + 1):
            self.diags.setdefault(o, np.zeros(self.n))

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = np.zeros_like(v, dtype=float)
        for o, diag in self.diags.items():
            out += diag * np.roll(v, -o)
        return out

    def to_dense(self) -> np.ndarray:
        A = np.zeros((self.n, self.n))
        idx = np.arange(self.n)
        for o, diag in self.diags.items():
            A[idx, (idx + o) % self.n] = diag
        return A

    def __add__(self, other: "CyclicBandedMatrix") -> "CyclicBandedMatrix":
        if other.n != self.n:
            raise ValueError("size mismatch")
        bw = max(self.bandwidth, other.bandwidth)
        diags = {}
        for o in range(-bw, bw + 1):
            diags[o] = self.diags.get(o, 0.0) + other.diags.get(o, 0.0)
            if np.isscalar(diags[o]):
                diags[o] = np.zeros(self.n)
        return CyclicBandedMatrix(self.n, bw, diags)

    def scaled(self, c: float) -> "CyclicBandedMatrix":
        return CyclicBandedMatrix(
            self.n, self.bandwidth, {o: c * diag for o, diag in self.diags.items()}
        )

    def add_diagonal(self, d: np.ndarray) -> "CyclicBandedMatrix":
        diags = {o: diag.copy() for o, diag in self.diags.items()}
        diags[0] = diags[0] + d
        return CyclicBandedMatrix(self.n, self.bandwidth, diags)


def identity_matrix(n: int, bandwidth: int = 1) -> CyclicBandedMatrix:
    return CyclicBandedMatrix(n, bandwidth, {0: np.ones(n)})


def _banded_storage(M: CyclicBandedMatrix):
    """Banded `ab` array for solve_banded (wrap entries stripped) plus the
    stripped corner block W over the affected rows."""
    n, bw = M.n, M.bandwidth
    ab = np.zeros((2 * bw + 1, n))
    corner_rows = sorted(set(range(bw)) | set(range(n - bw, n)))
    row_pos = {i: m for m, i in enumerate(corner_rows)}
    W = np.zeros((len(corner_rows), n))
    for o, diag in M.diags.items():
        if o >= 0:
            ab[bw - o, o:] = diag[: n - o]
            for i in range(n - o, n):  # wrap rows at the bottom
                W[row_pos[i], i + o - n] += diag[i]
        else:
            ab[bw - o, : n + o] = diag[-o:]
            for i in range(-o):  # wrap rows at the top
                W[row_pos[i], i + o + n] += diag[i]
    return ab, corner_rows, W


def cyclic_banded_solve(M: CyclicBandedMatrix, rhs: np.ndarray) -> np.ndarray:
    """Solve M x = rhs; per-row residual bounded by SOLVE_RTOL * scale."""
    n, bw = M.n, M.bandwidth
    ab, corner_rows, W = _banded_storage(M)
    r = len(corner_rows)

    # A = A_band + E W with E the selector of corner_rows; Woodbury on top of
    # one banded factorization with stacked right-hand sides.
    B = np.zeros((n, 1 + r))
    B[:, 0] = rhs
    B[corner_rows, 1 + np.arange(r)] = 1.0

    try:
        X = scipy.linalg.solve_banded((bw, bw), ab, B)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError, ValueError) as exc:
        raise SingularMatrix(str(exc)) from exc

    x0 = X[:, 0]
    Y = X[:, 1:]
    cap = np.eye(r) + W @ Y
    try:
        coef = np.linalg.solve(cap, W @ x0)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix(str(exc)) from exc
    x = x0 - Y @ coef

    if __debug__:
        resid = np.abs(M.matvec(x) - rhs)
        absx = np.abs(x)
        scale = np.abs(rhs).copy()
        for o, diag in M.diags.items():
            scale += np.abs(diag) * np.roll(absx, -o)
        assert np.all(resid <= SOLVE_RTOL * (scale + 1e-300)), "solver residual bound violated"
    return x
