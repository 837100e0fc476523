import numpy as np
import pytest

from bouss1d.dispersion import PARAM_SETS
from bouss1d.dispersive import (
    apply_L_beta,
    apply_L_gamma,
    beta_matrix,
    build_coeffs,
    d3_P,
    d3_d,
    gamma_matrix,
    matrix_of,
)
from bouss1d.errors import NegativeParameter
from bouss1d.grid import Bathymetry, Grid, d2, d_zero

EPS = np.finfo(float).eps
G = 9.81


def coeffs_on(grid, profile, params, H=0.8, g=G):
    return build_coeffs(Bathymetry(profile, H), g, params)


# --- coefficient builder ----------------------------------------------------

def test_coeffs_vanish_with_depth():
    ba = Bathymetry(np.full(16, 0.8), 0.8)  # h_s == 0 everywhere
    c = build_coeffs(ba, G, PARAM_SETS["set2"])
    assert np.all(c.alpha_hat == 0.0)
    assert np.all(c.beta_hat == 0.0)
    assert np.all(c.gamma_hat == 0.0)


def test_coeffs_unit_depth_set3():
    ba = Bathymetry(np.zeros(8), 1.0)
    c = build_coeffs(ba, 1.0, PARAM_SETS["set3"])
    assert np.all(c.beta_hat == 0.27946992481203003)
    assert np.all(c.gamma_hat == 0.0521077694235589)
    assert np.all(c.alpha_hat == 0.0)


def test_coeffs_reject_negative_alpha():
    ba = Bathymetry(np.zeros(8), 1.0)
    with pytest.raises(NegativeParameter):
        build_coeffs(ba, G, PARAM_SETS["set1"])  # alpha_t = -1/3


def test_coeffs_reject_negative_beta():
    ba = Bathymetry(np.zeros(8), 1.0)
    with pytest.raises(NegativeParameter):
        build_coeffs(ba, G, (0.0, -0.1, 0.0))


def test_coeffs_scaling_law():
    hs = np.linspace(0.2, 0.8, 8)
    ba = Bathymetry(1.0 - hs, 1.0)
    c = build_coeffs(ba, G, (0.001, 0.3, 0.05))
    np.testing.assert_allclose(c.alpha_hat**2, 0.001 * np.sqrt(G * hs) * hs**2, rtol=1e-14)
    np.testing.assert_allclose(c.beta_hat, 0.3 * hs**3, rtol=1e-14)
    np.testing.assert_allclose(c.gamma_hat, 0.05 * np.sqrt(G * hs) * hs**3, rtol=1e-14)


# --- nested third-difference stencils ----------------------------------------

def test_d3_zero_alpha():
    grid = Grid(0.0, 1.0, 16)
    rng = np.random.default_rng(0)
    c = coeffs_on(grid, np.zeros(16), (0.0, 0.3, 0.05))
    d = rng.uniform(0.5, 1.0, 16)
    b = rng.uniform(-0.1, 0.1, 16)
    assert np.all(d3_d(c, d, b, grid.h) == 0.0)
    assert np.all(d3_P(c, rng.normal(size=16), d, b, grid.h) == 0.0)


def test_d3_flat_surface():
    grid = Grid(0.0, 1.0, 16)
    rng = np.random.default_rng(1)
    b = rng.uniform(0.0, 0.2, 16)
    c = coeffs_on(grid, b, (0.001, 0.3, 0.05))
    d = 0.8 - b  # d + b constant bit pattern per node
    d = np.full(16, 0.8) - b
    assert np.abs(d3_d(c, d, b, grid.h)).max() <= 1e-10
    v = rng.normal(size=16)
    assert np.abs(d3_P(c, v, d, b, grid.h)).max() <= 1e-10


def test_d3_P_zero_velocity():
    grid = Grid(0.0, 1.0, 16)
    rng = np.random.default_rng(2)
    b = rng.uniform(0.0, 0.2, 16)
    c = coeffs_on(grid, b, (0.001, 0.3, 0.05))
    d = rng.uniform(0.5, 1.0, 16)
    assert np.all(d3_P(c, np.zeros(16), d, b, grid.h) == 0.0)


def test_d3_matches_brute_force():
    from oracles import brute_d3_P, brute_d3_d

    grid = Grid(0.0, 4.0, 8)
    rng = np.random.default_rng(3)
    b = rng.uniform(0.0, 0.3, 8)
    c = coeffs_on(grid, b, (0.0008, 0.3, 0.05))
    d = rng.uniform(0.4, 0.9, 8)
    v = rng.normal(size=8)
    np.testing.assert_allclose(
        d3_d(c, d, b, grid.h), brute_d3_d(c.alpha_hat, d, b, grid.h), rtol=1e-12, atol=1e-12
    )
    np.testing.assert_allclose(
        d3_P(c, v, d, b, grid.h), brute_d3_P(c.alpha_hat, v, d, b, grid.h), rtol=1e-12, atol=1e-12
    )


def test_flat_depth_reduction_to_constant_stencils():
    # constant h_s: nested stencil collapses to alpha^2 D2 D0 (d+b)
    grid = Grid(0.0, 2.0, 32)
    c = coeffs_on(grid, np.zeros(32), (0.0008, 0.3, 0.05))
    rng = np.random.default_rng(4)
    d = 0.8 + 0.01 * np.sin(2 * np.pi * grid.x / 2.0) + 0.001 * rng.normal(size=32)
    b = np.zeros(32)
    a2 = float(c.alpha_hat[0] ** 2)
    expected = a2 * d2(d_zero(d, grid.h), grid.h)
    np.testing.assert_allclose(d3_d(c, d, b, grid.h), expected, rtol=1e-10, atol=1e-12)


def test_shallow_water_limit_monotone():
    # scaling h_s by eps drives every dispersive output to zero monotonically
    grid = Grid(0.0, 2.0, 32)
    rng = np.random.default_rng(5)
    hs0 = 0.5 + 0.2 * np.sin(2 * np.pi * grid.x / 2.0)
    d = rng.uniform(0.4, 0.6, 32)
    b = rng.uniform(-0.05, 0.05, 32)
    v = rng.normal(size=32)
    norms = []
    for eps in (1.0, 0.5, 0.25):
        ba = Bathymetry(1.0 - eps * hs0, 1.0)
        c = build_coeffs(ba, G, (0.0008, 0.3, 0.05))
        norms.append(
            np.abs(d3_d(c, d, b, grid.h)).max()
            + np.abs(d3_P(c, v, d, b, grid.h)).max()
            + np.abs(apply_L_beta(c, v, grid.h)).max()
            + np.abs(apply_L_gamma(c, v, grid.h)).max()
        )
    assert norms[0] > norms[1] > norms[2] > 0.0


# --- beta and gamma operators -------------------------------------------------

def test_operators_kill_constants():
    grid = Grid(0.0, 1.0, 16)
    c = coeffs_on(grid, np.zeros(16), (0.0, 0.3, 0.05))
    v = np.full(16, 0.37)
    assert np.abs(apply_L_beta(c, v, grid.h)).max() == 0.0
    assert np.abs(apply_L_gamma(c, v, grid.h)).max() == 0.0


def test_L_beta_constant_coefficient_identity():
    grid = Grid(0.0, 1.0, 64)
    c = coeffs_on(grid, np.zeros(64), (0.0, 0.3, 0.0))
    v = np.sin(2 * np.pi * grid.x)
    beta = float(c.beta_hat[0])
    got = apply_L_beta(c, v, grid.h)
    expected = beta * d2(v, grid.h)
    scale = np.abs(v).max() * beta * 4.0 / grid.h**2
    assert np.abs(got - expected).max() <= 4 * EPS * scale
    # the two halves of the split coincide bitwise for constant beta_hat
    from bouss1d.grid import d_minus, d_plus

    half1 = d_minus(c.beta_hat * d_plus(v, grid.h), grid.h)
    half2 = d_plus(c.beta_hat * d_minus(v, grid.h), grid.h)
    assert np.array_equal(half1, half2)


def test_L_operators_match_brute_force():
    from oracles import brute_L_beta, brute_L_gamma

    grid = Grid(0.0, 4.0, 8)
    rng = np.random.default_rng(6)
    b = rng.uniform(0.0, 0.3, 8)
    c = coeffs_on(grid, b, (0.0, 0.3, 0.05))
    v = rng.normal(size=8)
    np.testing.assert_allclose(
        apply_L_beta(c, v, grid.h), brute_L_beta(c.beta_hat, v, grid.h), rtol=1e-12, atol=1e-12
    )
    np.testing.assert_allclose(
        apply_L_gamma(c, v, grid.h), brute_L_gamma(c.gamma_hat, v, grid.h), rtol=1e-12, atol=1e-12
    )


def test_gamma_entropy_neutrality():
    grid = Grid(0.0, 2.0, 128)
    rng = np.random.default_rng(7)
    b = 0.3 * np.abs(np.sin(2 * np.pi * grid.x / 2.0))
    c = coeffs_on(grid, b, (0.0, 0.3, 0.05))
    for _ in range(20):
        v = rng.normal(size=128)
        total = grid.h * np.sum(v * apply_L_gamma(c, v, grid.h))
        scale = grid.h * np.sum(np.abs(v * apply_L_gamma(c, v, grid.h))) + 1e-300
        assert abs(total) <= 1e-12 * scale


# --- matrix assembly ----------------------------------------------------------

def test_zero_coeffs_zero_matrices():
    grid = Grid(0.0, 1.0, 16)
    c = coeffs_on(grid, np.zeros(16), (0.0, 0.0, 0.0))
    for M in (matrix_of("beta", c, grid), matrix_of("gamma", c, grid)):
        assert np.abs(M.to_dense()).max() == 0.0


def test_matrix_of_rejects_unknown():
    grid = Grid(0.0, 1.0, 16)
    c = coeffs_on(grid, np.zeros(16), (0.0, 0.3, 0.05))
    with pytest.raises(ValueError):
        matrix_of("delta", c, grid)


def test_matvec_matches_operator():
    grid = Grid(0.0, 2.0, 32)
    rng = np.random.default_rng(8)
    b = rng.uniform(0.0, 0.3, 32)
    c = coeffs_on(grid, b, (0.0, 0.3, 0.05))
    Mb = beta_matrix(c, grid)
    Mg = gamma_matrix(c, grid)
    for _ in range(10):
        v = rng.normal(size=32)
        scale_b = 4 * np.abs(c.beta_hat).max() * np.abs(v).max() / grid.h**2
        scale_g = 8 * np.abs(c.gamma_hat).max() * np.abs(v).max() / grid.h**3
        assert np.abs(Mb.matvec(v) - apply_L_beta(c, v, grid.h)).max() <= 4 * EPS * scale_b
        assert np.abs(Mg.matvec(v) - apply_L_gamma(c, v, grid.h)).max() <= 4 * EPS * scale_g


def test_beta_matrix_symmetric_gamma_skew():
    grid = Grid(0.0, 2.0, 24)
    rng = np.random.default_rng(9)
    b = rng.uniform(0.0, 0.3, 24)
    c = coeffs_on(grid, b, (0.0, 0.3, 0.05))
    B = beta_matrix(c, grid).to_dense()
    assert np.array_equal(B, B.T)  # exact, by construction
    Gm = gamma_matrix(c, grid).to_dense()
    assert np.array_equal(Gm, -Gm.T)


def test_beta_matrix_negative_semidefinite():
    grid = Grid(0.0, 2.0, 32)
    rng = np.random.default_rng(10)
    b = rng.uniform(0.0, 0.3, 32)
    c = coeffs_on(grid, b, (0.0, 0.3, 0.05))
    B = beta_matrix(c, grid).to_dense()
    eig = np.linalg.eigvalsh(-B)
    assert eig.min() >= -1e-12 * np.abs(B).max()
    for _ in range(10):
        v = rng.normal(size=32)
        assert v @ (-B) @ v >= -1e-12 * np.abs(B).max() * (v @ v)
