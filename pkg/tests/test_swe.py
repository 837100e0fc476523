import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from bouss1d.errors import NonpositiveDepth
from bouss1d.grid import Bathymetry, State, d_minus, mean_sq
from bouss1d.scenarios import dingemans_bathymetry
from bouss1d.swe import (
    DiffusionConfig,
    ad_interface_production,
    artificial_diffusion_rhs,
    bathy_source,
    ec_flux,
    entropy_flux_pointwise,
    entropy_variables,
    numerical_entropy_flux,
    shuffle_check,
    shuffle_terms,
    swe_rhs,
)

G = 9.81

positive = st.floats(min_value=0.1, max_value=2.0)
speeds = st.floats(min_value=-1.0, max_value=1.0)
bottoms = st.floats(min_value=-0.5, max_value=0.5)


def random_state(rng, n=64):
    d = rng.uniform(0.1, 2.0, n)
    v = rng.uniform(-1.0, 1.0, n)
    b = rng.uniform(-0.5, 0.5, n)
    return State(d, d * v), Bathymetry(b, H=b.max() + 0.1)


# --- entropy variables ------------------------------------------------------

def test_entropy_variables_rest():
    st_ = State(np.ones(8), np.zeros(8))
    ba = Bathymetry(np.zeros(8), 1.0)
    w1, w2 = entropy_variables(st_, ba, G)
    assert np.all(w1 == G) and np.all(w2 == 0.0)


def test_entropy_variables_moving():
    st_ = State(np.ones(8), np.ones(8))
    ba = Bathymetry(np.zeros(8), 1.0)
    w1, w2 = entropy_variables(st_, ba, G)
    assert np.allclose(w1, 9.31) and np.all(w2 == 1.0)


def test_entropy_variables_with_bottom():
    st_ = State(np.full(8, 2.0), np.zeros(8))
    ba = Bathymetry(np.full(8, 3.0), 5.0)
    w1, w2 = entropy_variables(st_, ba, g=1.0)
    assert np.all(w1 == 5.0) and np.all(w2 == 0.0)


def test_entropy_variables_rejects_dry():
    st_ = State(np.array([1.0] * 7 + [-0.1]), np.zeros(8))
    ba = Bathymetry(np.zeros(8), 1.0)
    with pytest.raises(NonpositiveDepth):
        entropy_variables(st_, ba, G)


# --- entropy-conservative flux ---------------------------------------------

def test_ec_flux_rest():
    P, Q = ec_flux(1.0, 1.0, 0.0, 0.0, G)
    assert P == 0.0 and Q == pytest.approx(4.905)


def test_ec_flux_moving_no_gravity():
    P, Q = ec_flux(1.0, 1.0, 2.0, 2.0, 0.0)
    assert (P, Q) == (2.0, 4.0)


@given(positive, speeds, st.floats(min_value=0.1, max_value=20.0))
def test_ec_flux_consistency(d, v, g):
    # equal left/right arguments reproduce the exact physical flux
    P, Q = ec_flux(d, d, v, v, g)
    assert P == pytest.approx(d * v, rel=1e-15)
    assert Q == pytest.approx(d * v**2 + 0.5 * g * d**2, rel=1e-14)


# --- bathymetry source ------------------------------------------------------

def test_bathy_source_constant_bottom():
    rng = np.random.default_rng(0)
    d = rng.uniform(0.5, 1.5, 32)
    src = bathy_source(d, np.full(32, 0.3), G, h=0.1)
    assert np.all(src == 0.0)


def test_bathy_source_balances_flux_gradient():
    # d + b constant: source cancels the gravity part of the flux divergence
    rng = np.random.default_rng(1)
    b = rng.uniform(-0.3, 0.3, 32)
    C = 1.0
    d = C - b
    h = 0.25
    src = bathy_source(d, b, G, h)
    flux_grad = d_minus(0.5 * G * mean_sq(d), h)
    assert np.abs(flux_grad + src).max() <= 1e-13 * G / h


def test_bathy_source_converges_to_g_d_bx():
    # smooth periodic bump, d == 1: source -> g * b_x at second order
    errs = []
    for n in (64, 128, 256):
        x = np.linspace(0.0, 1.0, n, endpoint=False)
        h = 1.0 / n
        b = 0.1 * np.sin(2 * np.pi * x)
        bx = 0.2 * np.pi * np.cos(2 * np.pi * x)
        src = bathy_source(np.ones(n), b, G, h)
        errs.append(np.abs(src - G * bx).max())
    assert errs[1] / errs[0] == pytest.approx(0.25, abs=0.05)
    assert errs[2] / errs[1] == pytest.approx(0.25, abs=0.05)


# --- artificial diffusion ---------------------------------------------------

def test_diffusion_vanishes_at_rest():
    rng = np.random.default_rng(2)
    b = rng.uniform(-0.3, 0.3, 16)
    d = 1.0 - b
    st_ = State(d, np.zeros(16))
    ba = Bathymetry(b, 1.0)
    # construct d so d + b is the same float at each node
    st_.d = np.full(16, 1.0) - ba.b
    rhs_d, rhs_P = artificial_diffusion_rhs(st_, ba, DiffusionConfig(0.7), h=0.1)
    assert np.abs(rhs_d).max() <= 1e-13
    assert np.abs(rhs_P).max() <= 1e-13


def test_diffusion_zero_lambda():
    rng = np.random.default_rng(3)
    st_, ba = random_state(rng, 16)
    rhs_d, rhs_P = artificial_diffusion_rhs(st_, ba, DiffusionConfig(0.0), h=0.1)
    assert np.all(rhs_d == 0.0) and np.all(rhs_P == 0.0)


def test_diffusion_config_rejects_negative():
    with pytest.raises(ValueError):
        DiffusionConfig(-0.1)


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=60)
def test_diffusion_entropy_sign(seed):
    rng = np.random.default_rng(seed)
    st_, ba = random_state(rng, 32)
    for cfg in (DiffusionConfig(0.1), DiffusionConfig(0.05, adaptive=True)):
        prod = ad_interface_production(st_, ba, cfg, G)
        assert np.all(prod <= 0.0)


def test_adaptive_lambda_floor():
    cfg = DiffusionConfig(0.1, adaptive=True)
    v = np.array([0.0, 1.0] * 8)  # delta+ v = +-1 -> bound 0.25
    lam = cfg.interface_lambda(v)
    assert np.all(lam == 0.25)
    v2 = np.full(16, 0.3)
    assert np.all(cfg.interface_lambda(v2) == 0.1)


# --- full right-hand side ---------------------------------------------------

def test_swe_rhs_lake_at_rest_trapezoid():
    n = 1840
    x = np.linspace(-138.0, 46.0, n, endpoint=False)
    ba = Bathymetry(dingemans_bathymetry(x), 0.8)
    st_ = State(ba.h_s.copy(), np.zeros(n))
    ddt_d, res_P = swe_rhs(st_, ba, DiffusionConfig(0.1), G, h=0.1)
    assert np.abs(ddt_d).max() <= 1e-13
    assert np.abs(res_P).max() <= 1e-13


def test_swe_rhs_uniform_flow_flat_bottom():
    st_ = State(np.full(16, 1.3), np.full(16, 1.3 * 0.7))
    ba = Bathymetry(np.zeros(16), 1.3)
    ddt_d, res_P = swe_rhs(st_, ba, DiffusionConfig(0.2), G, h=0.5)
    assert np.all(ddt_d == 0.0) and np.all(res_P == 0.0)


def test_swe_rhs_matches_brute_force_on_step():
    from oracles import brute_swe_rhs

    n, h = 8, 0.5
    d = np.full(n, 1.0)
    P = np.zeros(n)
    b = np.where(np.arange(n) >= 4, 0.25, 0.0)
    st_ = State(d, P)
    ba = Bathymetry(b, 1.5)
    for lam in (0.0, 0.3):
        got_d, got_P = swe_rhs(st_, ba, DiffusionConfig(lam), G, h)
        exp_d, exp_P = brute_swe_rhs(d, P, b, G, h, lam)
        np.testing.assert_allclose(got_d, exp_d, rtol=0, atol=1e-13)
        np.testing.assert_allclose(got_P, exp_P, rtol=0, atol=1e-13)


def test_swe_rhs_random_vs_brute_force():
    from oracles import brute_swe_rhs

    rng = np.random.default_rng(7)
    st_, ba = random_state(rng, 8)
    got_d, got_P = swe_rhs(st_, ba, DiffusionConfig(0.17), G, h=0.3)
    exp_d, exp_P = brute_swe_rhs(st_.d, st_.P, ba.b, G, 0.3, 0.17)
    np.testing.assert_allclose(got_d, exp_d, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(got_P, exp_P, rtol=1e-12, atol=1e-12)


def test_swe_rhs_is_flux_part_plus_diffusion():
    rng = np.random.default_rng(8)
    st_, ba = random_state(rng, 32)
    h = 0.2
    d0, P0 = swe_rhs(st_, ba, DiffusionConfig(0.0), G, h)
    d1, P1 = swe_rhs(st_, ba, DiffusionConfig(0.4), G, h)
    ad_d, ad_P = artificial_diffusion_rhs(st_, ba, DiffusionConfig(0.4), h)
    np.testing.assert_allclose(d1, d0 + ad_d, rtol=0, atol=1e-12)
    np.testing.assert_allclose(P1, P0 + ad_P, rtol=0, atol=1e-12)


def test_mass_conservation_telescoping():
    rng = np.random.default_rng(9)
    st_, ba = random_state(rng, 128)
    ddt_d, _ = swe_rhs(st_, ba, DiffusionConfig(0.1), G, h=0.1)
    assert abs(np.sum(ddt_d)) <= 1e-12 * np.abs(ddt_d).max() * 128


def test_momentum_telescoping_flat_bottom():
    # with constant b the source vanishes and the momentum residual is a pure
    # periodic flux difference, so it telescopes too
    rng = np.random.default_rng(10)
    d = rng.uniform(0.1, 2.0, 128)
    v = rng.uniform(-1.0, 1.0, 128)
    st_ = State(d, d * v)
    ba = Bathymetry(np.full(128, 0.2), 2.5)
    _, res_P = swe_rhs(st_, ba, DiffusionConfig(0.1), G, h=0.1)
    assert abs(np.sum(res_P)) <= 1e-12 * np.abs(res_P).max() * 128


# --- entropy flux and the conservation identity -----------------------------

def test_shuffle_constant_state():
    st_ = State(np.full(16, 1.2), np.full(16, 0.6))
    ba = Bathymetry(np.full(16, 0.1), 1.5)
    assert np.all(shuffle_check(st_, ba, G) == 0.0)


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=200)
def test_shuffle_identity_random(seed):
    rng = np.random.default_rng(seed)
    st_, ba = random_state(rng, 64)
    lhs, rhs = shuffle_terms(st_, ba, G)
    scale = max(np.abs(lhs).max(), np.abs(rhs).max())
    assert np.abs(lhs - rhs).max() <= 1e-12 * scale


def test_entropy_flux_consistent_with_pointwise():
    st_ = State(np.full(16, 1.2), np.full(16, 0.84))
    ba = Bathymetry(np.full(16, 0.2), 1.5)
    F_num = numerical_entropy_flux(st_, ba, G)
    F_exact = entropy_flux_pointwise(st_, ba, G)
    np.testing.assert_allclose(F_num, F_exact, rtol=1e-14)


def test_entropy_flux_still_water_is_zero():
    rng = np.random.default_rng(11)
    b = rng.uniform(-0.2, 0.2, 16)
    st_ = State(1.0 - b, np.zeros(16))
    ba = Bathymetry(b, 1.0)
    assert np.abs(numerical_entropy_flux(st_, ba, G)).max() == 0.0
