"""Tests for the closed-form mode sums: dispersion, Green's function,
displacement and gradient of the ghost-force-driven continuum model."""

import numpy as np
import pytest

import ghostlat as gl
from ghostlat.spectral import (
    SpectralSolution,
    convolved_displacement,
    gradient_endpoint_terms,
)


def config(N=200):
    return gl.build_config(N, gl.MORSE_KAPPA1, gl.MORSE_KAPPA2)


def test_dispersion_endpoints_and_monotonicity():
    cfg = config()
    assert gl.dispersion(cfg, 0) == 0.0
    assert gl.dispersion(cfg, cfg.N) == pytest.approx(0.0, abs=1e-9)
    top = gl.dispersion(cfg, cfg.N // 2)
    assert top == pytest.approx(2.0 * cfg.wave_speed / cfg.epsilon)
    w = gl.dispersion(cfg, np.arange(cfg.N // 2 + 1))
    assert np.all(np.diff(w) > 0)
    with pytest.raises(ValueError):
        gl.dispersion(cfg, cfg.N + 1)


def test_green_function_basics():
    cfg = config(64)
    # starts from zero displacement and is even/periodic in the site index
    assert gl.green_function(cfg, 5, 0.0) == pytest.approx(0.0, abs=1e-15)
    t = 0.37
    g = gl.green_function(cfg, 7, t)
    assert gl.green_function(cfg, -7, t) == pytest.approx(g, rel=1e-12)
    assert gl.green_function(cfg, cfg.N - 7, t) == pytest.approx(g, rel=1e-12)
    with pytest.raises(ValueError):
        gl.green_function(cfg, 0, -0.1)


def test_displacement_against_convolution_oracle():
    # Independent path: quadrature of the Green's-function convolution
    # with the three-point interface forcing.
    cfg = config(200)
    for n, t in [(cfg.L, 0.25), (cfg.L - 1, 0.7), (cfg.L + 13, 1.0), (17, 0.5)]:
        direct = gl.closed_form_displacement(cfg, n, t)
        oracle = convolved_displacement(cfg, n, t, panels=4000)
        assert direct == pytest.approx(oracle, abs=5e-8)


def test_gradient_is_the_forward_difference_of_displacement():
    cfg = config(128)
    for n, t in [(cfg.L, 0.3), (cfg.L + 5, 1.2), (3, 0.9)]:
        y0 = gl.closed_form_displacement(cfg, n, t)
        y1 = gl.closed_form_displacement(cfg, n + 1, t)
        dy = gl.closed_form_gradient(cfg, n, t)
        assert dy == pytest.approx((y1 - y0) / cfg.epsilon, rel=1e-9, abs=1e-9)


def test_gradient_endpoint_terms_vanish():
    cfg = config(64)
    lo, hi = gradient_endpoint_terms(cfg, cfg.L + 3, 0.8)
    assert lo == 0.0
    assert hi == pytest.approx(0.0, abs=1e-12)


def test_gradient_antisymmetry_is_exact():
    cfg = config(200)
    for t in (0.1, 0.6, 1.4):
        for n in (cfg.L, cfg.L - 1, cfg.L + 9, 5):
            a = gl.closed_form_gradient(cfg, n, t)
            b = gl.closed_form_gradient(cfg, cfg.N - n - 1, t)
            assert a == pytest.approx(-b, rel=1e-10, abs=1e-15)


def test_uniform_bounds_hold_on_a_grid():
    cfg = config(200)
    sol = SpectralSolution(cfg)
    ns = np.linspace(1, cfg.N, 25, dtype=int)
    ts = np.linspace(0.0, 2.0, 25)
    assert np.max(np.abs(sol.displacement_grid(ns, ts))) <= gl.displacement_bound(cfg)
    assert np.max(np.abs(sol.gradient_grid(ns, ts))) <= gl.gradient_bound(cfg)


def test_grid_matches_scalar_evaluation():
    cfg = config(100)
    sol = SpectralSolution(cfg)
    ns = np.array([cfg.L, cfg.L + 4, 10])
    ts = np.array([0.2, 0.9])
    y = sol.displacement_grid(ns, ts)
    dy = sol.gradient_grid(ns, ts)
    for i, n in enumerate(ns):
        for j, t in enumerate(ts):
            assert y[i, j] == pytest.approx(
                gl.closed_form_displacement(cfg, int(n), float(t)), rel=1e-10
            )
            assert dy[i, j] == pytest.approx(
                gl.closed_form_gradient(cfg, int(n), float(t)), rel=1e-10
            )


def test_summation_orders_agree():
    cfg = config(100)
    a = SpectralSolution(cfg, "compensated")
    b = SpectralSolution(cfg, "ascending_k")
    assert a.gradient(cfg.L, 0.8) == pytest.approx(b.gradient(cfg.L, 0.8), rel=1e-10)
    with pytest.raises(ValueError):
        SpectralSolution(cfg, "random_shuffle")


def test_plateau_level_sign_and_magnitude():
    cfg = config()
    p = gl.plateau_level(cfg)
    assert p == pytest.approx(-cfg.kappa2 / cfg.cb_modulus)
    assert p < 0  # Morse constants: kappa2 > 0
