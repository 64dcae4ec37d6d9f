"""Acceptance suite: one test per headline property of the package.

Each test prints a single PASS line when its criterion holds, so the
suite doubles as a checklist under `pytest -v`.  Tolerances are pinned
here and must not be loosened without revisiting the estimates they
guard.
"""

import math
import time

import numpy as np
import pytest

import ghostlat as gl
from ghostlat import Model, OperatorKind, bounds as bd
from ghostlat.dynamics import acceleration, initial_state
from ghostlat.spectral import SpectralSolution


def _report(name):
    print(f"ACCEPTANCE PASS: {name}")


def test_ghost_force_identity():
    # The qc operator applied to the position field must reproduce the
    # closed-form ghost force: exact zeros away from the interface and
    # <= 1e-12 relative error on the three interface rows.  A dyadic
    # lattice size makes the stencil cancellations exact in binary.
    start = time.time()
    cfg = gl.build_config(2048, gl.MORSE_KAPPA1, gl.MORSE_KAPPA2)
    out = gl.apply_operator(
        cfg, OperatorKind.QC, gl.identity_displacement(cfg), winding=1.0
    ).values
    f = gl.ghost_force(cfg).values
    iL = cfg.L - 1
    scale = cfg.kappa2 / cfg.epsilon
    mask = np.ones(cfg.N, bool)
    mask[iL - 1 : iL + 2] = False
    assert np.all(out[mask] == 0.0)
    assert np.max(np.abs(out[~mask] - f[~mask])) <= 1e-12 * abs(scale)
    assert abs(np.sum(f)) <= 1e-12 * abs(scale)
    assert time.time() - start < 1.0
    _report("ghost-force identity (exact off-interface, <=1e-12 at the rows)")


def test_integrator_matches_closed_form_at_second_order():
    # Verlet trajectories of the driven continuum model converge to the
    # closed-form gradient at second order in dt.
    start = time.time()
    cfg = gl.build_config(400, gl.MORSE_KAPPA1, gl.MORSE_KAPPA2)
    spec = gl.model_spec(cfg, Model.I)
    times = [0.01, 0.05, 0.2, 1.0]
    sol = SpectralSolution(cfg)
    ns = np.arange(1, cfg.N + 1)

    errs = []
    for divisor in (32, 64, 128):
        dt = gl.dt_max(cfg) / divisor
        traj = gl.run_simulation(cfg, spec, dt, times[-1], times)
        # compare at the recorded step times (samples land on the nearest
        # completed step, not exactly on the requested times)
        recorded = np.array([s[0] for s in traj.samples])
        exact = sol.gradient_grid(ns, recorded)
        worst = 0.0
        for j, (_, _, dy) in enumerate(traj.samples):
            worst = max(worst, float(np.max(np.abs(dy - exact[:, j]))))
        errs.append(worst)
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert all(1.8 <= o <= 2.2 for o in orders), orders
    assert time.time() - start < 30.0
    _report(f"integrator/closed-form oracle equivalence (orders {orders})")


@pytest.mark.parametrize("N", [200, 2000])
def test_uniform_bounds_and_antisymmetry(N):
    # |y| <= 2|kappa2| eps/(kappa1+4kappa2), |Dy| <= 4|kappa2|/(kappa1+4kappa2)
    # on a 50x50 (site, time) grid over t in [0, 2]; the gradient is
    # antisymmetric about the interface midpoint.
    cfg = gl.build_config(N, gl.MORSE_KAPPA1, gl.MORSE_KAPPA2)
    sol = SpectralSolution(cfg)
    ns = np.unique(np.linspace(1, cfg.N, 50, dtype=int))
    ts = np.linspace(0.0, 2.0, 50)
    y = sol.displacement_grid(ns, ts)
    assert np.max(np.abs(y)) <= gl.displacement_bound(cfg)
    all_ns = np.arange(1, cfg.N + 1)
    dy = sol.gradient_grid(all_ns, ts)
    assert np.max(np.abs(dy)) <= gl.gradient_bound(cfg)
    # partner of site n is N - n - 1; in 0-based array terms that is a
    # reversal advanced by two slots (with periodic wrap)
    mirrored = np.roll(dy[::-1, :], -2, axis=0)
    assert np.max(np.abs(dy + mirrored)) <= 1e-12
    _report(f"uniform displacement/gradient bounds and antisymmetry at N={N}")


def test_long_time_plateau_and_amplitude_scaling():
    # Time-averaged interface gradient sits on the plateau
    # -kappa2/(kappa1+4kappa2) within 3*sqrt(eps), and the oscillation
    # amplitude shrinks like eps^(1/2) across the standard sweep.
    start = time.time()
    sweep = []
    for N in (2000, 4000, 8000):
        cfg = gl.build_config(N, gl.MORSE_KAPPA1, gl.MORSE_KAPPA2)
        stats = bd.plateau_statistics(cfg)
        assert abs(stats.time_average - stats.plateau) <= 3.0 * math.sqrt(cfg.epsilon)
        sweep.append((stats.epsilon, stats.amplitude))
    slope = bd.scaling_fit(sweep)
    assert 0.35 <= slope <= 0.65, slope
    assert time.time() - start < 600.0
    _report(f"long-time plateau within 3*sqrt(eps); amplitude exponent {slope:.3f}")


def test_short_time_interface_formula():
    # On the fast scale the interface gradient follows the alternating
    # series level within the explicit constant 2*pi*(eps + gamma).
    start = time.time()
    cfg = gl.build_config(2000, gl.MORSE_KAPPA1, gl.MORSE_KAPPA2)
    eps = cfg.epsilon
    kr = cfg.kappa2 / cfg.cb_modulus
    for t in (0.5 * eps, eps, 2 * eps, 5 * eps):
        gamma = t * cfg.wave_speed
        series = bd.short_time_series(gamma / eps).value
        level = -kr + 2.0 * kr * series
        dy = gl.closed_form_gradient(cfg, cfg.L, t)
        assert abs(dy - level) <= 2.0 * math.pi * (eps + gamma)
    assert time.time() - start < 10.0
    _report("short-time interface formula with explicit 2*pi*(eps+gamma)")


def test_exponential_sum_machinery_randomized():
    # Truncated Poisson reconstruction within the explicit remainder R on
    # 20 seeded random instances, and every per-frequency lemma bound
    # holds against the quadrature oracle.
    start = time.time()
    rng = np.random.default_rng(7)
    for _ in range(20):
        N = int(rng.integers(50, 300)) * 2
        gamma = float(rng.uniform(1.0, 20.0))
        amp = "sin" if rng.integers(2) else "sin_sq"
        rho = 0.0 if amp == "sin_sq" else float(rng.uniform(0.0, 0.5))
        sign = "plus" if rng.integers(2) else "minus"
        spec = bd.ExpSumSpec(N=N, gamma=gamma, rho=rho, phase_sign=sign, amplitude=amp)
        report = bd.poisson_check(spec)
        assert report.passed, report
        for nu in bd.applicable_nu_range(spec):
            lemma = bd.lemma_bound(nu, spec)
            assert lemma.passed, lemma
    assert time.time() - start < 300.0
    _report("truncated Poisson + per-frequency lemma bounds on 20 random instances")


@pytest.mark.parametrize("N", [200, 2000])
def test_euler_maclaurin_remainder(N):
    start = time.time()
    cfg = gl.build_config(N, gl.MORSE_KAPPA1, gl.MORSE_KAPPA2)
    for t in (0.0, cfg.epsilon, 5 * cfg.epsilon):
        assert bd.euler_maclaurin_check(cfg, t).passed
    assert time.time() - start < 5.0
    _report(f"Euler-Maclaurin remainder (pi/N)(2+2*gamma/eps) at N={N}")


def test_series_bessel_identity():
    mpmath = pytest.importorskip("mpmath")
    for x in (0.5, 1.0, 3.0):
        got = bd.short_time_series(x).value
        want = float(mpmath.besselj(0, 2 * x) - mpmath.besselj(1, 2 * x) / (2 * x))
        assert abs(got - want) <= 1e-12
    _report("series identity S(x) = J0(2x) - J1(2x)/(2x) to 1e-12")
