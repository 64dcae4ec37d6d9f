"""Closed-form solution of the Cauchy-Born model driven by the ghost force.

Everything here is an explicit mode sum: the dispersion relation, the
lattice Green's function, and the displacement/gradient of Model I.
Direct O(N) sums keep the formula-to-code map transparent; scalar
evaluations use compensated accumulation (math.fsum).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lattice import LatticeConfig


def dispersion(config: LatticeConfig, k) -> float | np.ndarray:
    """Mode frequency omega_k = (2/eps)*sqrt(kappa1+4*kappa2)*sin(k*pi/N)."""
    k_arr = np.asarray(k)
    if np.any(k_arr < 0) or np.any(k_arr > config.N):
        raise ValueError(f"mode index must lie in 0..{config.N}")
    w = (2.0 / config.epsilon) * config.wave_speed * np.sin(k_arr * np.pi / config.N)
    return float(w) if np.isscalar(k) else w


def _omegas(config: LatticeConfig) -> np.ndarray:
    """omega_k for k = 0..N."""
    return dispersion(config, np.arange(config.N + 1))


def green_function(config: LatticeConfig, n: int, t: float) -> float:
    """Lattice Green's function: response to a unit velocity kick at site 0.

    G(n, t) = t/N + (1/N) sum_{k=1}^{N-1} sin(omega_k t)/omega_k
              * cos(2 k n pi / N), periodic in n.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    N = config.N
    k = np.arange(1, N)
    w = _omegas(config)[1:N]
    terms = np.sin(w * t) / w * np.cos(2.0 * np.pi * k * n / N)
    return t / N + math.fsum(terms) / N


def _displacement_prefactor(config: LatticeConfig) -> float:
    return (config.epsilon / config.N) * 2.0 * config.kappa2 / config.cb_modulus


def closed_form_displacement(config: LatticeConfig, n: int, t: float) -> float:
    """y(n, t) of Model I as an explicit mode sum over k = 1..N-1."""
    N = config.N
    k = np.arange(1, N)
    w = _omegas(config)[1:N]
    terms = np.sin(0.5 * w * t) ** 2 * np.cos(2.0 * np.pi * k * (n - config.L) / N)
    return _displacement_prefactor(config) * math.fsum(terms)


def closed_form_gradient(config: LatticeConfig, n: int, t: float) -> float:
    """Dy(n, t) of Model I over k = 0..N (both endpoint terms vanish)."""
    N = config.N
    k = np.arange(0, N + 1)
    w = _omegas(config)
    offset = n + 0.5 - config.L
    terms = (
        np.sin(2.0 * np.pi * k * offset / N)
        * np.sin(np.pi * k / N)
        * np.sin(0.5 * w * t) ** 2
    )
    pref = -(4.0 * config.kappa2) / (config.cb_modulus * N)
    return pref * math.fsum(terms)


def gradient_endpoint_terms(config: LatticeConfig, n: int, t: float) -> tuple[float, float]:
    """The k = 0 and k = N terms of the gradient sum; both are exactly zero."""
    N = config.N
    out = []
    for k in (0, N):
        w = dispersion(config, k)
        out.append(
            math.sin(2.0 * math.pi * k * (n + 0.5 - config.L) / N)
            * math.sin(math.pi * k / N)
            * math.sin(0.5 * w * t) ** 2
        )
    return out[0], out[1]


def displacement_bound(config: LatticeConfig) -> float:
    """Uniform-in-(n,t) bound 2|kappa2| eps / (kappa1 + 4 kappa2) on |y|."""
    return 2.0 * abs(config.kappa2) * config.epsilon / config.cb_modulus


def gradient_bound(config: LatticeConfig) -> float:
    """Uniform-in-(n,t) bound 4|kappa2| / (kappa1 + 4 kappa2) on |Dy|."""
    return 4.0 * abs(config.kappa2) / config.cb_modulus


def plateau_level(config: LatticeConfig) -> float:
    """The constant -kappa2/(kappa1+4*kappa2) around which Dy(L, t) oscillates."""
    return -config.kappa2 / config.cb_modulus


@dataclass(frozen=True)
class SpectralSolution:
    """Vectorized evaluator of the Model I closed forms on (n, t) grids.

    summation_order 'compensated' routes scalar calls through math.fsum;
    'ascending_k' uses numpy's pairwise reduction.  Both are deterministic
    for fixed inputs.
    """

    config: LatticeConfig
    summation_order: str = "compensated"

    def __post_init__(self):
        if self.summation_order not in ("compensated", "ascending_k"):
            raise ValueError(f"unknown summation order {self.summation_order!r}")

    def displacement(self, n: int, t: float) -> float:
        if self.summation_order == "compensated":
            return closed_form_displacement(self.config, n, t)
        return float(self.displacement_grid(np.array([n]), np.array([t]))[0, 0])

    def gradient(self, n: int, t: float) -> float:
        if self.summation_order == "compensated":
            return closed_form_gradient(self.config, n, t)
        return float(self.gradient_grid(np.array([n]), np.array([t]))[0, 0])

    def displacement_grid(self, ns: np.ndarray, ts: np.ndarray) -> np.ndarray:
        """y on the outer grid of sites x times, shape (len(ns), len(ts))."""
        cfg = self.config
        N = cfg.N
        k = np.arange(1, N)
        w = _omegas(cfg)[1:N]
        offs = np.asarray(ns) - cfg.L
        cosines = np.cos(2.0 * np.pi * np.outer(offs, k) / N)
        sines = np.sin(0.5 * np.multiply.outer(w, np.asarray(ts))) ** 2
        return _displacement_prefactor(cfg) * cosines @ sines

    def gradient_grid(self, ns: np.ndarray, ts: np.ndarray) -> np.ndarray:
        """Dy on the outer grid of sites x times, shape (len(ns), len(ts))."""
        cfg = self.config
        N = cfg.N
        k = np.arange(0, N + 1)
        w = _omegas(cfg)
        offs = np.asarray(ns) + 0.5 - cfg.L
        site_part = np.sin(2.0 * np.pi * np.outer(offs, k) / N) * np.sin(
            np.pi * k / N
        )
        time_part = np.sin(0.5 * np.multiply.outer(w, np.asarray(ts))) ** 2
        pref = -(4.0 * cfg.kappa2) / (cfg.cb_modulus * N)
        return pref * site_part @ time_part


def convolved_displacement(
    config: LatticeConfig, n: int, t: float, panels: int = 1000
) -> float:
    """Displacement by Simpson quadrature of the Green's-function convolution.

    Independent of the mode-sum path: integrates
    (kappa2/eps) * [2 G(n-L, t-s) - G(n-L-1, t-s) - G(n-L+1, t-s)] over
    s in [0, t], retaining the secular t/N term of G (it must cancel
    because the ghost force has zero mean).
    """
    if panels % 2 != 0:
        panels += 1
    s = np.linspace(0.0, t, panels + 1)
    tau = t - s
    N, L = config.N, config.L
    k = np.arange(1, N)
    w = _omegas(config)[1:N]
    # G(m, tau) for the three offsets, vectorized over tau
    sin_wt = np.sin(np.multiply.outer(tau, w)) / w  # (panels+1, N-1)
    g = {}
    for m in (n - L, n - L - 1, n - L + 1):
        cosines = np.cos(2.0 * np.pi * k * m / N)
        g[m] = tau / N + (sin_wt @ cosines) / N
    integrand = (config.kappa2 / config.epsilon) * (
        2.0 * g[n - L] - g[n - L - 1] - g[n - L + 1]
    )
    weights = np.ones(panels + 1)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    h = t / panels
    return float(h / 3.0 * (weights @ integrand))
