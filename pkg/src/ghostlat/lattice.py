"""Periodic 1D harmonic lattice: configuration, difference operators, ghost force.

The chain has N atoms on (-1/2, 1/2] with spacing epsilon = 1/N; site n
(1-based) sits at x_n = -1/2 + n*epsilon.  Three spatial operators act on
displacement fields:

  * atomistic      -- 5-point stencil with nearest (kappa1) and
                      next-nearest (kappa2) force constants,
  * cauchy_born    -- 3-point stencil with modulus kappa1 + 4*kappa2,
  * qc             -- atomistic on the left half, Cauchy-Born on the right,
                      coupled through three mixed interface rows at
                      n = L-1, L, L+1 (L = N/2, the atom at x = 0).

Applying the qc operator to the position field x_n yields a nonzero force
localized at the three interface rows: the ghost force.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


class OperatorKind(Enum):
    ATOMISTIC = "atomistic"
    CAUCHY_BORN = "cauchy_born"
    QC = "qc"


class FieldKind(Enum):
    DISPLACEMENT = "displacement"
    VELOCITY = "velocity"
    FORCE = "force"
    GRADIENT = "gradient"


@dataclass(frozen=True)
class LatticeConfig:
    """Immutable lattice parameters; all derived quantities hang off this."""

    N: int
    kappa1: float
    kappa2: float

    @property
    def epsilon(self) -> float:
        return 1.0 / self.N

    @property
    def L(self) -> int:
        """1-based index of the interface atom at x = 0."""
        return self.N // 2

    @property
    def cb_modulus(self) -> float:
        """Elastic modulus of the Cauchy-Born stencil, kappa1 + 4*kappa2."""
        return self.kappa1 + 4.0 * self.kappa2

    @property
    def wave_speed(self) -> float:
        return math.sqrt(self.cb_modulus)


@dataclass
class Field:
    """A per-site array of reals, indexed 0..N-1 for atoms n = 1..N."""

    values: np.ndarray
    kind: FieldKind = FieldKind.DISPLACEMENT

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)


def build_config(N: int, kappa1: float, kappa2: float) -> LatticeConfig:
    """Validate and build a lattice configuration.

    N must be even (the interface atom must sit exactly at x = 0) and at
    least 8 so the three interface rows do not overlap the seam stencils.
    kappa1 + 4*kappa2 > 0 is the stability condition of the continuum
    modulus; kappa2 may be negative (e.g. Lennard-Jones constants).
    """
    if N % 2 != 0:
        raise ValueError(f"N must be even, got {N}")
    if N < 8:
        raise ValueError(f"N must be >= 8, got {N}")
    if kappa1 <= 0:
        raise ValueError(f"kappa1 must be positive, got {kappa1}")
    if kappa1 + 4.0 * kappa2 <= 0:
        raise ValueError(
            f"kappa1 + 4*kappa2 must be positive, got {kappa1 + 4.0 * kappa2}"
        )
    return LatticeConfig(N=N, kappa1=kappa1, kappa2=kappa2)


def site_positions(config: LatticeConfig) -> np.ndarray:
    """Reference positions x_n = -1/2 + n*epsilon for n = 1..N."""
    n = np.arange(1, config.N + 1)
    return -0.5 + n * config.epsilon


def identity_displacement(config: LatticeConfig) -> Field:
    """The position field x_n itself, used to expose the ghost force.

    Note: this field is not periodic; it advances by 1 per period
    (winding 1).  Pass winding=1.0 to apply_operator with it.
    """
    return Field(site_positions(config), FieldKind.DISPLACEMENT)


def _extended(values: np.ndarray, winding: float) -> np.ndarray:
    """Pad with two ghost cells per side: z(n + N) = z(n) + winding."""
    ze = np.empty(values.size + 4)
    ze[2:-2] = values
    ze[:2] = values[-2:] - winding
    ze[-2:] = values[:2] + winding
    return ze


def _atomistic_rows(ze: np.ndarray, config: LatticeConfig) -> np.ndarray:
    # Difference form: constants annihilate exactly in floating point.
    k1, k2 = config.kappa1, config.kappa2
    z = ze[2:-2]
    out = k2 * ((ze[:-4] - z) + (ze[4:] - z)) + k1 * ((ze[1:-3] - z) + (ze[3:-1] - z))
    return out / config.epsilon**2


def _cauchy_born_rows(ze: np.ndarray, config: LatticeConfig) -> np.ndarray:
    m = config.cb_modulus
    z = ze[2:-2]
    return m * ((ze[1:-3] - z) + (ze[3:-1] - z)) / config.epsilon**2


def _qc_rows(ze: np.ndarray, config: LatticeConfig) -> np.ndarray:
    k1, k2 = config.kappa1, config.kappa2
    m = config.cb_modulus
    eps2 = config.epsilon**2
    iL = config.L - 1  # 0-based index of the interface atom n = L

    out = _atomistic_rows(ze, config)
    cb = _cauchy_born_rows(ze, config)
    out[iL + 1 :] = cb[iL + 1 :]

    # Mixed rows from the energy summation rule, in difference form.
    # d(i, j) = z(n + j) - z(n) for site index i (padded array offset +2).
    def d(i: int, offset: int) -> float:
        return ze[i + 2 + offset] - ze[i + 2]

    i = iL - 1  # n = L - 1
    out[i] = (
        k2 * d(i, -2) + k1 * d(i, -1) + k1 * d(i, +1) + 0.5 * k2 * d(i, +2)
    ) / eps2
    i = iL  # n = L
    out[i] = (k2 * d(i, -2) + k1 * d(i, -1) + m * d(i, +1)) / eps2
    i = iL + 1  # n = L + 1
    out[i] = (0.5 * k2 * d(i, -2) + m * d(i, -1) + m * d(i, +1)) / eps2
    return out


_ROW_BUILDERS = {
    OperatorKind.ATOMISTIC: _atomistic_rows,
    OperatorKind.CAUCHY_BORN: _cauchy_born_rows,
    OperatorKind.QC: _qc_rows,
}


def apply_operator(
    config: LatticeConfig,
    kind: OperatorKind,
    field: Field | np.ndarray,
    winding: float = 0.0,
) -> Field:
    """Apply a spatial difference operator to a displacement field.

    `winding` is the increment of the field across one period:
    z(n + N) = z(n) + winding.  Periodic fields have winding 0; the
    position field has winding 1 (its wrap would otherwise contaminate
    the seam rows).
    """
    values = field.values if isinstance(field, Field) else np.asarray(field, float)
    if values.shape != (config.N,):
        raise ValueError(f"field length {values.shape} != lattice size {config.N}")
    ze = _extended(values, winding)
    return Field(_ROW_BUILDERS[kind](ze, config), FieldKind.FORCE)


def ghost_force(config: LatticeConfig) -> Field:
    """The static force the qc operator exerts on a uniformly deformed chain.

    Nonzero only at the interface rows: +2*kappa2/eps at n = L and
    -kappa2/eps at n = L +/- 1; it sums to zero.
    """
    f = np.zeros(config.N)
    scale = config.kappa2 / config.epsilon
    iL = config.L - 1
    f[iL] = 2.0 * scale
    f[iL - 1] = -scale
    f[iL + 1] = -scale
    return Field(f, FieldKind.FORCE)
