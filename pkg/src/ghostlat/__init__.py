"""Ghost-force-induced error in 1D quasicontinuum lattice dynamics."""

from .lattice import (
    Field,
    FieldKind,
    LatticeConfig,
    OperatorKind,
    apply_operator,
    build_config,
    ghost_force,
    identity_displacement,
    site_positions,
)
from .dynamics import (
    Model,
    ModelSpec,
    SimulationState,
    Trajectory,
    discrete_gradient,
    dt_max,
    initial_state,
    model_spec,
    run_simulation,
    total_energy,
    verlet_step,
)
from .spectral import (
    SpectralSolution,
    closed_form_displacement,
    closed_form_gradient,
    dispersion,
    displacement_bound,
    gradient_bound,
    green_function,
    plateau_level,
)
from .bounds import (
    BoundReport,
    ExpSumSpec,
    QuadratureError,
    ShortTimeSeries,
    brute_exponential_sum,
    euler_maclaurin_check,
    lemma_bound,
    long_time_check,
    oscillatory_integral,
    plateau_statistics,
    poisson_check,
    scaling_fit,
    short_time_check,
    short_time_series,
    truncated_poisson_decompose,
)

# Morse-potential force constants used throughout the experiments
MORSE_KAPPA1 = 4.4753
MORSE_KAPPA2 = 0.4142

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
