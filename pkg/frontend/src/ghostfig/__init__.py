"""Figure rendering for ghostlat CSV outputs."""

from .csvio import Trajectory, plateau_estimate, read_sweep_summary, read_trajectory
from .figures import DEFAULT_SITE_OFFSETS, FIGURE_KINDS, FigureSpec, render

__all__ = [
    "Trajectory",
    "plateau_estimate",
    "read_sweep_summary",
    "read_trajectory",
    "DEFAULT_SITE_OFFSETS",
    "FIGURE_KINDS",
    "FigureSpec",
    "render",
]
__version__ = "0.1.0"
