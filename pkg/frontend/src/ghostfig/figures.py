"""Multi-panel figures for the interface-gradient experiments.

Three figure families, all driven by trajectory CSVs:

  gradient_snapshots  -- Dy vs x, one column per input file (model),
                         one row per sample time,
  interface_histories -- Dy vs t at a handful of sites straddling the
                         interface (default x/eps in -3..2),
  epsilon_sweep       -- Dy vs x near the interface, one column per
                         lattice resolution, shared axes so the shrinking
                         oscillation around the fixed plateau is visible.

Rendering is deterministic: fixed figure sizes, no timestamps, rcParams
pinned locally.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .csvio import Trajectory, plateau_estimate, read_trajectory

FIGURE_KINDS = ("gradient_snapshots", "interface_histories", "epsilon_sweep")

# sites at x = offset * eps around the interface atom at x = 0
DEFAULT_SITE_OFFSETS = (-3, -2, -1, 0, 1, 2)

_RC = {
    "figure.dpi": 100,
    "savefig.dpi": 100,
    "font.size": 8,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 0.9,
}


@dataclass(frozen=True)
class FigureSpec:
    """What to draw: a figure family, its input CSVs and the output path."""

    figure: str
    inputs: tuple[str, ...]
    output: str
    site_offsets: tuple[int, ...] = DEFAULT_SITE_OFFSETS
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.figure not in FIGURE_KINDS:
            raise ValueError(f"unknown figure {self.figure!r}; choose {FIGURE_KINDS}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")
        if not self.site_offsets:
            raise ValueError("site selection must not be empty")
        if self.labels and len(self.labels) != len(self.inputs):
            raise ValueError("labels must match inputs one-to-one")


def _load(spec: FigureSpec) -> list[Trajectory]:
    return [read_trajectory(path) for path in spec.inputs]


def _label(spec: FigureSpec, i: int, traj: Trajectory) -> str:
    if spec.labels:
        return spec.labels[i]
    model = traj.meta.get("model")
    n = traj.meta.get("N")
    return f"model {model}, N={n}" if model and n else f"input {i + 1}"


def _offset_sites(traj: Trajectory, offsets: tuple[int, ...]) -> list[int]:
    sites = []
    for off in offsets:
        n = traj.interface_site + off
        if not (1 <= n <= traj.site_count):
            raise ValueError(f"offset {off} maps to site {n}, outside 1..{traj.site_count}")
        sites.append(n)
    return sites


def _shared_dy_limits(trajs: list[Trajectory]) -> tuple[float, float]:
    lo = min(float(np.min(t.dy)) for t in trajs)
    hi = max(float(np.max(t.dy)) for t in trajs)
    pad = 0.05 * (hi - lo or 1.0)
    return lo - pad, hi + pad


def _render_gradient_snapshots(spec: FigureSpec, trajs: list[Trajectory]):
    times = trajs[0].times
    for t in trajs[1:]:
        if t.times.shape != times.shape or not np.allclose(t.times, times):
            raise ValueError("snapshot inputs must share their sample times")
    fig, axes = plt.subplots(
        len(times), len(trajs),
        figsize=(2.6 * len(trajs), 1.8 * len(times)),
        sharex=True, sharey=True, squeeze=False,
    )
    ylim = _shared_dy_limits(trajs)
    for col, traj in enumerate(trajs):
        for row, t in enumerate(times):
            ax = axes[row][col]
            ax.plot(traj.x, traj.dy[row], color="tab:blue")
            ax.set_ylim(*ylim)
            if row == 0:
                ax.set_title(_label(spec, col, traj))
            if col == 0:
                ax.set_ylabel(f"Dy at t={t:g}")
            if row == len(times) - 1:
                ax.set_xlabel("x")
    return fig


def _render_interface_histories(spec: FigureSpec, trajs: list[Trajectory]):
    traj = trajs[0]
    if len(trajs) != 1:
        raise ValueError("interface_histories takes exactly one input CSV")
    if traj.times.size < 2:
        raise ValueError("need at least two sample times for a history")
    sites = _offset_sites(traj, spec.site_offsets)
    fig, axes = plt.subplots(
        len(sites), 1, figsize=(5.0, 1.4 * len(sites)), sharex=True, squeeze=False
    )
    ylim = _shared_dy_limits(trajs)
    for row, (off, n) in enumerate(zip(spec.site_offsets, sites)):
        ax = axes[row][0]
        ax.plot(traj.times, traj.site_series(n), color="tab:red")
        ax.set_ylim(*ylim)
        ax.set_ylabel(f"x={off:+d}eps")
    axes[-1][0].set_xlabel("t")
    fig.suptitle("interface gradient histories", y=0.995)
    return fig


def _render_epsilon_sweep(spec: FigureSpec, trajs: list[Trajectory]):
    # zoom on a fixed physical window around the interface so panels at
    # different resolutions stay comparable
    window = 0.05
    fig, axes = plt.subplots(
        1, len(trajs), figsize=(2.8 * len(trajs), 2.6),
        sharex=True, sharey=True, squeeze=False,
    )
    ylim = _shared_dy_limits(trajs)
    for col, traj in enumerate(trajs):
        ax = axes[0][col]
        mask = np.abs(traj.x) <= window
        row = traj.times.size - 1
        ax.plot(traj.x[mask], traj.dy[row][mask], color="tab:blue")
        ax.axhline(plateau_estimate(traj), color="k", linestyle="--", linewidth=0.7)
        ax.set_ylim(*ylim)
        ax.set_title(f"eps={traj.epsilon:g}")
        ax.set_xlabel("x")
    axes[0][0].set_ylabel(f"Dy at t={trajs[0].times[-1]:g}")
    return fig


_RENDERERS = {
    "gradient_snapshots": _render_gradient_snapshots,
    "interface_histories": _render_interface_histories,
    "epsilon_sweep": _render_epsilon_sweep,
}


def render(spec: FigureSpec) -> str:
    """Draw the requested figure and write it to spec.output.

    Inputs are validated before any drawing starts, so a bad spec never
    leaves a partial file behind.  Returns the output path.
    """
    trajs = _load(spec)
    with plt.rc_context(_RC):
        fig = _RENDERERS[spec.figure](spec, trajs)
        try:
            fig.savefig(spec.output, metadata={"Software": "ghostfig"})
        finally:
            plt.close(fig)
    return spec.output
