"""Readers for the ghostlat CSV contracts.

This package talks to the simulation tool only through its exported
files: trajectory CSVs with a `t,n,x,y,Dy` header (one row per sample
time and site, `#` comment lines carrying a config echo) and sweep
summary CSVs with an `epsilon,...` header.  Nothing here imports the
simulation package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TRAJECTORY_COLUMNS = ["t", "n", "x", "y", "Dy"]


@dataclass(frozen=True)
class Trajectory:
    """Contents of one trajectory CSV, reshaped to (time, site) grids."""

    meta: dict
    times: np.ndarray  # sorted unique sample times, shape (T,)
    n: np.ndarray  # site indices 1..N, shape (S,)
    x: np.ndarray  # site positions, shape (S,)
    y: np.ndarray  # displacement, shape (T, S)
    dy: np.ndarray  # discrete gradient, shape (T, S)

    @property
    def site_count(self) -> int:
        return self.n.size

    @property
    def epsilon(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def interface_site(self) -> int:
        """The 1-based index of the site at x = 0."""
        return int(self.n[np.argmin(np.abs(self.x))])

    def site_series(self, n: int) -> np.ndarray:
        """Dy history at one site, indexed by self.times."""
        idx = np.nonzero(self.n == n)[0]
        if idx.size == 0:
            raise ValueError(f"site {n} not present (have 1..{self.site_count})")
        return self.dy[:, idx[0]]


def read_trajectory(path: str) -> Trajectory:
    """Parse a trajectory CSV; raises ValueError on a foreign schema."""
    meta = {}
    rows = []
    header = None
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if "=" in body:
                    key, value = (p.strip() for p in body.split("=", 1))
                    meta[key] = value
                continue
            if header is None:
                header = line.split(",")
                if header != TRAJECTORY_COLUMNS:
                    raise ValueError(
                        f"{path}: expected header {TRAJECTORY_COLUMNS}, got {header}"
                    )
                continue
            rows.append([float(tok) for tok in line.split(",")])
    if header is None or not rows:
        raise ValueError(f"{path}: no data rows")

    data = np.asarray(rows)
    times = np.unique(data[:, 0])
    sites = np.unique(data[:, 1]).astype(int)
    S, T = sites.size, times.size
    if data.shape[0] != S * T:
        raise ValueError(f"{path}: ragged grid ({data.shape[0]} rows, {S}x{T} grid)")

    # rows are written time-major and site-ordered; sort defensively anyway
    order = np.lexsort((data[:, 1], data[:, 0]))
    data = data[order]
    x = data[:S, 2]
    y = data[:, 3].reshape(T, S)
    dy = data[:, 4].reshape(T, S)
    return Trajectory(meta=meta, times=times, n=sites, x=x, y=y, dy=dy)


def read_sweep_summary(path: str) -> dict:
    """Columns of a sweep summary CSV as float arrays."""
    header = None
    rows = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = line.split(",")
                continue
            rows.append([float(tok) for tok in line.split(",")])
    if header is None or not rows:
        raise ValueError(f"{path}: no data rows")
    data = np.asarray(rows)
    return {name: data[:, j] for j, name in enumerate(header)}


def plateau_estimate(traj: Trajectory, t_min: float = 0.2) -> float:
    """Interface-gradient level: mean Dy at the x = 0 site over t >= t_min.

    Falls back to the latest sample time if none reach t_min.
    """
    series = traj.site_series(traj.interface_site)
    mask = traj.times >= t_min
    if not np.any(mask):
        mask = traj.times == traj.times[-1]
    return float(np.mean(series[mask]))
