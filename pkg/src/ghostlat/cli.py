"""Command-line front end: config parsing, experiment orchestration, CSV export.

Four commands:

  simulate -- velocity-Verlet trajectory of one model, written as a CSV
              with one row per (sample time, site),
  spectral -- the closed-form displacement/gradient on the same grid,
  bounds   -- a battery of estimate checks serialized as a report CSV,
  sweep    -- spectral runs at epsilon in {1/2000, 1/4000, 1/8000} plus a
              summary CSV with the fitted amplitude-scaling exponent,

plus a `diff` utility comparing two trajectory CSVs column by column.

Data files are deterministic: floats use 17 significant digits, lines end
with \n, and the only metadata is a config echo in leading `#` comments.
The GHOSTLAT_OUTDIR environment variable redirects all outputs into the
given directory.  Exit status is nonzero iff a report fails or an error
occurs.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, field, replace

import numpy as np

from . import bounds as bd
from .dynamics import Model, dt_max, model_spec, run_simulation
from .lattice import LatticeConfig, build_config, site_positions
from .spectral import SpectralSolution

MORSE_KAPPA1 = 4.4753
MORSE_KAPPA2 = 0.4142

DEFAULT_SAMPLE_TIMES = (0.01, 0.05, 0.2, 1.0)
SWEEP_SIZES = (2000, 4000, 8000)


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully deterministic description of one CLI run (no seeds anywhere)."""

    command: str  # simulate | spectral | bounds | sweep
    N: int = 2000
    kappa1: float = MORSE_KAPPA1
    kappa2: float = MORSE_KAPPA2
    model: Model = Model.III
    dt_factor: float = 0.1
    t_end: float = 1.0
    sample_times: tuple[float, ...] = DEFAULT_SAMPLE_TIMES
    output_path: str = ""

    def lattice(self) -> LatticeConfig:
        return build_config(self.N, self.kappa1, self.kappa2)


_FILE_KEYS = {
    "N": int,
    "kappa1": float,
    "kappa2": float,
    "model": str,
    "dt_factor": float,
    "t_end": float,
    "sample_times": str,
    "output": str,
}


def _parse_sample_times(text: str) -> tuple[float, ...]:
    times = tuple(float(tok) for tok in text.replace(",", " ").split())
    if not times:
        raise ValueError("sample_times must contain at least one time")
    if any(t < 0 for t in times):
        raise ValueError("sample times must be nonnegative")
    return tuple(sorted(times))


def read_config_file(path: str) -> dict:
    """Parse a flat `key = value` config file; `#` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected `key = value`, got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _FILE_KEYS:
                raise ValueError(
                    f"{path}:{lineno}: unknown key {key!r} "
                    f"(known: {', '.join(sorted(_FILE_KEYS))})"
                )
            out[key] = _FILE_KEYS[key](value)
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghostlat",
        description="Ghost-force error experiments on a periodic 1D lattice.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="key = value config file; flags override it")
        p.add_argument("--N", type=int, help="number of atoms (even, >= 8)")
        p.add_argument("--kappa1", type=float, help="nearest-neighbor force constant")
        p.add_argument("--kappa2", type=float, help="next-nearest force constant")
        p.add_argument("--output", help="output file (or directory for sweep)")

    p = sub.add_parser("simulate", help="integrate one model and export a trajectory")
    add_common(p)
    p.add_argument("--model", choices=[m.value for m in Model], help="I, II or III")
    p.add_argument("--dt-factor", type=float, help="time step as a fraction of the stability limit")
    p.add_argument("--t-end", type=float, help="final time")
    p.add_argument("--sample-times", help="comma-separated times to record")

    p = sub.add_parser("spectral", help="closed-form solution on the same grid")
    add_common(p)
    p.add_argument("--sample-times", help="comma-separated times to record")
    p.add_argument("--t-end", type=float, help="final time (caps sample times)")

    p = sub.add_parser("bounds", help="run the estimate checks and export a report")
    add_common(p)

    p = sub.add_parser("sweep", help="spectral runs at the three standard lattice sizes")
    add_common(p)
    p.add_argument("--sample-times", help="comma-separated times to record")

    p = sub.add_parser("diff", help="compare two trajectory CSVs")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--tolerance", type=float, default=1e-6,
                   help="max allowed |Dy| discrepancy")
    return parser


def parse_config(argv: list[str]) -> ExperimentConfig | argparse.Namespace:
    """Resolve defaults < config file < flags into an ExperimentConfig.

    The `diff` utility takes no lattice parameters and returns the raw
    namespace instead.
    """
    args = _build_parser().parse_args(argv)
    if args.command == "diff":
        return args

    merged = {}
    if args.config:
        merged.update(read_config_file(args.config))
    for key in _FILE_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value

    cfg = ExperimentConfig(command=args.command)
    if "N" in merged:
        cfg = replace(cfg, N=int(merged["N"]))
    if "kappa1" in merged:
        cfg = replace(cfg, kappa1=float(merged["kappa1"]))
    if "kappa2" in merged:
        cfg = replace(cfg, kappa2=float(merged["kappa2"]))
    if "model" in merged:
        try:
            cfg = replace(cfg, model=Model(merged["model"]))
        except ValueError:
            raise ValueError(f"unknown model {merged['model']!r}; choose I, II or III")
    if "dt_factor" in merged:
        df = float(merged["dt_factor"])
        if not (0.0 < df <= 1.0):
            raise ValueError(f"dt_factor must lie in (0, 1], got {df}")
        cfg = replace(cfg, dt_factor=df)
    if "t_end" in merged:
        te = float(merged["t_end"])
        if te < 0:
            raise ValueError(f"t_end must be nonnegative, got {te}")
        cfg = replace(cfg, t_end=te)
    if "sample_times" in merged:
        cfg = replace(cfg, sample_times=_parse_sample_times(str(merged["sample_times"])))
        if cfg.sample_times[-1] > cfg.t_end:
            cfg = replace(cfg, t_end=cfg.sample_times[-1])
    elif cfg.t_end != ExperimentConfig.t_end:
        # t_end was customized but the sample times were not: clip the
        # default schedule and always record the final time
        kept = tuple(t for t in cfg.sample_times if t < cfg.t_end)
        cfg = replace(cfg, sample_times=kept + (cfg.t_end,))
    if "output" in merged:
        cfg = replace(cfg, output_path=str(merged["output"]))
    cfg.lattice()  # validate N / kappa constraints eagerly
    return cfg


# --------------------------------------------------------------------------
# output helpers
# --------------------------------------------------------------------------

def _resolve_output(path: str, default_name: str) -> str:
    """Apply the GHOSTLAT_OUTDIR override and fall back to a default name."""
    if not path:
        path = default_name
    outdir = os.environ.get("GHOSTLAT_OUTDIR")
    if outdir:
        path = os.path.join(outdir, os.path.basename(path))
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    return path


def _fmt(x: float) -> str:
    return "%.17g" % x


def _config_echo(cfg: ExperimentConfig) -> list[str]:
    return [
        f"# command = {cfg.command}",
        f"# N = {cfg.N}",
        f"# kappa1 = {_fmt(cfg.kappa1)}",
        f"# kappa2 = {_fmt(cfg.kappa2)}",
        f"# model = {cfg.model.value}",
        f"# dt_factor = {_fmt(cfg.dt_factor)}",
        f"# t_end = {_fmt(cfg.t_end)}",
        f"# sample_times = {' '.join(_fmt(t) for t in cfg.sample_times)}",
    ]


def write_trajectory_csv(
    path: str,
    cfg: ExperimentConfig,
    samples: list[tuple[float, np.ndarray, np.ndarray]],
) -> None:
    """One row per (sample time, site): t,n,x,y,Dy with 17 significant digits."""
    lattice = cfg.lattice()
    xs = site_positions(lattice)
    lines = _config_echo(cfg)
    lines.append("t,n,x,y,Dy")
    for t, y, dy in samples:
        for i in range(lattice.N):
            lines.append(
                f"{_fmt(t)},{i + 1},{_fmt(xs[i])},{_fmt(y[i])},{_fmt(dy[i])}"
            )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_report_csv(path: str, reports: list[bd.BoundReport]) -> None:
    lines = ["check,params,quantity,bound,margin,passed"]
    for r in reports:
        lines.append(
            f"{r.check},{r.params},{_fmt(r.quantity)},{_fmt(r.bound)},"
            f"{_fmt(r.margin)},{str(r.passed).lower()}"
        )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_trajectory_csv(path: str) -> dict:
    """Columns of a trajectory CSV as float arrays (comments skipped)."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        header = None
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = line.split(",")
                if header != ["t", "n", "x", "y", "Dy"]:
                    raise ValueError(f"{path}: unexpected header {header}")
                continue
            rows.append([float(tok) for tok in line.split(",")])
    if header is None:
        raise ValueError(f"{path}: empty file")
    data = np.array(rows)
    return {name: data[:, j] for j, name in enumerate(header)}


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def _cmd_simulate(cfg: ExperimentConfig) -> int:
    lattice = cfg.lattice()
    spec = model_spec(lattice, cfg.model)
    dt = cfg.dt_factor * dt_max(lattice)
    traj = run_simulation(lattice, spec, dt, cfg.t_end, list(cfg.sample_times))
    path = _resolve_output(cfg.output_path, f"trajectory_model{cfg.model.value}.csv")
    write_trajectory_csv(path, cfg, traj.samples)
    print(f"wrote {path} ({len(traj.samples)} sample times, N={cfg.N})")
    return 0


def _spectral_samples(
    cfg: ExperimentConfig,
) -> list[tuple[float, np.ndarray, np.ndarray]]:
    lattice = cfg.lattice()
    sol = SpectralSolution(lattice)
    ns = np.arange(1, lattice.N + 1)
    ts = np.array(cfg.sample_times)
    y = sol.displacement_grid(ns, ts)
    dy = sol.gradient_grid(ns, ts)
    return [(float(t), y[:, j].copy(), dy[:, j].copy()) for j, t in enumerate(ts)]


def _cmd_spectral(cfg: ExperimentConfig) -> int:
    path = _resolve_output(cfg.output_path, "spectral_modelI.csv")
    write_trajectory_csv(path, cfg, _spectral_samples(cfg))
    print(f"wrote {path} ({len(cfg.sample_times)} sample times, N={cfg.N})")
    return 0


def bounds_battery(lattice: LatticeConfig) -> list[bd.BoundReport]:
    """The standard set of estimate checks the bounds command exports."""
    eps = lattice.epsilon
    reports: list[bd.BoundReport] = []
    for t in (0.5 * eps, eps, 2.0 * eps, 5.0 * eps):
        for n in (lattice.L, lattice.L - 1, lattice.L + 50):
            reports.append(bd.short_time_check(lattice, t, n))
    for t in (0.5, 1.0, 1.5):
        for n in (lattice.L, lattice.L - 1, lattice.L + 7):
            reports.append(bd.long_time_check(lattice, t, n))
    for t in (0.0, eps, 5.0 * eps):
        reports.append(bd.euler_maclaurin_check(lattice, t))
    spec = bd.ExpSumSpec(N=min(lattice.N, 400), gamma=7.0, rho=0.1,
                         phase_sign="plus", amplitude="sin")
    reports.append(bd.poisson_check(spec))
    for nu in bd.applicable_nu_range(spec):
        reports.append(bd.lemma_bound(nu, spec))
    return reports


def _cmd_bounds(cfg: ExperimentConfig) -> int:
    reports = bounds_battery(cfg.lattice())
    path = _resolve_output(cfg.output_path, "bound_reports.csv")
    write_report_csv(path, reports)
    failed = [r for r in reports if not r.passed]
    print(f"wrote {path}: {len(reports) - len(failed)}/{len(reports)} checks passed")
    for r in failed:
        print(f"FAILED {r.check} [{r.params}]: {r.quantity:.6g} > {r.bound:.6g}")
    return 1 if failed else 0


def _cmd_sweep(cfg: ExperimentConfig) -> int:
    outdir = _resolve_output(cfg.output_path or "sweep", "sweep")
    os.makedirs(outdir, exist_ok=True)
    sweep_points = []
    for N in SWEEP_SIZES:
        member = replace(cfg, N=N, output_path="")
        path = os.path.join(outdir, f"spectral_N{N}.csv")
        write_trajectory_csv(path, member, _spectral_samples(member))
        stats = bd.plateau_statistics(member.lattice())
        sweep_points.append(stats)
        print(f"wrote {path} (plateau average {stats.time_average:.8f})")
    slope = bd.scaling_fit([(s.epsilon, s.amplitude) for s in sweep_points])
    summary = os.path.join(outdir, "sweep_summary.csv")
    lines = ["epsilon,time_average,plateau,amplitude"]
    for s in sweep_points:
        lines.append(
            f"{_fmt(s.epsilon)},{_fmt(s.time_average)},{_fmt(s.plateau)},{_fmt(s.amplitude)}"
        )
    lines.append(f"# fitted amplitude exponent = {_fmt(slope)}")
    with open(summary, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {summary} (fitted amplitude exponent {slope:.4f})")
    return 0


def _cmd_diff(args: argparse.Namespace) -> int:
    left = read_trajectory_csv(args.left)
    right = read_trajectory_csv(args.right)
    if left["t"].shape != right["t"].shape:
        print("row counts differ; files are not comparable")
        return 1
    dy_gap = float(np.max(np.abs(left["Dy"] - right["Dy"])))
    y_gap = float(np.max(np.abs(left["y"] - right["y"])))
    print(f"max |y| discrepancy:  {y_gap:.6e}")
    print(f"max |Dy| discrepancy: {dy_gap:.6e} (tolerance {args.tolerance:.6e})")
    return 0 if dy_gap <= args.tolerance else 1


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if isinstance(cfg, argparse.Namespace):
            return _cmd_diff(cfg)
        handler = {
            "simulate": _cmd_simulate,
            "spectral": _cmd_spectral,
            "bounds": _cmd_bounds,
            "sweep": _cmd_sweep,
        }[cfg.command]
        return handler(cfg)
    except (ValueError, OSError, bd.QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
