"""End-to-end tests: generate CSVs with the simulation CLI, then render.

The simulation package is exercised only through its `ghostlat` command
and the CSV files it writes — exactly the contract this package relies
on in production.
"""

import subprocess
import sys

import numpy as np
import pytest

from ghostfig import FigureSpec, plateau_estimate, read_trajectory, render


def ghostlat(*args):
    proc = subprocess.run(
        ["ghostlat", *args], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0, proc.stderr or proc.stdout
    return proc


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    """Model I/II/III trajectories at one resolution plus a spectral sweep."""
    d = tmp_path_factory.mktemp("csv")
    times = "0.01,0.05,0.2,1"
    for model in ("I", "II", "III"):
        ghostlat(
            "simulate", "--model", model, "--N", "200", "--t-end", "1",
            "--sample-times", times, "--output", str(d / f"model{model}.csv"),
        )
    for N in (200, 400, 800):
        ghostlat(
            "spectral", "--N", str(N), "--sample-times", times,
            "--output", str(d / f"spectral_N{N}.csv"),
        )
    dense = ",".join(f"{t:g}" for t in np.linspace(0.02, 1.0, 50))
    ghostlat(
        "simulate", "--model", "III", "--N", "200", "--t-end", "1",
        "--sample-times", dense, "--output", str(d / "history.csv"),
    )
    return d


def test_gradient_snapshots_grid(data_dir, tmp_path):
    out = tmp_path / "snapshots.png"
    spec = FigureSpec(
        figure="gradient_snapshots",
        inputs=tuple(str(data_dir / f"model{m}.csv") for m in ("I", "II", "III")),
        output=str(out),
    )
    assert render(spec) == str(out)
    assert out.stat().st_size > 0


def test_interface_histories(data_dir, tmp_path):
    out = tmp_path / "histories.png"
    spec = FigureSpec(
        figure="interface_histories",
        inputs=(str(data_dir / "history.csv"),),
        output=str(out),
    )
    render(spec)
    assert out.stat().st_size > 0


def test_epsilon_sweep_structural_plateau_agreement(data_dir, tmp_path):
    inputs = tuple(str(data_dir / f"spectral_N{N}.csv") for N in (200, 400, 800))
    out = tmp_path / "sweep.png"
    render(FigureSpec(figure="epsilon_sweep", inputs=inputs, output=str(out)))
    assert out.stat().st_size > 0
    # the plateau the panels annotate must be resolution-independent
    levels = [plateau_estimate(read_trajectory(p)) for p in inputs]
    assert max(levels) - min(levels) < 0.03
    assert all(lv < 0 for lv in levels)


def test_rendering_is_deterministic(data_dir, tmp_path):
    inputs = (str(data_dir / "modelI.csv"),)
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    render(FigureSpec(figure="gradient_snapshots", inputs=inputs, output=str(a)))
    render(FigureSpec(figure="gradient_snapshots", inputs=inputs, output=str(b)))
    assert a.read_bytes() == b.read_bytes()


def test_empty_site_selection_rejected_before_writing(data_dir, tmp_path):
    out = tmp_path / "never.png"
    with pytest.raises(ValueError, match="site selection"):
        FigureSpec(
            figure="interface_histories",
            inputs=(str(data_dir / "history.csv"),),
            output=str(out),
            site_offsets=(),
        )
    assert not out.exists()


def test_out_of_range_site_offset(data_dir, tmp_path):
    out = tmp_path / "never.png"
    spec = FigureSpec(
        figure="interface_histories",
        inputs=(str(data_dir / "history.csv"),),
        output=str(out),
        site_offsets=(5000,),
    )
    with pytest.raises(ValueError, match="outside"):
        render(spec)
    assert not out.exists()


def test_foreign_schema_rejected(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError, match="header"):
        read_trajectory(str(bad))


def test_unknown_figure_kind():
    with pytest.raises(ValueError, match="unknown figure"):
        FigureSpec(figure="pie_chart", inputs=("x.csv",), output="y.png")


def test_command_line_entry(data_dir, tmp_path):
    out = tmp_path / "cli.png"
    proc = subprocess.run(
        [
            sys.executable, "-m", "ghostfig.cli", "epsilon_sweep",
            str(data_dir / "spectral_N200.csv"),
            str(data_dir / "spectral_N400.csv"),
            str(data_dir / "spectral_N800.csv"),
            "--output", str(out),
        ],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
    proc = subprocess.run(
        [sys.executable, "-m", "ghostfig.cli", "interface_histories",
         "missing.csv", "--output", str(tmp_path / "x.png")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert "error:" in proc.stderr
