"""Figure rendering for the CLI report paths.

Each writer takes data already destined for a CSV and saves a PNG next to
it.  All figures use the Agg backend so rendering works headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .runner import RunReport

__all__ = [
    "plot_convergence",
    "plot_diagnostics",
    "plot_peaks",
    "plot_snapshots",
    "plot_stability",
]


def plot_snapshots(report: RunReport, path: Path) -> Path:
    """Wave profiles u(x) at every recorded time on one axes."""
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    for snap in report.snapshots:
        ax.plot(snap.x, snap.u, lw=1.2, label=f"t = {snap.t:g}")
    ax.set_xlabel("x")
    ax.set_ylabel("u")
    ax.set_title(f"{report.config.scenario} ({report.config.basis.value})")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_diagnostics(report: RunReport, path: Path) -> Path:
    """Conservation drift (and error norm when available) over time."""
    rows = report.rows
    ts = [r.t for r in rows]
    has_err = any(r.linf is not None for r in rows)
    fig, axes = plt.subplots(1, 2 if has_err else 1, figsize=(9.0 if has_err else 5.0, 3.6))
    axes = np.atleast_1d(axes)
    ax = axes[0]
    for label, vals in (
        ("C(M)", [r.c_m for r in rows]),
        ("C(E)", [r.c_e for r in rows]),
        ("C(H)", [r.c_h for r in rows]),
    ):
        positive = [(t, v) for t, v in zip(ts, vals) if v > 0.0]
        if positive:
            ax.semilogy(*zip(*positive), "o-", ms=3, label=label)
    ax.set_xlabel("t")
    ax.set_ylabel("relative drift")
    ax.legend(fontsize=8)
    if has_err:
        ax2 = axes[1]
        pts = [(r.t, r.linf) for r in rows if r.linf]
        if pts:
            ax2.semilogy(*zip(*pts), "s-", ms=3, color="crimson")
        ax2.set_xlabel("t")
        ax2.set_ylabel("max nodal error")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_peaks(peak_rows: list[tuple[float, int, float, float]], path: Path) -> Path:
    """Peak positions over time, marker size scaled by height."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    if peak_rows:
        ts = [r[0] for r in peak_rows]
        xs = [r[2] for r in peak_rows]
        heights = np.array([r[3] for r in peak_rows])
        scale = np.max(np.abs(heights)) or 1.0
        ax.scatter(ts, xs, s=8 + 60 * np.abs(heights) / scale, c=heights, cmap="viridis")
    ax.set_xlabel("t")
    ax.set_ylabel("peak position x")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_stability(rows: list[tuple], path: Path) -> Path:
    """Amplification moduli against the mode angle, one curve per (dt, h)."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    groups: dict[tuple, list[tuple[float, float]]] = {}
    for phi, eps, dt, h, _basis, rm, _rc in rows:
        groups.setdefault((eps, dt, h), []).append((phi, rm))
    for (eps, dt, h), pts in sorted(groups.items()):
        pts.sort()
        ax.plot(*zip(*pts), lw=0.8, label=f"eps={eps:g}, dt={dt:g}, h={h:g}")
    ax.axhline(1.0, color="k", lw=0.6, ls="--")
    ax.set_xlabel("mode angle")
    ax.set_ylabel("|rho|")
    ax.set_ylim(0.9, 1.1)
    if len(groups) <= 12:
        ax.legend(fontsize=6)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_convergence(table_rows: list[dict], t_end: float, path: Path) -> Path:
    """Final-time error norm against the cell count on log-log axes."""
    fig, ax = plt.subplots(figsize=(5.0, 4.0))
    pts = [
        (row["n"], row["linf"])
        for row in table_rows
        if row["t"] == t_end and row["linf"] is not None
    ]
    if pts:
        pts.sort()
        ax.loglog(*zip(*pts), "o-")
    ax.set_xlabel("N")
    ax.set_ylabel(f"max nodal error at t={t_end:g}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
