"""Whole-simulation driver: configuration, execution and reporting."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .banded import SingularMatrixError
from .basis import BasisKind
from .diagnostics import (
    Peak,
    conserved,
    find_peaks,
    linf_error,
    relative_changes,
)
from .field import Closure, Grid, interpolate
from .scenarios import Scenario, scenario_config
from .stepper import State, step

__all__ = ["RunConfig", "RunReport", "DiagnosticsRow", "Snapshot", "initial_state", "run"]


@dataclass(frozen=True)
class RunConfig:
    """One simulation request; unset numeric fields fall back to scenario defaults."""

    scenario: str
    basis: BasisKind = BasisKind.POLYNOMIAL
    n: Optional[int] = None
    dt: Optional[float] = None
    t_end: Optional[float] = None
    snapshot_times: Optional[tuple[float, ...]] = None
    u_closure: Optional[Closure] = None
    v_closure: Optional[Closure] = None
    epsilon_forcing: float = 0.0
    peak_resolution: Optional[float] = None
    out_dir: Optional[str] = None

    def resolved(self) -> tuple[Scenario, "RunConfig"]:
        """Scenario plus a copy of self with every numeric field filled in."""
        sc = scenario_config(self.scenario)
        n = sc.n if self.n is None else self.n
        dt = sc.params.dt if self.dt is None else self.dt
        t_end = sc.t_end if self.t_end is None else self.t_end
        if n < 8:
            raise ValueError(f"need at least 8 cells, got n={n}")
        if dt <= 0.0:
            raise ValueError(f"time step must be positive, got dt={dt}")
        if t_end < 0.0:
            raise ValueError(f"end time must be nonnegative, got t_end={t_end}")
        if self.snapshot_times is None:
            times = tuple(s for s in sc.snapshot_times if s <= t_end + 1e-12)
        else:
            times = self.snapshot_times
            if any(s < 0.0 or s > t_end + 1e-12 for s in times):
                raise ValueError("snapshot times must lie in [0, t_end]")
        times = tuple(sorted(set(times) | {0.0, t_end}))
        return sc, replace(self, n=n, dt=dt, t_end=t_end, snapshot_times=times)


@dataclass(frozen=True)
class DiagnosticsRow:
    t: float
    linf: Optional[float]
    m: float
    e: float
    ham: float
    c_m: float
    c_e: float
    c_h: float


@dataclass(frozen=True)
class Snapshot:
    t: float
    x: np.ndarray
    u: np.ndarray
    v: np.ndarray


@dataclass
class RunReport:
    """Trajectory snapshots plus diagnostics and peak time series."""

    config: RunConfig
    rows: list[DiagnosticsRow] = field(default_factory=list)
    snapshots: list[Snapshot] = field(default_factory=list)
    peaks: list[tuple[float, list[Peak]]] = field(default_factory=list)
    complete: bool = True
    failure: Optional[str] = None

    @property
    def final_linf(self) -> Optional[float]:
        return self.rows[-1].linf if self.rows else None


def initial_state(config: RunConfig) -> tuple[Scenario, RunConfig, State]:
    """Interpolated initial fields (u from the profile, v from its slope)."""
    sc, cfg = config.resolved()
    grid = Grid(sc.domain[0], sc.domain[1], cfg.n)
    cu, cv = sc.closures[cfg.basis]
    if cfg.u_closure is not None:
        cu = cfg.u_closure
    if cfg.v_closure is not None:
        cv = cfg.v_closure
    u0 = interpolate(grid, cfg.basis, sc.ic(grid.nodes), cu)
    v0 = interpolate(grid, cfg.basis, sc.ic_deriv(grid.nodes), cv)
    return sc, cfg, State(t=0.0, u=u0, v=v0)


def run(config: RunConfig) -> RunReport:
    """Execute one scenario and collect diagnostics at the requested times.

    A solver failure mid-run aborts the loop; everything recorded so far is
    returned with ``complete=False``.
    """
    sc, cfg, state = initial_state(config)
    params = replace(
        sc.params, dt=cfg.dt, epsilon_forcing=cfg.epsilon_forcing
    )
    report = RunReport(config=cfg)

    n_steps = int(round(cfg.t_end / cfg.dt))
    record_steps = {int(round(s / cfg.dt)) for s in cfg.snapshot_times}
    q0 = conserved(state, params)

    def record(st: State) -> None:
        q = conserved(st, params)
        c_m, c_e, c_h = relative_changes(q, q0)
        err = linf_error(st, sc.analytic, st.t) if sc.analytic is not None else None
        report.rows.append(DiagnosticsRow(st.t, err, q.m, q.e, q.ham, c_m, c_e, c_h))
        report.snapshots.append(
            Snapshot(st.t, st.u.grid.nodes, st.u.nodal_values(), st.v.nodal_values())
        )
        report.peaks.append((st.t, find_peaks(st, cfg.peak_resolution)))

    record(state)
    for k in range(1, n_steps + 1):
        try:
            state = step(state, params)
        except SingularMatrixError as exc:
            report.complete = False
            report.failure = f"step {k} (t={k * cfg.dt:g}): {exc}"
            break
        if k in record_steps:
            record(state)
    return report
