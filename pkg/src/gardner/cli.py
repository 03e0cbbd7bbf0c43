"""Command-line runner producing CSV artifacts and companion figures.

Subcommands
-----------
run        one simulation -> snapshots.csv, diagnostics.csv, peaks.csv
table      sweep cell counts -> table.csv (error and conservation columns)
stability  amplification-factor sweep -> stability.csv
peaks      fine-grained peak tracking -> peaks.csv

Configuration precedence is built-in scenario defaults, then a plain
``key=value`` config file, then command-line flags.  ``GARDNER_OUT_DIR``
is used when no output directory is given.  Numbers are serialized with
12 significant digits, so identical configurations produce byte-identical
CSV files.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional

from .banded import SingularMatrixError
from .basis import BasisKind
from .field import Closure
from .runner import RunConfig, RunReport, initial_state, run
from .scenarios import SCENARIO_NAMES
from .stability import stability_sweep
from .stepper import step

__all__ = ["main"]

_BASIS_CHOICES = {
    "polynomial": BasisKind.POLYNOMIAL,
    "trigonometric": BasisKind.TRIGONOMETRIC,
}
_CLOSURE_CHOICES = {"n1": Closure.NEUMANN1, "n2": Closure.NEUMANN2}


def _fmt(value) -> str:
    if value is None:
        return ""
    return f"{float(value):.12g}"


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) if not isinstance(v, str) else v for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(",") if part.strip())


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip())


# ---------------------------------------------------------------------------
# configuration merging
# ---------------------------------------------------------------------------

_CONFIG_KEYS = {
    "scenario": str,
    "basis": str,
    "n": int,
    "dt": float,
    "t_end": float,
    "snapshots": str,
    "epsilon": float,
    "u_closure": str,
    "v_closure": str,
    "peak_resolution": float,
    "out_dir": str,
    "plot": lambda s: s.lower() in ("1", "true", "yes", "on"),
    "record_interval": float,
    "n_list": str,
}


def _read_config_file(path: str) -> dict:
    values: dict = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip().lower()
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = _CONFIG_KEYS[key](val.strip())
    return values


def _merged(args: argparse.Namespace, key: str, fallback=None):
    """Flag value if given, else config-file value, else fallback."""
    cli_val = getattr(args, key, None)
    if cli_val is not None:
        return cli_val
    conf = getattr(args, "_config_values", {})
    if key in conf:
        return conf[key]
    return fallback


def _resolve_out_dir(args: argparse.Namespace) -> Path:
    out = _merged(args, "out_dir") or os.environ.get("GARDNER_OUT_DIR") or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _build_run_config(args: argparse.Namespace) -> RunConfig:
    scenario = _merged(args, "scenario")
    if scenario is None:
        raise ValueError("a scenario is required (one of: " + ", ".join(SCENARIO_NAMES) + ")")
    basis_name = _merged(args, "basis", "polynomial")
    if basis_name not in _BASIS_CHOICES:
        raise ValueError(f"unknown basis {basis_name!r}")
    snapshots = _merged(args, "snapshots")
    if isinstance(snapshots, str):
        snapshots = _parse_floats(snapshots)
    u_closure = _merged(args, "u_closure")
    v_closure = _merged(args, "v_closure")
    return RunConfig(
        scenario=scenario,
        basis=_BASIS_CHOICES[basis_name],
        n=_merged(args, "n"),
        dt=_merged(args, "dt"),
        t_end=_merged(args, "t_end"),
        snapshot_times=snapshots,
        u_closure=_CLOSURE_CHOICES[u_closure] if u_closure else None,
        v_closure=_CLOSURE_CHOICES[v_closure] if v_closure else None,
        epsilon_forcing=_merged(args, "epsilon", 0.0),
        peak_resolution=_merged(args, "peak_resolution"),
    )


# ---------------------------------------------------------------------------
# report writers
# ---------------------------------------------------------------------------


def _write_run_outputs(report: RunReport, out_dir: Path, want_plots: bool) -> None:
    snap_rows = []
    for snap in report.snapshots:
        for x, u, v in zip(snap.x, snap.u, snap.v):
            snap_rows.append([snap.t, x, u, v])
    _write_csv(out_dir / "snapshots.csv", ["t", "x", "u", "v"], snap_rows)

    diag_rows = [
        [r.t, r.linf, r.m, r.e, r.ham, r.c_m, r.c_e, r.c_h] for r in report.rows
    ]
    _write_csv(
        out_dir / "diagnostics.csv",
        ["t", "linf", "M", "E", "H", "C_M", "C_E", "C_H"],
        diag_rows,
    )

    peak_rows = []
    for t, peaks in report.peaks:
        for idx, pk in enumerate(peaks):
            peak_rows.append([t, float(idx), pk.x, pk.height])
    _write_csv(out_dir / "peaks.csv", ["t", "peak_index", "x", "height"], peak_rows)

    if want_plots:
        from . import plotting

        plotting.plot_snapshots(report, out_dir / "waves.png")
        plotting.plot_diagnostics(report, out_dir / "diagnostics.png")
        plotting.plot_peaks(
            [(r[0], int(r[1]), r[2], r[3]) for r in peak_rows], out_dir / "peaks.png"
        )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_run(args: argparse.Namespace) -> int:
    config = _build_run_config(args)
    out_dir = _resolve_out_dir(args)
    report = run(config)
    _write_run_outputs(report, out_dir, _merged(args, "plot", True))
    if not report.complete:
        print(f"run aborted: {report.failure}", file=sys.stderr)
        return 1
    last = report.rows[-1]
    rc = report.config
    err = f"  linf={_fmt(last.linf)}" if last.linf is not None else ""
    print(
        f"{rc.scenario} ({rc.basis.value}, N={rc.n}, dt={rc.dt:g}) "
        f"to t={rc.t_end:g}:{err}  C(M)={last.c_m:.3e}  C(E)={last.c_e:.3e}  "
        f"C(H)={last.c_h:.3e}"
    )
    print(f"wrote {out_dir / 'snapshots.csv'}, diagnostics.csv, peaks.csv")
    return 0


def _cmd_table(args: argparse.Namespace) -> int:
    n_text = _merged(args, "n_list")
    if n_text is None:
        raise ValueError("table needs --n with a comma-separated list of cell counts")
    n_values = _parse_ints(n_text) if isinstance(n_text, str) else tuple(n_text)
    out_dir = _resolve_out_dir(args)

    table_rows: list[dict] = []
    t_end = None
    for n in n_values:
        ns = argparse.Namespace(**vars(args))
        ns.n = n
        config = _build_run_config(ns)
        report = run(config)
        if not report.complete:
            print(f"run aborted at N={n}: {report.failure}", file=sys.stderr)
            return 1
        t_end = report.config.t_end
        for r in report.rows:
            table_rows.append(
                {
                    "n": n,
                    "t": r.t,
                    "linf": r.linf,
                    "m": r.m,
                    "e": r.e,
                    "ham": r.ham,
                    "c_m": r.c_m,
                    "c_e": r.c_e,
                    "c_h": r.c_h,
                }
            )
    _write_csv(
        out_dir / "table.csv",
        ["n", "t", "linf", "M", "E", "H", "C_M", "C_E", "C_H"],
        [
            [row["n"], row["t"], row["linf"], row["m"], row["e"], row["ham"],
             row["c_m"], row["c_e"], row["c_h"]]
            for row in table_rows
        ],
    )
    if _merged(args, "plot", True) and any(row["linf"] is not None for row in table_rows):
        from . import plotting

        plotting.plot_convergence(table_rows, t_end, out_dir / "convergence.png")
    print(f"wrote {out_dir / 'table.csv'} ({len(table_rows)} rows)")
    return 0


def _cmd_stability(args: argparse.Namespace) -> int:
    out_dir = _resolve_out_dir(args)
    basis_name = _merged(args, "basis", "both")
    if basis_name == "both":
        kinds = [BasisKind.POLYNOMIAL, BasisKind.TRIGONOMETRIC]
    elif basis_name in _BASIS_CHOICES:
        kinds = [_BASIS_CHOICES[basis_name]]
    else:
        raise ValueError(f"unknown basis {basis_name!r}")
    rows = []
    worst = 0.0
    for kind in kinds:
        rep = stability_sweep(kind)
        worst = max(worst, rep.max_rho_momentum, rep.max_rho_constraint)
        rows.extend(
            (phi, eps, dt, h, kind.value, rm, rc) for (phi, eps, dt, h, rm, rc) in rep.rows
        )
        if rep.violations:
            print(f"{kind.value}: {len(rep.violations)} probes above 1", file=sys.stderr)
    _write_csv(
        out_dir / "stability.csv",
        ["phi", "eps", "dt", "h", "basis", "rho_momentum", "rho_constraint"],
        [[phi, eps, dt, h, basis, rm, rc] for (phi, eps, dt, h, basis, rm, rc) in rows],
    )
    if _merged(args, "plot", True):
        from . import plotting

        plotting.plot_stability(rows, out_dir / "stability.png")
    print(f"wrote {out_dir / 'stability.csv'} ({len(rows)} probes, max |rho|={worst:.12f})")
    return 0


def _cmd_peaks(args: argparse.Namespace) -> int:
    config = _build_run_config(args)
    out_dir = _resolve_out_dir(args)
    sc, cfg, state = initial_state(config)
    from dataclasses import replace

    from .diagnostics import find_peaks

    params = replace(sc.params, dt=cfg.dt, epsilon_forcing=cfg.epsilon_forcing)
    interval = _merged(args, "record_interval")
    if interval is None:
        interval = max(cfg.dt, cfg.t_end / 50.0)
    every = max(1, int(round(interval / cfg.dt)))
    n_steps = int(round(cfg.t_end / cfg.dt))

    peak_rows: list[list] = []

    def record(st):
        for idx, pk in enumerate(find_peaks(st, cfg.peak_resolution)):
            peak_rows.append([st.t, float(idx), pk.x, pk.height])

    record(state)
    for k in range(1, n_steps + 1):
        state = step(state, params)
        if k % every == 0 or k == n_steps:
            record(state)
    _write_csv(out_dir / "peaks.csv", ["t", "peak_index", "x", "height"], peak_rows)
    if _merged(args, "plot", True):
        from . import plotting

        plotting.plot_peaks(
            [(r[0], int(r[1]), r[2], r[3]) for r in peak_rows], out_dir / "peaks.png"
        )
    print(f"wrote {out_dir / 'peaks.csv'} ({len(peak_rows)} rows)")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser, with_scenario: bool = True,
                with_n: bool = True) -> None:
    parser.add_argument("--config", help="key=value configuration file")
    parser.add_argument("--out-dir", dest="out_dir", help="output directory")
    parser.add_argument(
        "--plot", dest="plot", action="store_true", default=None,
        help="render companion figures (default)",
    )
    parser.add_argument(
        "--no-plot", dest="plot", action="store_false", help="skip figure rendering"
    )
    if with_scenario:
        parser.add_argument("--scenario", choices=SCENARIO_NAMES, help="benchmark to run")
        parser.add_argument(
            "--basis", choices=sorted(_BASIS_CHOICES), help="spline family (default polynomial)"
        )
        if with_n:
            parser.add_argument("--n", type=int, help="number of grid cells")
        parser.add_argument("--dt", type=float, help="time step")
        parser.add_argument("--t-end", dest="t_end", type=float, help="final time")
        parser.add_argument(
            "--snapshots", help="comma-separated recording times within [0, t_end]"
        )
        parser.add_argument(
            "--epsilon", type=float, help="constant forcing on the right-hand side"
        )
        parser.add_argument(
            "--u-closure", dest="u_closure", choices=sorted(_CLOSURE_CHOICES),
            help="override the boundary condition order for u",
        )
        parser.add_argument(
            "--v-closure", dest="v_closure", choices=sorted(_CLOSURE_CHOICES),
            help="override the boundary condition order for v",
        )
        parser.add_argument(
            "--peak-resolution", dest="peak_resolution", type=float,
            help="sampling step for peak detection (default h/10)",
        )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gardner",
        description="Cubic B-spline collocation solver for the Gardner equation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one simulation")
    _add_common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_table = sub.add_parser("table", help="error/conservation table over several N")
    _add_common(p_table, with_n=False)
    p_table.add_argument(
        "--n", dest="n_list", help="comma-separated cell counts, e.g. 100,200,400"
    )
    p_table.set_defaults(func=_cmd_table)

    p_stab = sub.add_parser("stability", help="amplification-factor sweep")
    _add_common(p_stab, with_scenario=False)
    p_stab.add_argument(
        "--basis", choices=sorted(_BASIS_CHOICES) + ["both"], help="spline family (default both)"
    )
    p_stab.set_defaults(func=_cmd_stability)

    p_peaks = sub.add_parser("peaks", help="track wave crests over time")
    _add_common(p_peaks)
    p_peaks.add_argument(
        "--record-interval", dest="record_interval", type=float,
        help="time between peak records (default t_end/50)",
    )
    p_peaks.set_defaults(func=_cmd_peaks)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args._config_values = _read_config_file(args.config) if args.config else {}
        return args.func(args)
    except (ValueError, OSError, SingularMatrixError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
