"""Command-line front door.

Subcommands: sync-check, simulate, reduce, equilibria, classify, sweep,
recall-demo. Exit status: 0 success, 1 validation error, 2 runtime or
integration error. Values from ``--config FILE`` (flat JSON) are overridden
by explicitly passed flags.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import __version__
from .analysis import char_poly_coeffs, corollary_check, find_equilibria, sync_bounds
from .backend import active_backend
from .classify import classify_regime, recall_demo, sweep_kappa
from .errors import BlowUpError, ClassificationError, ContractError, DomainError
from .integrate import IntegrationConfig, integrate_network, integrate_reduced
from .io import (RunConfig, load_config, write_report_json, write_series_csv,
                 write_trajectory_csv)
from .model import NetworkParams, NetworkState, ReducedState

import numpy as np


def _add_common(p: argparse.ArgumentParser, *names: str) -> None:
    spec = {
        "n": dict(type=int, help="number of hypercolumns N"),
        "omega": dict(type=float, help="coupling weight"),
        "g-a": dict(type=float, help="adaptation gain"),
        "tau": dict(type=float, help="adaptation time constant (> 1)"),
        "kappa": dict(type=float, help="effective coupling (N-1)*omega"),
        "dt": dict(type=float, help="integration step"),
        "t-end": dict(type=float, help="integration horizon"),
        "record-stride": dict(type=int, help="store every k-th step"),
        "trial-count": dict(type=int, help="initial conditions per classification"),
        "seed": dict(type=int, help="RNG / sampling seed"),
        "kappa-min": dict(type=float, help="sweep lower bound"),
        "kappa-max": dict(type=float, help="sweep upper bound"),
        "kappa-step": dict(type=float, help="sweep grid step"),
        "d0": dict(type=float, help="initial d"),
        "e0": dict(type=float, help="initial e"),
        "out": dict(type=str, help="output file or directory"),
    }
    p.add_argument("--config", type=str, help="flat JSON config file")
    for name in names:
        p.add_argument(f"--{name}", default=None, **spec[name])


def _resolve(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    for f in dataclasses.fields(RunConfig):
        val = getattr(args, f.name, None)
        if val is not None:
            setattr(cfg, f.name, val)
    cfg.validate()
    return cfg


def _kappa_of(cfg: RunConfig) -> float:
    return cfg.kappa if cfg.kappa is not None else (cfg.n - 1) * cfg.omega


def cmd_sync_check(args) -> int:
    cfg = _resolve(args)
    bounds = sync_bounds(cfg.g_a, cfg.tau)
    report = corollary_check(cfg.n, cfg.omega, cfg.g_a, cfg.tau)
    print(f"sync window: omega_min = {bounds.omega_min:.6g}, "
          f"omega_max = {bounds.omega_max:.6g}")
    print(f"omega = {cfg.omega:g}, kappa = {report.kappa:g}")
    print(f"  synchronization (omega in window):      {report.sync_condition}")
    print(f"  unique relative equilibrium (omega < {report.omega_unique_max:.6g}): "
          f"{report.unique_equilibrium_condition}")
    print(f"  limit-cycle necessary conditions:       {report.limit_cycle_condition}")
    if report.all_satisfied():
        print("all conditions satisfied")
    else:
        print("NOT all conditions satisfied")
    if cfg.out:
        write_report_json({"sync_bounds": bounds, "corollary": report}, cfg.out)
        print(f"report written to {cfg.out}")
    return 0


def cmd_simulate(args) -> int:
    cfg = _resolve(args)
    params = NetworkParams(n_hypercolumns=cfg.n, omega=cfg.omega,
                           g_a=cfg.g_a, tau=cfg.tau)
    config = IntegrationConfig(dt=cfg.dt, t_end=cfg.t_end,
                               record_stride=cfg.record_stride)
    rng = np.random.default_rng(cfg.seed)
    state = NetworkState(s=rng.uniform(-1, 1, (cfg.n, 2)),
                         a=rng.uniform(-1, 1, (cfg.n, 2)))
    traj = integrate_network(state, params, config)
    out = cfg.out or "trajectory.csv"
    write_trajectory_csv(traj, out)
    print(f"{len(traj.times)} samples written to {out}")
    return 0


def cmd_reduce(args) -> int:
    cfg = _resolve(args)
    config = IntegrationConfig(dt=cfg.dt, t_end=cfg.t_end,
                               record_stride=cfg.record_stride)
    traj = integrate_reduced(ReducedState(d=cfg.d0, e=cfg.e0),
                             _kappa_of(cfg), cfg.g_a, cfg.tau, config)
    out = cfg.out or "reduced.csv"
    write_trajectory_csv(traj, out)
    print(f"{len(traj.times)} samples written to {out}")
    return 0


def cmd_equilibria(args) -> int:
    cfg = _resolve(args)
    kappa = _kappa_of(cfg)
    sigma, delta = char_poly_coeffs(kappa, cfg.g_a, cfg.tau)
    print(f"kappa = {kappa:g}, sigma = {sigma:.6g}, delta = {delta:.6g}")
    print(f"{'d*':>12} {'e*':>12} {'eigenvalues':>34} {'stable':>7}")
    for eq in find_equilibria(kappa, cfg.g_a, cfg.tau):
        ev = ", ".join(f"{v.real:+.4g}{v.imag:+.4g}j" for v in eq.eigenvalues)
        flag = " degenerate" if eq.degenerate else (" marginal" if eq.marginal else "")
        print(f"{eq.d_star:12.6g} {eq.e_star:12.6g} {ev:>34} {str(eq.stable):>7}{flag}")
    return 0


def cmd_classify(args) -> int:
    cfg = _resolve(args)
    report = classify_regime(_kappa_of(cfg), cfg.g_a, cfg.tau,
                             trial_count=cfg.trial_count, seed=cfg.seed)
    print(f"kappa = {report.kappa:g}: {report.regime.value}")
    if report.limit_cycle:
        print(f"  limit cycle: amplitude_d = {report.limit_cycle.amplitude_d:.4g}, "
              f"period = {report.limit_cycle.period:.4g}")
    if cfg.out:
        write_report_json(report, cfg.out)
        print(f"report written to {cfg.out}")
    return 0


def cmd_sweep(args) -> int:
    cfg = _resolve(args)
    result = sweep_kappa((cfg.kappa_min, cfg.kappa_max), cfg.kappa_step,
                         cfg.g_a, cfg.tau, trial_count=cfg.trial_count,
                         seed=cfg.seed, refine=args.refine,
                         workers=args.workers)
    for k, r in result.grid:
        print(f"kappa = {k:8.4g}: {r.regime.value}")
    for tr in result.transitions:
        print(f"transition {tr.from_regime.value} -> {tr.to_regime.value} "
              f"in [{tr.kappa_low:.6g}, {tr.kappa_high:.6g}]")
    if cfg.out:
        write_report_json(result, cfg.out)
        print(f"report written to {cfg.out}")
    return 0


def cmd_recall_demo(args) -> int:
    cfg = _resolve(args)
    params = NetworkParams(n_hypercolumns=cfg.n, omega=cfg.omega,
                           g_a=cfg.g_a, tau=cfg.tau)
    config = IntegrationConfig(dt=cfg.dt, t_end=cfg.t_end,
                               record_stride=cfg.record_stride)
    demo = recall_demo(params, config, seed=cfg.seed)
    for w in demo.warnings:
        print(f"warning: {w}", file=sys.stderr)
    out_dir = Path(cfg.out or "recall-demo")
    out_dir.mkdir(parents=True, exist_ok=True)
    t = demo.trajectory.times
    write_series_csv(out_dir / "fig_sync_error.csv",
                     ["t", "sync_error"], [t, demo.sync_error])
    write_series_csv(out_dir / "fig_states.csv",
                     ["t", "s_1_1", "s_1_2"],
                     [t, demo.trajectory.column("s_1_1"),
                      demo.trajectory.column("s_1_2")])
    write_series_csv(out_dir / "fig_outputs.csv",
                     ["t", "o_1_1", "o_1_2", "a_1_1", "a_1_2"],
                     [t, demo.outputs[:, 0], demo.outputs[:, 1],
                      demo.adaptation[:, 0], demo.adaptation[:, 1]])
    print(f"final sync error: {demo.sync_error[-1]:.3e}")
    print(f"figure datasets written to {out_dir}/")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wmrecall",
        description="Free-recall dynamics of a modular working-memory "
                    "attractor network.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__} ({active_backend()} backend)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sync-check", help="synchronization and recall conditions")
    _add_common(p, "n", "omega", "g-a", "tau", "out")
    p.set_defaults(func=cmd_sync_check)

    p = sub.add_parser("simulate", help="integrate the full network to CSV")
    _add_common(p, "n", "omega", "g-a", "tau", "dt", "t-end", "record-stride",
                "seed", "out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reduce", help="integrate the reduced (d, e) system to CSV")
    _add_common(p, "kappa", "n", "omega", "g-a", "tau", "dt", "t-end",
                "record-stride", "d0", "e0", "out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("equilibria", help="equilibria of the reduced system")
    _add_common(p, "kappa", "n", "omega", "g-a", "tau")
    p.set_defaults(func=cmd_equilibria)

    p = sub.add_parser("classify", help="attractor regime at one kappa")
    _add_common(p, "kappa", "n", "omega", "g-a", "tau", "trial-count", "seed", "out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", help="regime sweep over a kappa grid")
    _add_common(p, "g-a", "tau", "kappa-min", "kappa-max", "kappa-step",
                "trial-count", "seed", "out")
    p.add_argument("--refine", action="store_true",
                   help="bisect each regime-change bracket to width 1e-3")
    p.add_argument("--workers", type=int, default=1,
                   help="parallel processes for grid points")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("recall-demo", help="full free-recall reproduction run")
    _add_common(p, "n", "omega", "g-a", "tau", "dt", "t-end", "record-stride",
                "seed", "out")
    p.set_defaults(func=cmd_recall_demo)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ContractError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (BlowUpError, ClassificationError, OSError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
