"""Command-line entry point: ``hausdyn <command> [--config FILE] ...``."""
from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, replace
from pathlib import Path

from hausdyn.config import COMMANDS, RunConfig, load_config
from hausdyn.errors import ConfigError, HausdynError
from hausdyn.model import compute_coefficients, demand_equation_residual, demand_foc_residual
from hausdyn.outputs import emit_csv, emit_key_values, fmt, render_plot
from hausdyn.simulation import (
    Experiment,
    impulse_response,
    run_sweep,
    solve_model,
    stochastic_simulate,
)
from hausdyn.verify import run_checks


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hausdyn",
        description="Housing-price responses to interest-rate and population shocks under housing taxes.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", type=Path, help="TOML run configuration (defaults if omitted)")
    parser.add_argument("--out", type=Path, help="output directory (overrides output_dir)")
    parser.add_argument("--seed", type=int, help="RNG seed for simulate (overrides seed)")
    parser.add_argument(
        "--experiment",
        choices=[e.value for e in Experiment] + ["all"],
        help="figure experiment for sweep (overrides figure)",
    )
    return parser


def _print_values(values: dict):
    width = max(len(k) for k in values)
    for k, v in values.items():
        print(f"{k:<{width}}  {fmt(v)}")


def _outdir(cfg: RunConfig) -> Path:
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    return cfg.output_dir


def cmd_steady(cfg: RunConfig) -> int:
    cal, tax = cfg.calibration, cfg.tax_policy
    coeffs = compute_coefficients(cal, tax)
    values = {k: v for k, v in asdict(cal).items() if k.endswith("_bar") or k == "c_over_h"}
    values["beta"] = coeffs.beta
    values["r"] = coeffs.r
    values["foc_residual"] = demand_foc_residual(cal, tax)
    values["demand_residual"] = demand_equation_residual(cal, coeffs)
    _print_values(values)
    if "csv" in cfg.formats:
        emit_key_values(values, _outdir(cfg) / "steady.csv")
    return 0


def cmd_coeffs(cfg: RunConfig) -> int:
    coeffs = compute_coefficients(cfg.calibration, cfg.tax_policy)
    values = {k: v for k, v in asdict(coeffs).items() if k != "tax"}
    _print_values(values)
    if "csv" in cfg.formats:
        emit_key_values(values, _outdir(cfg) / "coeffs.csv")
    return 0


def cmd_irf(cfg: RunConfig) -> int:
    sys_, policy = solve_model(cfg.calibration, cfg.tax_policy)
    irf = impulse_response(policy, sys_, cfg.shock, cfg.horizon)
    print(
        f"{cfg.shock.kind.value} shock ({cfg.shock.size_sd:g} s.d.): "
        f"peak_abs={fmt(irf.peak_abs)} sum_sq={fmt(irf.sum_sq)} half_life={irf.half_life}"
    )
    if "csv" in cfg.formats:
        path = emit_csv(irf, _outdir(cfg) / f"irf_{cfg.shock.kind.value}.csv")
        print(f"wrote {path}")
    return 0


def cmd_sweep(cfg: RunConfig, experiments) -> int:
    for exp in experiments:
        sweep = run_sweep(cfg.calibration, exp, cfg.tax_grid, cfg.horizon, cfg.shock.size_sd)
        print(f"{exp.value} ({exp.shock.value}, varying {exp.varies})")
        for tax, irf in sweep.entries:
            print(
                f"  tau_s={tax.tau_s:g} tau_f={tax.tau_f:g} "
                f"peak_abs={fmt(irf.peak_abs)} sum_sq={fmt(irf.sum_sq)}"
            )
        if "csv" in cfg.formats:
            print(f"wrote {emit_csv(sweep, _outdir(cfg) / f'{exp.value}.csv')}")
        if "svg" in cfg.formats:
            print(f"wrote {render_plot(sweep, _outdir(cfg) / f'{exp.value}.svg')}")
    return 0


def cmd_simulate(cfg: RunConfig) -> int:
    sys_, policy = solve_model(cfg.calibration, cfg.tax_policy)
    paths = stochastic_simulate(policy, sys_, cfg.seed, cfg.periods)
    print(
        f"simulated {cfg.periods} periods (seed {cfg.seed}): "
        f"var(q_hat)={fmt(paths.q_hat.var())} var(R_hat)={fmt(paths.R_hat.var())}"
    )
    if "csv" in cfg.formats:
        print(f"wrote {emit_csv(paths, _outdir(cfg) / 'simulate.csv')}")
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    results = run_checks(cfg.calibration, cfg.horizon, cfg.seed)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else RunConfig()
    except ConfigError as exc:
        print(f"FAIL config: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 2
    cfg = replace(cfg, experiment=args.command)
    if args.out is not None:
        cfg = replace(cfg, output_dir=args.out)
    if args.seed is not None:
        if not 0 <= args.seed < 2**64:
            print("FAIL config: seed must be in [0, 2**64)", file=sys.stderr)
            return 2
        cfg = replace(cfg, seed=args.seed)

    try:
        if args.command == "steady":
            return cmd_steady(cfg)
        if args.command == "coeffs":
            return cmd_coeffs(cfg)
        if args.command == "irf":
            return cmd_irf(cfg)
        if args.command == "sweep":
            if args.experiment == "all":
                experiments = list(Experiment)
            else:
                experiments = [Experiment(args.experiment) if args.experiment else cfg.figure]
            return cmd_sweep(cfg, experiments)
        if args.command == "simulate":
            return cmd_simulate(cfg)
        return cmd_verify(cfg)
    except HausdynError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
