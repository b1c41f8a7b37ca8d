"""Property checks run by ``hausdyn verify``."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

import numpy as np

from hausdyn.errors import HausdynError
from hausdyn.model import Calibration, TaxPolicy
from hausdyn.simulation import (
    Experiment,
    ShockKind,
    ShockSpec,
    compare_reinforcement,
    impulse_response,
    run_sweep,
    solve_model,
)
from hausdyn.solver import count_explosive, extended_path, functional_residual

MONOTONE_GRID = (0.0, 0.02, 0.04, 0.06, 0.08, 0.10)
SADDLE_GRID = (0.0, 0.05, 0.1)
ORACLE_TOL = 1e-6
RESIDUAL_TOL = 1e-10
NEUTRALITY_TOL = 1e-12
ALPHA_CAP = 0.99


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def perturbed_calibrations(base: Calibration, count: int = 20, seed: int = 0):
    """Draw (calibration, tax) pairs with alpha, delta, n_bar within ±20% and taxes in [0, 0.1].

    The alpha draw is capped at ``ALPHA_CAP`` so it stays a valid share.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        scale = rng.uniform(0.8, 1.2, 3)
        cal = replace(
            base,
            alpha=min(base.alpha * scale[0], ALPHA_CAP),
            delta=base.delta * scale[1],
            n_bar=base.n_bar * scale[2],
        )
        tax = TaxPolicy(*rng.uniform(0.0, 0.1, 2))
        out.append((cal, tax))
    return out


def oracle_gap(cal: Calibration, tax: TaxPolicy, kind: ShockKind, horizon: int) -> float:
    """Largest gap between the policy IRF and the extended-path path (price and stock)."""
    sys, policy = solve_model(cal, tax)
    irf = impulse_response(policy, sys, ShockSpec(kind), horizon)
    if kind is ShockKind.INTEREST_RATE:
        state = (0.0, irf.x_hat[0], 0.0)
    else:
        state = (0.0, 0.0, irf.x_hat[0])
    path = extended_path(sys, state, horizon)
    return float(max(np.max(np.abs(irf.q_hat - path.q_hat)), np.max(np.abs(irf.h_hat - path.h_hat))))


def _strictly(values, increasing: bool) -> bool:
    d = np.diff(values)
    return bool(np.all(d > 0) if increasing else np.all(d < 0))


def _check_saddle(cal, horizon, seed):
    bad = []
    worst = 0.0
    states = np.random.default_rng(seed).uniform(-1.0, 1.0, (1000, 3))
    for ts, tf in itertools.product(SADDLE_GRID, repeat=2):
        sys, policy = solve_model(cal, TaxPolicy(ts, tf))
        if count_explosive(sys) != 1:
            bad.append((ts, tf))
        worst = max(worst, float(np.max(np.abs(functional_residual(policy, sys, states)))))
    ok = not bad and worst < RESIDUAL_TOL
    return CheckResult(
        "saddle_path", ok, f"one explosive root on 9 tax pairs: {not bad}; max residual {worst:.2e}"
    )


def _check_oracle(cal, horizon, seed):
    cases = [(cal, TaxPolicy())] + perturbed_calibrations(cal, 20, seed)
    worst = max(
        oracle_gap(c, t, kind, horizon) for c, t in cases for kind in ShockKind
    )
    return CheckResult(
        "oracle_equivalence", worst < ORACLE_TOL, f"max |policy - extended path| = {worst:.2e}"
    )


def _check_interest_sign(cal, horizon, seed):
    sys, policy = solve_model(cal, TaxPolicy())
    q = impulse_response(policy, sys, ShockSpec(ShockKind.INTEREST_RATE), horizon).q_hat
    negative = np.nonzero(q < 0)[0]
    ok = q[0] > 0 and negative.size == 0
    detail = f"q_hat[0] = {q[0]:.6g}; min over {horizon} periods = {q.min():.6g}"
    if negative.size:
        detail += f"; first negative at t={int(negative[0])}"
    return CheckResult("interest_shock_sign", bool(ok), detail)


def _check_population_sign(cal, horizon, seed):
    sys, policy = solve_model(cal, TaxPolicy())
    q = impulse_response(policy, sys, ShockSpec(ShockKind.POPULATION_GROWTH), horizon).q_hat
    return CheckResult("population_shock_sign", bool(q[0] > 0), f"q_hat[0] = {q[0]:.6g}")


def _monotone(name, experiment, increasing):
    def check(cal, horizon, seed):
        sweep = run_sweep(cal, experiment, MONOTONE_GRID, horizon)
        peaks = [irf.peak_abs for _, irf in sweep.entries]
        sums = [irf.sum_sq for _, irf in sweep.entries]
        ok = _strictly(peaks, increasing) and _strictly(sums, increasing)
        word = "increasing" if increasing else "decreasing"
        return CheckResult(
            name, ok, f"peak_abs and sum_sq strictly {word} over {list(MONOTONE_GRID)}: {ok}"
        )

    check.__name__ = name
    return check


def _check_neutrality(cal, horizon, seed):
    sweep = run_sweep(cal, Experiment.FIG4, MONOTONE_GRID, horizon)
    base = sweep.entries[0][1].q_hat
    gap = max(float(np.max(np.abs(irf.q_hat - base))) for _, irf in sweep.entries)
    return CheckResult("stock_tax_neutrality", gap <= NEUTRALITY_TOL, f"max IRF spread {gap:.2e}")


def _check_reinforcement(cal, horizon, seed):
    rep = compare_reinforcement(cal, ShockKind.INTEREST_RATE, TaxPolicy(0.05, 0.05), horizon)
    d = rep.deviations
    return CheckResult(
        "interest_reinforcement",
        rep.joint_exceeds_singles,
        f"joint {d['joint']:.3e} vs stock {d['stock_only']:.3e}, flow {d['flow_only']:.3e}",
    )


CHECKS = (
    _check_saddle,
    _check_oracle,
    _check_interest_sign,
    _check_population_sign,
    _monotone("interest_monotone_tau_s", Experiment.FIG1, True),
    _monotone("interest_monotone_tau_f", Experiment.FIG2, True),
    _monotone("population_monotone_tau_f", Experiment.FIG5, False),
    _check_neutrality,
    _check_reinforcement,
)


def run_checks(cal: Calibration, horizon: int = 40, seed: int = 0) -> list[CheckResult]:
    results = []
    for check in CHECKS:
        try:
            results.append(check(cal, horizon, seed))
        except HausdynError as exc:
            name = check.__name__.removeprefix("_check_")
            results.append(CheckResult(name, False, f"error: {exc}"))
    return results
