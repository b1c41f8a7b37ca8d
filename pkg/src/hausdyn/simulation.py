"""Impulse responses, stochastic simulation and the tax-sweep experiments."""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from hausdyn.errors import HausdynError
from hausdyn.linear import LinearSystem, linearize
from hausdyn.model import Calibration, TaxPolicy, compute_coefficients
from hausdyn.solver import PolicyFunction, solve_saddle_path

DEFAULT_HORIZON = 40
DEFAULT_TAX_GRID = (0.0, 0.05, 0.10)


class ShockKind(str, enum.Enum):
    INTEREST_RATE = "interest-rate"
    POPULATION_GROWTH = "population-growth"


class Experiment(str, enum.Enum):
    """Shock kind crossed with which tax rate the sweep varies."""

    FIG1 = "fig1"
    FIG2 = "fig2"
    FIG3 = "fig3"
    FIG4 = "fig4"
    FIG5 = "fig5"
    FIG6 = "fig6"

    @property
    def shock(self) -> ShockKind:
        if self in (Experiment.FIG1, Experiment.FIG2, Experiment.FIG3):
            return ShockKind.INTEREST_RATE
        return ShockKind.POPULATION_GROWTH

    @property
    def varies(self) -> str:
        """One of ``"tau_s"``, ``"tau_f"`` or ``"joint"``."""
        return {0: "tau_s", 1: "tau_f", 2: "joint"}[(int(self.value[-1]) - 1) % 3]

    def tax(self, rate: float) -> TaxPolicy:
        if self.varies == "tau_s":
            return TaxPolicy(tau_s=rate, tau_f=0.0)
        if self.varies == "tau_f":
            return TaxPolicy(tau_s=0.0, tau_f=rate)
        return TaxPolicy(tau_s=rate, tau_f=rate)


@dataclass(frozen=True)
class ShockSpec:
    kind: ShockKind = ShockKind.INTEREST_RATE
    size_sd: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ShockKind(self.kind))
        if not self.size_sd > 0:
            raise ValueError("size_sd must be > 0")


@dataclass(frozen=True)
class ImpulseResponse:
    q_hat: np.ndarray
    h_hat: np.ndarray
    x_hat: np.ndarray

    @property
    def horizon(self) -> int:
        return len(self.q_hat)

    @property
    def peak_abs(self) -> float:
        return float(np.max(np.abs(self.q_hat)))

    @property
    def sum_sq(self) -> float:
        return float(np.sum(self.q_hat**2))

    @property
    def half_life(self) -> int | None:
        """First period after the peak where |q_hat| is at most half the peak, if any."""
        a = np.abs(self.q_hat)
        t_peak = int(np.argmax(a))
        later = np.nonzero(a[t_peak + 1:] <= 0.5 * a[t_peak])[0]
        return None if later.size == 0 else t_peak + 1 + int(later[0])


@dataclass(frozen=True)
class SweepResult:
    experiment: Experiment
    entries: tuple  # of (TaxPolicy, ImpulseResponse)

    @property
    def horizon(self) -> int:
        return self.entries[0][1].horizon


@dataclass(frozen=True)
class SimulatedPaths:
    q_hat: np.ndarray
    h_hat: np.ndarray
    R_hat: np.ndarray
    n_hat: np.ndarray


def solve_model(cal: Calibration, tax: TaxPolicy) -> tuple[LinearSystem, PolicyFunction]:
    """Coefficients, linearization and saddle-path solution in one call."""
    sys = linearize(cal, compute_coefficients(cal, tax))
    return sys, solve_saddle_path(sys)


def impulse_response(
    policy: PolicyFunction,
    sys: LinearSystem,
    shock: ShockSpec,
    horizon: int = DEFAULT_HORIZON,
) -> ImpulseResponse:
    """Response to a one-time innovation of ``shock.size_sd`` standard deviations at t=0.

    The interest-rate innovation enters its AR(1) with a minus sign, so a
    positive innovation lowers the rate.  ``x_hat`` is the log deviation of
    the shocked exogenous variable.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if shock.kind is ShockKind.INTEREST_RATE:
        rho, x0, phi_x, load_x = sys.rho_R, -shock.size_sd * sys.sigma_R, policy.phi_R, 0.0
    else:
        rho, x0, phi_x, load_x = sys.rho_n, shock.size_sd * sys.sigma_n, policy.phi_n, sys.a_hn

    q = np.zeros(horizon)
    h = np.zeros(horizon)
    x = np.empty(horizon)
    x[0] = x0
    for t in range(1, horizon):
        x[t] = rho * x[t - 1]
    for t in range(horizon):
        q[t] = policy.phi_h * h[t] + phi_x * x[t]
        if t + 1 < horizon:
            h[t + 1] = sys.a_hh * h[t] + sys.a_hq * q[t] + load_x * x[t]
    return ImpulseResponse(q_hat=q, h_hat=h, x_hat=x)


def simulate_paths(policy: PolicyFunction, sys: LinearSystem, e_R, e_n) -> SimulatedPaths:
    """Propagate given innovation sequences from the steady state.

    ``e_R[t]`` and ``e_n[t]`` hit the exogenous processes in period ``t``.
    """
    e_R = np.asarray(e_R, dtype=float)
    e_n = np.asarray(e_n, dtype=float)
    periods = len(e_R)
    if len(e_n) != periods:
        raise ValueError("innovation sequences must have equal length")
    R = np.empty(periods)
    n = np.empty(periods)
    h = np.zeros(periods)
    q = np.empty(periods)
    R_prev = n_prev = 0.0
    for t in range(periods):
        R[t] = sys.rho_R * R_prev - e_R[t]
        n[t] = sys.rho_n * n_prev + e_n[t]
        q[t] = policy.phi_h * h[t] + policy.phi_R * R[t] + policy.phi_n * n[t]
        if t + 1 < periods:
            h[t + 1] = sys.a_hh * h[t] + sys.a_hq * q[t] + sys.a_hn * n[t]
        R_prev, n_prev = R[t], n[t]
    return SimulatedPaths(q_hat=q, h_hat=h, R_hat=R, n_hat=n)


def stochastic_simulate(
    policy: PolicyFunction, sys: LinearSystem, seed: int, periods: int
) -> SimulatedPaths:
    """Simulate with i.i.d. Gaussian innovations drawn from a seeded generator."""
    if periods < 1:
        raise ValueError("periods must be >= 1")
    rng = np.random.default_rng(seed)
    e_R = rng.normal(0.0, 1.0, periods) * sys.sigma_R
    e_n = rng.normal(0.0, 1.0, periods) * sys.sigma_n
    return simulate_paths(policy, sys, e_R, e_n)


class SweepError(HausdynError):
    """A grid point of a sweep failed; ``tax`` is the offending policy."""

    def __init__(self, tax: TaxPolicy, cause: Exception):
        super().__init__(f"sweep failed at tau_s={tax.tau_s:g}, tau_f={tax.tau_f:g}: {cause}")
        self.tax = tax
        self.cause = cause


def run_sweep(
    cal: Calibration,
    experiment: Experiment | str,
    tax_grid=DEFAULT_TAX_GRID,
    horizon: int = DEFAULT_HORIZON,
    size_sd: float = 1.0,
) -> SweepResult:
    """Recompute coefficients, re-solve and take the IRF at every grid rate."""
    experiment = Experiment(experiment)
    tax_grid = list(tax_grid)
    if not tax_grid:
        raise ValueError("tax grid must be nonempty")
    shock = ShockSpec(experiment.shock, size_sd)
    entries = []
    for rate in tax_grid:
        tax = experiment.tax(float(rate))
        try:
            sys, policy = solve_model(cal, tax)
        except HausdynError as exc:
            raise SweepError(tax, exc) from exc
        entries.append((tax, impulse_response(policy, sys, shock, horizon)))
    return SweepResult(experiment=experiment, entries=tuple(entries))


@dataclass(frozen=True)
class ReinforcementReport:
    shock: ShockKind
    tax: TaxPolicy
    peak_baseline: float
    peak_stock_only: float
    peak_flow_only: float
    peak_joint: float

    @property
    def deviations(self) -> dict:
        base = self.peak_baseline
        return {
            "stock_only": abs(self.peak_stock_only - base),
            "flow_only": abs(self.peak_flow_only - base),
            "joint": abs(self.peak_joint - base),
        }

    @property
    def joint_exceeds_singles(self) -> bool:
        d = self.deviations
        return d["joint"] > max(d["stock_only"], d["flow_only"])

    def orderings(self) -> list[str]:
        peaks = {
            "(0,0)": self.peak_baseline,
            "(tau_s,0)": self.peak_stock_only,
            "(0,tau_f)": self.peak_flow_only,
            "(tau_s,tau_f)": self.peak_joint,
        }
        ranked = sorted(peaks, key=peaks.get)
        return [f"{a} <= {b}" for a, b in zip(ranked, ranked[1:])]


def compare_reinforcement(
    cal: Calibration,
    kind: ShockKind | str,
    tax: TaxPolicy,
    horizon: int = DEFAULT_HORIZON,
) -> ReinforcementReport:
    """Peak price responses with no tax, each tax alone, and both together."""
    if not (tax.tau_s > 0 and tax.tau_f > 0):
        raise ValueError("compare_reinforcement needs both tax rates > 0")
    shock = ShockSpec(ShockKind(kind))

    def peak(tp):
        sys, policy = solve_model(cal, tp)
        return impulse_response(policy, sys, shock, horizon).peak_abs

    return ReinforcementReport(
        shock=shock.kind,
        tax=tax,
        peak_baseline=peak(TaxPolicy()),
        peak_stock_only=peak(replace(tax, tau_f=0.0)),
        peak_flow_only=peak(replace(tax, tau_s=0.0)),
        peak_joint=peak(tax),
    )
