"""Calibration, tax policy and reduced-form coefficients of the housing model.

The demand side is a log-linear asset-pricing relation for the real house
price ``q`` with weights ``w1, w2, w3`` fixed at the steady state; the supply
side is a stock-accumulation law in per-capita housing ``h`` with gross
investment ``kappa * q`` per head.  All rates are annual decimals and one
model period is one year.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields

from hausdyn.errors import InvalidCalibration


@dataclass(frozen=True)
class Calibration:
    """Structural parameters, steady-state values and shock-process settings.

    ``sigma_R`` and ``sigma_n`` are standard deviations of the log
    innovations, not variances.
    """

    alpha: float = 0.85
    gamma: float = 0.8
    delta: float = 0.02
    n_bar: float = 0.01
    pi_bar: float = 0.03
    R_bar: float = 0.05
    Rm_bar: float = 0.08
    c_over_h: float = 0.267
    q_bar: float = 1.0
    h_bar: float = 1.0
    rho_R: float = 0.8
    rho_n: float = 0.8
    sigma_R: float = 0.1
    sigma_n: float = 0.1

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise InvalidCalibration(f"{f.name} must be a number, got {value!r}")
            if not math.isfinite(value):
                raise InvalidCalibration(f"{f.name} must be finite")
        for name in ("alpha", "gamma", "delta"):
            if not 0.0 < getattr(self, name) < 1.0:
                raise InvalidCalibration(f"{name} must lie in (0, 1)")
        for name in ("rho_R", "rho_n"):
            if not 0.0 <= getattr(self, name) < 1.0:
                raise InvalidCalibration(f"{name} must lie in [0, 1)")
        for name in ("n_bar", "R_bar", "Rm_bar", "c_over_h", "q_bar", "h_bar"):
            if getattr(self, name) <= 0.0:
                raise InvalidCalibration(f"{name} must be > 0")
        for name in ("sigma_R", "sigma_n"):
            if getattr(self, name) < 0.0:
                raise InvalidCalibration(f"{name} must be ≥ 0")
        if self.pi_bar <= -1.0:
            raise InvalidCalibration("pi_bar must be > -1")

    @property
    def r(self) -> float:
        """Steady-state real interest rate."""
        return self.R_bar - self.pi_bar


@dataclass(frozen=True)
class TaxPolicy:
    tau_s: float = 0.0
    tau_f: float = 0.0

    def __post_init__(self):
        for name in ("tau_s", "tau_f"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise InvalidCalibration(f"{name} must be a number, got {value!r}")
            if not math.isfinite(value) or value < 0.0:
                raise InvalidCalibration(f"{name} must be ≥ 0")


@dataclass(frozen=True)
class ModelCoefficients:
    """Steady-state quantities entering the linear demand and supply laws.

    ``tax`` records the policy the coefficients were evaluated under so that
    downstream consumers can check consistency with a calibration.
    """

    theta: float
    beta: float
    r: float
    w1: float
    w2: float
    w3: float
    kappa: float
    K1: float
    tax: TaxPolicy


def default_calibration() -> Calibration:
    """Return the baseline calibration (annual, China-matched values)."""
    return Calibration()


def derive_beta(cal: Calibration) -> float:
    """Discount factor that makes the asset Euler condition hold in steady state.

    Returns ``(1 + pi_bar) / (1 + R_bar)``.

    Raises
    ------
    InvalidCalibration
        If the implied factor is not strictly inside (0, 1), which happens
        whenever the nominal rate does not exceed inflation.
    """
    beta = (1.0 + cal.pi_bar) / (1.0 + cal.R_bar)
    if not 0.0 < beta < 1.0:
        raise InvalidCalibration(
            f"discount factor {beta!r} outside (0, 1); need R_bar > pi_bar > -1"
        )
    return beta


def compute_coefficients(cal: Calibration, tax: TaxPolicy) -> ModelCoefficients:
    """Evaluate the reduced-form coefficients for one (calibration, tax) pair.

    The intercept ``K1`` is backed out so the log demand equation holds
    exactly at the steady state; ``kappa`` is the supply slope that keeps the
    per-capita stock constant at ``h_bar``.
    """
    theta = 1.0 - cal.gamma + tax.tau_f + tax.tau_s
    if theta <= 0.0:
        raise InvalidCalibration(f"theta = 1 - gamma + tau_f + tau_s must be > 0, got {theta!r}")
    beta = derive_beta(cal)
    r = cal.r

    resale = (1.0 - cal.delta) * (1.0 + tax.tau_f) - r
    if resale <= 0.0:
        raise InvalidCalibration(
            f"(1 - delta)(1 + tau_f) - (R_bar - pi_bar) must be > 0, got {resale!r}"
        )
    service = (1.0 - cal.alpha) / cal.alpha * cal.c_over_h
    w1 = service / (service + resale * cal.q_bar)
    w2 = 1.0 - w1
    spread = (1.0 + cal.Rm_bar - cal.R_bar) * beta
    w3 = spread / (spread + theta)
    if not 0.0 < w3 < 1.0:
        raise InvalidCalibration(f"w3 must lie in (0, 1), got {w3!r}")
    if not 0.0 < w1 < 1.0:
        raise InvalidCalibration(f"w1 must lie in (0, 1), got {w1!r}")

    kappa = (cal.n_bar + cal.delta) * cal.h_bar / cal.q_bar

    K1 = (
        (1.0 - w2) * math.log(cal.q_bar)
        + w1 * math.log(cal.h_bar)
        - w3 * (cal.R_bar - cal.Rm_bar)
        + w2 * (cal.R_bar - cal.pi_bar)
    )
    return ModelCoefficients(
        theta=theta, beta=beta, r=r, w1=w1, w2=w2, w3=w3, kappa=kappa, K1=K1, tax=tax
    )


def demand_equation_residual(cal: Calibration, coeffs: ModelCoefficients) -> float:
    """Residual of the log demand equation evaluated at the steady state."""
    log_q = math.log(cal.q_bar)
    rhs = (
        coeffs.K1
        - coeffs.w1 * math.log(cal.h_bar)
        + coeffs.w2 * log_q
        + coeffs.w3 * (cal.R_bar - cal.Rm_bar)
        - coeffs.w2 * (cal.R_bar - cal.pi_bar)
    )
    return log_q - rhs


def demand_foc_residual(cal: Calibration, tax: TaxPolicy) -> float:
    """Steady-state residual (LHS - RHS) of the per-capita housing first-order condition.

    The baseline calibration fixes ``c/h`` independently of this condition, so
    the residual is generally nonzero (about -0.0169 at the defaults).  It is
    a diagnostic only.
    """
    theta = 1.0 - cal.gamma + tax.tau_f + tax.tau_s
    lhs = (1.0 - cal.alpha) / cal.alpha * cal.c_over_h
    rhs = cal.q_bar * (theta + (1.0 + cal.Rm_bar - cal.R_bar) * cal.gamma) - cal.q_bar * (
        (1.0 + tax.tau_f) * (1.0 - cal.delta) - cal.R_bar + cal.pi_bar
    )
    return lhs - rhs
