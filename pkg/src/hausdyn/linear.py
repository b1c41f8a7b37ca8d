"""First-order state-space form of the housing model in log deviations.

State ordering used throughout the package is ``(h_hat, R_hat, n_hat)``:
the predetermined per-capita stock, the log interest rate and the log
population growth rate.  The house price ``q_hat`` is the jump variable.

    h_hat[t+1] = a_hh h_hat[t] + a_hq q_hat[t] + a_hn n_hat[t]
    q_hat[t]   = d_qh h_hat[t] + d_qq1 E_t q_hat[t+1] + d_qR_next E_t R_hat[t+1]
    R_hat[t+1] = rho_R R_hat[t] - e_R[t+1]
    n_hat[t+1] = rho_n n_hat[t] + e_n[t+1]

Interest rates enter the demand equation in levels, so a log deviation
``R_hat`` moves the level by ``R_bar * R_hat``.  Inflation and the mortgage
rate stay at their steady-state values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from hausdyn.errors import InconsistentInputs
from hausdyn.model import Calibration, ModelCoefficients, compute_coefficients

_CONSISTENCY_TOL = 1e-12


@dataclass(frozen=True)
class LinearSystem:
    a_hh: float
    a_hq: float
    a_hn: float
    d_qh: float
    d_qq1: float
    d_qR_next: float
    rho_R: float
    rho_n: float
    sigma_R: float
    sigma_n: float

    def __post_init__(self):
        for name, value in vars(self).items():
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")

    @property
    def d_qR(self) -> float:
        """Loading of q_hat[t] on R_hat[t] once E_t R_hat[t+1] = rho_R R_hat[t]."""
        return self.d_qR_next * self.rho_R

    @property
    def w1(self) -> float:
        return -self.d_qh

    @property
    def w2(self) -> float:
        return self.d_qq1

    def block_matrix(self) -> np.ndarray:
        """Transition of (h_hat, q_hat) implied by the stock law and demand equation.

        Exogenous terms are dropped; the eigenvalues decide saddle-path
        solvability.
        """
        return np.array(
            [
                [self.a_hh, self.a_hq],
                [-self.d_qh / self.d_qq1, 1.0 / self.d_qq1],
            ]
        )


def linearize(cal: Calibration, coeffs: ModelCoefficients) -> LinearSystem:
    """Build the log-deviation system around the steady state of ``cal``.

    Raises
    ------
    InconsistentInputs
        If ``coeffs`` differ from ``compute_coefficients(cal, coeffs.tax)``
        by more than 1e-12 in any field.
    """
    expected = compute_coefficients(cal, coeffs.tax)
    for name in ("theta", "beta", "r", "w1", "w2", "w3", "kappa", "K1"):
        got, want = getattr(coeffs, name), getattr(expected, name)
        if abs(got - want) > _CONSISTENCY_TOL:
            raise InconsistentInputs(
                f"coefficient {name}={got!r} does not match calibration ({want!r})"
            )

    return LinearSystem(
        a_hh=1.0 - cal.delta - cal.n_bar,
        a_hq=coeffs.kappa * cal.q_bar / cal.h_bar,
        a_hn=-cal.n_bar,
        d_qh=-coeffs.w1,
        d_qq1=coeffs.w2,
        d_qR_next=(coeffs.w3 - coeffs.w2) * cal.R_bar,
        rho_R=cal.rho_R,
        rho_n=cal.rho_n,
        sigma_R=cal.sigma_R,
        sigma_n=cal.sigma_n,
    )


def stock_update(cal: Calibration, coeffs: ModelCoefficients, h: float, q: float, n: float) -> float:
    """Exact (nonlinear) next-period per-capita stock given levels ``h, q, n``."""
    return h + coeffs.kappa * q - (n + cal.delta) * h


def stock_linearization_error(
    cal: Calibration, coeffs: ModelCoefficients, sys: LinearSystem, eps: float
) -> float:
    """Gap between the exact and linear stock laws at log deviations of size ``eps``.

    Price, stock and population growth are all displaced by ``eps`` in logs.
    """
    h = cal.h_bar * math.exp(eps)
    q = cal.q_bar * math.exp(eps)
    n = cal.n_bar * math.exp(eps)
    exact = math.log(stock_update(cal, coeffs, h, q, n) / cal.h_bar)
    approx = (sys.a_hh + sys.a_hq + sys.a_hn) * eps
    return abs(exact - approx)
