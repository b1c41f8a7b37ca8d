import math
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hausdyn.errors import InvalidCalibration
from hausdyn.model import (
    Calibration,
    TaxPolicy,
    compute_coefficients,
    default_calibration,
    demand_equation_residual,
    demand_foc_residual,
    derive_beta,
)

taxes = st.floats(0.0, 0.3, allow_nan=False)


def hand_coefficients(alpha, gamma, delta, n, pi, R, Rm, ch, q, h, ts, tf):
    # direct arithmetic, written out independently of the package
    beta = (1 + pi) / (1 + R)
    theta = 1 - gamma + tf + ts
    x = (1 - alpha) / alpha * ch
    w1 = x / (x + ((1 - delta) * (1 + tf) - (R - pi)) * q)
    w3 = (1 + Rm - R) * beta / ((1 + Rm - R) * beta + theta)
    return beta, w1, 1 - w1, w3, (n + delta) * h / q


def test_default_calibration_values(cal):
    assert (cal.alpha, cal.gamma, cal.delta) == (0.85, 0.8, 0.02)
    assert (cal.R_bar, cal.Rm_bar, cal.pi_bar) == (0.05, 0.08, 0.03)
    assert (cal.q_bar, cal.h_bar, cal.n_bar, cal.c_over_h) == (1.0, 1.0, 0.01, 0.267)
    assert (cal.rho_R, cal.rho_n) == (0.8, 0.8)
    assert cal.sigma_R == pytest.approx(math.sqrt(0.01))
    assert cal.sigma_n == pytest.approx(math.sqrt(0.01))


def test_derive_beta(cal):
    assert derive_beta(cal) == pytest.approx(1.03 / 1.05, abs=1e-15)
    assert derive_beta(cal) == pytest.approx(0.980952, abs=1e-6)
    assert derive_beta(replace(cal, pi_bar=0.0)) == pytest.approx(0.952381, abs=1e-6)
    with pytest.raises(InvalidCalibration):
        derive_beta(replace(cal, pi_bar=0.05))


def test_coefficients_match_hand_evaluation(cal):
    c = compute_coefficients(cal, TaxPolicy())
    assert c.w1 == pytest.approx(0.046785, abs=1e-6)
    assert c.w2 == pytest.approx(0.953215, abs=1e-6)
    assert c.w3 == pytest.approx(0.834763, abs=1e-6)
    assert c.kappa == pytest.approx(0.03, abs=1e-15)
    assert c.K1 == pytest.approx(-0.834763 * -0.03 + 0.953215 * 0.02, abs=1e-6)
    assert c.K1 == pytest.approx(0.044107, abs=1e-6)
    assert c.theta == pytest.approx(0.2)
    assert c.r == pytest.approx(0.02)


def test_theta_must_be_positive(cal):
    # gamma = 1 is excluded by the calibration itself
    with pytest.raises(InvalidCalibration):
        Calibration(gamma=1.0)
    # so build a case where w1's denominator is the binding constraint instead
    with pytest.raises(InvalidCalibration, match="tau_f"):
        compute_coefficients(replace(cal, delta=0.5, R_bar=0.6, pi_bar=0.0, Rm_bar=0.7), TaxPolicy())


def test_negative_tax_rejected():
    with pytest.raises(InvalidCalibration, match="tau_s"):
        TaxPolicy(tau_s=-0.01)


@pytest.mark.parametrize(
    "field,value,msg",
    [
        ("sigma_R", -0.1, "sigma_R must be ≥ 0"),
        ("alpha", 1.0, "alpha"),
        ("rho_n", 1.0, "rho_n"),
        ("q_bar", 0.0, "q_bar"),
        ("delta", float("nan"), "delta"),
    ],
)
def test_calibration_invariants(field, value, msg):
    with pytest.raises(InvalidCalibration, match=msg):
        Calibration(**{field: value})


def test_foc_residual(cal):
    assert demand_foc_residual(cal, TaxPolicy()) == pytest.approx(0.15 / 0.85 * 0.267 - 0.064, abs=1e-12)
    assert demand_foc_residual(cal, TaxPolicy()) == pytest.approx(-0.016882, abs=1e-6)
    drop = demand_foc_residual(cal, TaxPolicy()) - demand_foc_residual(cal, TaxPolicy(tau_s=0.05))
    assert drop == pytest.approx(0.05, abs=1e-12)


def test_foc_residual_zero_when_consistent(cal):
    consistent = replace(cal, c_over_h=0.064 * 0.85 / 0.15)
    assert demand_foc_residual(consistent, TaxPolicy()) == pytest.approx(0.0, abs=1e-15)


@settings(max_examples=200)
@given(ts=taxes, tf=taxes, alpha=st.floats(0.5, 0.95), ch=st.floats(0.05, 1.0))
def test_coefficients_agree_with_hand_oracle(ts, tf, alpha, ch):
    cal = replace(default_calibration(), alpha=alpha, c_over_h=ch)
    c = compute_coefficients(cal, TaxPolicy(ts, tf))
    beta, w1, w2, w3, kappa = hand_coefficients(
        alpha, 0.8, 0.02, 0.01, 0.03, 0.05, 0.08, ch, 1.0, 1.0, ts, tf
    )
    assert c.beta == pytest.approx(beta, abs=1e-14)
    assert c.w1 == pytest.approx(w1, abs=1e-14)
    assert c.w3 == pytest.approx(w3, abs=1e-14)
    assert c.kappa == pytest.approx(kappa, abs=1e-14)
    assert c.w1 + c.w2 == 1.0 or abs(c.w1 + c.w2 - 1.0) < 1e-15
    assert 0 < c.w1 < 1 and 0 < c.w3 < 1


@given(ts=taxes, tf=taxes, dt=st.floats(1e-4, 0.1))
def test_w3_decreasing_in_both_taxes(ts, tf, dt):
    cal = default_calibration()
    base = compute_coefficients(cal, TaxPolicy(ts, tf)).w3
    assert compute_coefficients(cal, TaxPolicy(ts + dt, tf)).w3 < base
    assert compute_coefficients(cal, TaxPolicy(ts, tf + dt)).w3 < base


@given(ts=taxes, tf=taxes, dt=st.floats(1e-4, 0.1))
def test_w1_decreasing_in_flow_tax_and_free_of_stock_tax(ts, tf, dt):
    cal = default_calibration()
    base = compute_coefficients(cal, TaxPolicy(ts, tf))
    assert compute_coefficients(cal, TaxPolicy(ts, tf + dt)).w1 < base.w1
    assert compute_coefficients(cal, TaxPolicy(ts + dt, tf)).w1 == base.w1


@given(ts=taxes, tf=taxes)
def test_kappa_independent_of_taxes(ts, tf):
    cal = default_calibration()
    assert compute_coefficients(cal, TaxPolicy(ts, tf)).kappa == compute_coefficients(cal, TaxPolicy()).kappa


@given(ts=taxes, tf=taxes, q=st.floats(0.2, 5.0), h=st.floats(0.2, 5.0))
def test_demand_equation_holds_at_steady_state(ts, tf, q, h):
    cal = replace(default_calibration(), q_bar=q, h_bar=h)
    c = compute_coefficients(cal, TaxPolicy(ts, tf))
    assert abs(demand_equation_residual(cal, c)) < 1e-12


def test_pure_function(cal):
    tax = TaxPolicy(0.03, 0.07)
    assert compute_coefficients(cal, tax) == compute_coefficients(cal, tax)
