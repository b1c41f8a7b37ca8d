import math
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hausdyn.errors import InconsistentInputs
from hausdyn.linear import linearize, stock_linearization_error
from hausdyn.model import TaxPolicy, compute_coefficients, default_calibration


def test_default_entries(cal):
    sys = linearize(cal, compute_coefficients(cal, TaxPolicy()))
    assert sys.a_hh == pytest.approx(0.97, abs=1e-15)
    assert sys.a_hq == pytest.approx(0.03, abs=1e-15)
    assert sys.a_hn == pytest.approx(-0.01, abs=1e-15)
    assert sys.d_qh == pytest.approx(-0.046785, abs=1e-6)
    assert sys.d_qq1 == pytest.approx(0.953215, abs=1e-6)
    assert sys.d_qR == pytest.approx((0.834763 - 0.953215) * 0.05 * 0.8, abs=1e-7)
    assert sys.d_qR == pytest.approx(-0.0047381, abs=1e-7)


def test_degenerate_stock_law(cal):
    # delta and n_bar must stay positive in a Calibration, so take the limit
    tiny = replace(cal, delta=1e-300, n_bar=1e-300)
    sys = linearize(tiny, compute_coefficients(tiny, TaxPolicy()))
    assert sys.a_hh == 1.0
    assert sys.a_hn == pytest.approx(0.0, abs=1e-299)


def test_rejects_coefficients_from_other_calibration(cal):
    other = replace(cal, alpha=0.8)
    with pytest.raises(InconsistentInputs, match="w1"):
        linearize(cal, compute_coefficients(other, TaxPolicy()))


def test_positive_interest_innovation_raises_price_channel(cal):
    sys = linearize(cal, compute_coefficients(cal, TaxPolicy()))
    # w3 < w2 so higher rates lower the price
    assert sys.d_qR < 0


@given(ts=st.floats(0, 0.2), tf=st.floats(0, 0.2))
def test_tax_dependence(ts, tf):
    cal = default_calibration()
    base = linearize(cal, compute_coefficients(cal, TaxPolicy()))
    sys = linearize(cal, compute_coefficients(cal, TaxPolicy(ts, tf)))
    assert sys.a_hn == base.a_hn == -cal.n_bar
    assert sys.a_hh == base.a_hh and sys.a_hq == base.a_hq
    only_s = linearize(cal, compute_coefficients(cal, TaxPolicy(ts, 0.0)))
    assert only_s.d_qh == base.d_qh


def test_linearization_error_is_second_order(cal):
    coeffs = compute_coefficients(cal, TaxPolicy())
    sys = linearize(cal, coeffs)
    errs = [stock_linearization_error(cal, coeffs, sys, eps) for eps in (1e-2, 5e-3, 1e-3)]
    assert math.log2(errs[0] / errs[1]) >= 1.9
    assert math.log10(errs[0] / errs[2]) >= 1.9
