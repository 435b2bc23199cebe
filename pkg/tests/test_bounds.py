import math

import numpy as np
import pytest

from helixpair.bounds import (
    TAIL_CLOSED_FORM,
    Case,
    Extremum,
    check_maclaurin,
    classify_case,
    maclaurin_coeffs,
    minimize_riemann_bound,
    negative_part_near_axis,
    positivity_certificate,
    quarter_interval_bound,
    quarter_interval_integral,
    riemann_bound,
    ribbon_tail_integral,
    tail_closed_form,
    triangle_extrema_oracle,
    triangle_grid,
    verify_bounds,
)
from helixpair.geometry import HelicoidParams, WrongKind


@pytest.mark.parametrize("abw", [(0.2, 1.7, 1.2), (0.001, 0.002, 37.0), (0.5, 3.0, 0.3), (1.2, 1.5, 0.5)])
def test_maclaurin_closed_form_c2_agrees(abw):
    mc = check_maclaurin(HelicoidParams(*abw))
    assert mc.c0_exact
    assert mc.agrees, mc.describe()
    assert "matches" in mc.describe()


def test_maclaurin_c0():
    assert maclaurin_coeffs(HelicoidParams(0.5, 2.0, 3.0)).c0 == pytest.approx(1 / 2.25, rel=1e-15)


def test_maclaurin_requires_ribbon():
    with pytest.raises(WrongKind):
        maclaurin_coeffs(HelicoidParams(-1, 1, 1))


def test_quarter_bound_below_true_integral(rng):
    for _ in range(30):
        a = rng.uniform(0.001, 0.5)
        b = rng.uniform(a + 1.0, 2.0 - a)
        w = rng.uniform(1.0, b - a)
        p = HelicoidParams(a, b, w)
        q = quarter_interval_bound(p)
        assert q.hypothesis
        assert q.above_minus_1_96 and q.frequency_form > -1 / 96
        assert quarter_interval_integral(p) >= q.value


def test_quarter_chain_middle_step_can_fail():
    q = quarter_interval_bound(HelicoidParams(0.2, 1.7, 1.2))
    assert q.steps == (True, False, True)
    assert q.cubic_term < q.frequency_form


def test_riemann_minimum():
    w, v = minimize_riemann_bound(1.0, 100.0)
    assert abs(w - 14.8) < 0.3
    assert v == pytest.approx(-1.77e-6, rel=0.05)


def test_riemann_sign_change_and_asymptote():
    root = math.pi * (22 + math.sqrt(1540)) / 16
    assert riemann_bound(root - 1e-3) > 0 > riemann_bound(root + 1e-3)
    assert 1e4**4 * riemann_bound(1e4) == pytest.approx(-1 / 3, rel=1e-3)
    with pytest.raises(ValueError):
        riemann_bound(0.0)
    with pytest.raises(ValueError):
        minimize_riemann_bound(0.5, 2.0)


def test_tail_closed_form():
    t = tail_closed_form()
    assert t.value == pytest.approx(0.332590384586, abs=1e-12)
    assert t.abs_diff < 1e-9 and t.at_least_three_tenths


def test_ribbon_tail_dominates_closed_form(rng):
    for _ in range(10):
        a = rng.uniform(0.001, 0.9)
        b = rng.uniform(a, 2 - a)
        p = HelicoidParams(a, b, rng.uniform(0.5, 20))
        assert ribbon_tail_integral(p) >= TAIL_CLOSED_FORM


def test_negative_part_vanishes_for_slow_ribbons():
    # cos(omega v) < 0 with v < 1 needs omega > pi/2
    assert negative_part_near_axis(HelicoidParams(0.1, 1.0, 1.2)) == 0.0
    assert negative_part_near_axis(HelicoidParams(0.1, 1.0, 10.0)) < -0.01


def test_triangle_grid_inside():
    a, b = triangle_grid(200)
    assert np.all(a > 0) and np.all(b > a) and np.all(a + b < 2)


def test_triangle_extrema():
    assert triangle_extrema_oracle(Extremum.SUM_SQUARES) == pytest.approx(-0.5, abs=1e-3)
    assert triangle_extrema_oracle(Extremum.COS_COEFF) == pytest.approx(2.0, abs=1e-3)
    assert triangle_extrema_oracle(Extremum.SUM_PRODUCT) == pytest.approx(-1.0, abs=1e-3)


@pytest.mark.parametrize("abw,case", [
    ((1.2, 1.5, 0.5), Case.NONPOSITIVE_COS_COEFF),
    ((0.3, 1.9, 3.0), Case.SUM_AT_LEAST_TWO),
    ((0.2, 0.9, 0.8), Case.LOW_FREQUENCY),
    ((0.2, 1.7, 1.2), Case.WIDE_BAND),
    ((0.001, 0.002, 37.0), Case.INCONCLUSIVE),
])
def test_case_order(abw, case):
    assert classify_case(HelicoidParams(*abw)) is case


def test_certificate_pointwise_case():
    c = positivity_certificate(HelicoidParams(0.3, 1.9, 3.0))
    assert c.case is Case.SUM_AT_LEAST_TWO
    assert c.details["integrand_min"] > 0
    assert c.numeric_integral_sign == "Positive"


def test_certificate_wide_band():
    c = positivity_certificate(HelicoidParams(0.2, 1.7, 1.2))
    assert c.case is Case.WIDE_BAND
    assert c.details["assembled_bound"] > 0
    assert c.details["assembled_bound_clamped"] > 0
    assert c.details["assembled_bound_clamped"] < c.details["integral"]


def test_verify_bounds_report():
    rep = verify_bounds()
    assert rep.passed
    names = {c["name"] for c in rep.checks}
    assert {"maclaurin_c2", "tail_closed_form", "riemann_minimum", "assembled_bound_positive"} <= names
    findings = {f["name"]: f["holds"] for f in rep.findings}
    assert findings["quarter_chain_2_sup_cos_coeff"] is False
