import math
import warnings

import numpy as np
import pytest

from helixpair import _kernels
from helixpair.geometry import HelicoidParams
from helixpair.quadrature import (
    BudgetExceeded,
    KernelIntegrand,
    QuadratureConfig,
    TailClass,
    integrate_half_line,
    integrate_interval,
    integrate_real_line,
    inverse_square_integral,
)
from helixpair.variational import gamma1_residual, EnergyWeights

CFG = QuadratureConfig(rel_tol=1e-11, abs_tol=1e-14)


def test_polynomial_exact_on_single_cell():
    # 15-point Kronrod integrates degree-22 polynomials exactly
    r = integrate_interval(lambda x: x**21, 0.0, 1.0, CFG)
    assert r.value == pytest.approx(1 / 22, rel=1e-14)


def test_interval_oscillatory():
    cfg = CFG.with_rate(40.0)
    r = integrate_interval(lambda x: np.cos(40.0 * x) * np.exp(-x), 0.0, 10.0, cfg)
    exact = (1 - math.exp(-10) * (math.cos(400) - 40 * math.sin(400))) / (1 + 1600)
    assert r.converged
    assert abs(r.value - exact) < 1e-12


def test_interval_rejects_empty():
    with pytest.raises(ValueError):
        integrate_interval(np.sin, 1.0, 1.0)


def test_interval_breakpoints_handle_kink():
    r = integrate_interval(lambda x: np.sqrt(np.abs(x - 0.3)), 0.0, 1.0, CFG, breakpoints=[0.3])
    exact = (2 / 3) * (0.3**1.5 + 0.7**1.5)
    assert abs(r.value - exact) < 1e-10


def test_half_line_leading_term_only():
    tail = TailClass(4, 0.0, 0.0, leading=1.0, leading_offset=1.0)
    r = integrate_half_line(lambda x: 1.0 / (1.0 + x * x), 0.0, tail, CFG)
    assert abs(r.value - math.pi / 2) < 1e-12


def test_half_line_quartic_tail():
    r = integrate_half_line(lambda x: 1.0 / (1.0 + x * x) ** 2, 0.0, TailClass(4, 1.0, 1.0), CFG)
    assert abs(r.value - math.pi / 4) < 1e-11


@pytest.mark.parametrize("w", [0.5, 3.0, 25.0])
def test_real_line_oscillatory(w):
    cfg = QuadratureConfig(rel_tol=1e-11, abs_tol=1e-12).with_rate(w)
    r = integrate_real_line(lambda x: np.cos(w * x) / (1 + x * x) ** 2, "even", TailClass(4, 1.0, 1.0), cfg)
    exact = math.pi * (1 + w) * math.exp(-w) / 2
    assert abs(r.value - exact) < 1e-10


def test_real_line_none_folds_odd_part_away():
    f = lambda x: 1.0 / (1 + x * x) ** 2 + x / (1 + x * x) ** 3  # noqa: E731
    r = integrate_real_line(f, "none", TailClass(4, 1.0, 1.0), CFG)
    assert abs(r.value - math.pi / 2) < 1e-11


def test_real_line_odd_is_exact_zero():
    calls = []
    r = integrate_real_line(lambda x: calls.append(1) or x, "odd", TailClass(4, 1.0), CFG)
    assert r.value == 0.0 and r.converged and not calls


def test_unknown_symmetry():
    with pytest.raises(ValueError):
        integrate_real_line(np.cos, "sideways", TailClass(4, 1.0), CFG)


def test_budget_warns_and_flags():
    cfg = QuadratureConfig(rel_tol=1e-14, abs_tol=1e-16, max_cells=3)
    with pytest.warns(BudgetExceeded):
        r = integrate_interval(lambda x: np.sin(1 / (x + 1e-3)), 0.0, 1.0, cfg)
    assert not r.converged and r.limit == "budget"


def test_converged_result_without_warning():
    with warnings.catch_warnings():
        warnings.simplefilter("error", BudgetExceeded)
        r = integrate_interval(np.exp, 0.0, 1.0, CFG)
    assert r.converged and r.limit is None
    assert r.error_estimate <= CFG.tolerance(r.value)


@pytest.mark.parametrize("m,x", [(0.0, 3.0), (0.25, 0.5), (4.0, 7.0), (1e-6, 50.0)])
def test_tail_bound_matches_integral(m, x):
    tail = TailClass(4, 2.0, m)
    ref = integrate_half_line(lambda v: 2.0 / (m + (v + x) ** 2) ** 2, 0.0,
                              TailClass(4, 2.0, 0.0), QuadratureConfig(1e-12, 1e-16))
    # exact where the closed form is used, an over-estimate beyond it
    assert tail.bound(x) >= ref.value * (1 - 1e-9)
    if x * x < 100 * m:
        assert tail.bound(x) == pytest.approx(ref.value, rel=1e-8)


def test_tail_cutoff_respects_tolerance():
    for p in (2, 4):
        tail = TailClass(p, 3.0, 0.0)
        assert tail.bound(tail.cutoff(1e-9)) <= 1e-9 * (1 + 1e-12)


def test_tail_class_validation():
    with pytest.raises(ValueError):
        TailClass(3, 1.0)
    with pytest.raises(ValueError):
        TailClass(4, -1.0)


def test_inverse_square_integral():
    assert inverse_square_integral(0.0, 4.0) == 0.25
    assert inverse_square_integral(1.0, 0.0) == pytest.approx(math.pi / 2)
    assert inverse_square_integral(1.0, math.inf) == 0.0


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureConfig(max_cells=0)
    assert QuadratureConfig().with_rate(2.0).oscillation_rate == 2.0


def _gamma1_integrand(A, B, w, v):
    """Written independently from the kernels: the curve-1 x-component integrand."""
    d = A * A - 2 * A * B * np.cos(w * v) + B * B + v * v
    s2 = math.sqrt(w * w * B * B + 1)
    return (2 * (B * np.cos(w * v) - A) / d - 1) * s2 / d


def test_against_trapezoid_oracle():
    A, B, w = -1.0, 2.5, 1.5
    x_max, n = 1.0e3, 10_000_001
    v = np.linspace(-x_max, x_max, n)
    f = _gamma1_integrand(A, B, w, v)
    h = v[1] - v[0]
    trap = h * (f.sum() - 0.5 * (f[0] + f[-1]))
    s2 = math.sqrt(w * w * B * B + 1)
    c = A * A + B * B
    trap += 2 * (-s2) * (math.atan2(math.sqrt(c), x_max) / math.sqrt(c))
    q = gamma1_residual(HelicoidParams(A, B, w), EnergyWeights(0.5, 0.0), CFG)
    assert abs(q.lhs - trap) < 1e-6


def test_kernel_integrand_rule_agrees_with_callable():
    p = [-1.0, 2.0, 3.0]
    k = KernelIntegrand(_kernels.SCREW, p)
    a = integrate_interval(k, 0.0, 5.0, CFG.with_rate(3.0))
    b = integrate_interval(lambda x: k(x), 0.0, 5.0, CFG.with_rate(3.0))
    assert a.value == pytest.approx(b.value, rel=1e-13, abs=1e-15)
