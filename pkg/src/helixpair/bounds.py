"""Numerical checks of the estimates behind the ribbon non-existence result.

Each function evaluates one closed form or inequality from the argument
that the ribbon integral is positive, so that the argument can be audited
value by value. :func:`positivity_certificate` runs the case analysis for
one parameter triple.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from helixpair import _kernels
from helixpair.geometry import HelicoidParams, Kind
from helixpair.quadrature import (
    KernelIntegrand,
    QuadratureConfig,
    TailClass,
    integrate_half_line,
    integrate_interval,
)
from helixpair.variational import _pvec, ribbon_integral, ribbon_integrand, ribbon_tail


@dataclass(frozen=True)
class MaclaurinCoeffs:
    """``integrand(v) ~ c0 + c2 v^2`` near ``v = 0``."""

    c0: float
    c2: float


def maclaurin_coeffs(params: HelicoidParams) -> MaclaurinCoeffs:
    params.require(Kind.RIBBON)
    a, b, w = params.A, params.B, params.omega
    d = b - a
    return MaclaurinCoeffs(1.0 / d**2, -(2.0 + (a + b + 2.0 * a * b) * w**2) / (2.0 * d**4))


def maclaurin_fd(params: HelicoidParams, h: float | None = None) -> MaclaurinCoeffs:
    """``c0`` and ``c2`` from central differences at ``h`` and ``h/2`` with Richardson.

    The default step is ``1e-3`` shrunk to a twentieth of the ribbon width
    and of ``1/omega``, the two length scales of the integrand.
    """
    if h is None:
        h = min(1e-3, 0.05 * (params.B - params.A), 0.05 / params.omega)
    f = lambda v: ribbon_integrand(params, v)  # noqa: E731
    f0 = f(0.0)

    def second(step):
        return (f(step) - 2.0 * f0 + f(-step)) / (2.0 * step * step)

    c2 = (4.0 * second(0.5 * h) - second(h)) / 3.0
    return MaclaurinCoeffs(f0, c2)


@dataclass(frozen=True)
class MaclaurinCheck:
    closed_form: MaclaurinCoeffs
    finite_difference: MaclaurinCoeffs
    c0_exact: bool
    c2_rel_diff: float
    agrees: bool  # c2 within 1e-4 relative

    def describe(self) -> str:
        if self.agrees:
            return (f"c2 closed form {self.closed_form.c2:.12g} matches finite-difference "
                    f"{self.finite_difference.c2:.12g} (rel diff {self.c2_rel_diff:.3g})")
        return (f"DISCREPANCY: closed-form c2 {self.closed_form.c2:.12g} vs finite-difference "
                f"{self.finite_difference.c2:.12g} (rel diff {self.c2_rel_diff:.3g})")


def check_maclaurin(params: HelicoidParams) -> MaclaurinCheck:
    closed_form = maclaurin_coeffs(params)
    fd = maclaurin_fd(params)
    rel = abs(closed_form.c2 - fd.c2) / abs(fd.c2)
    # the numerator at v = 0 cancels terms of size A + B and A^2 + B^2 down to
    # (B - A)^2, so rounding is amplified by this factor
    a, b = params.A, params.B
    cond = (a * a + b * b + a + b) / (b - a) ** 2
    c0_ok = abs(fd.c0 - closed_form.c0) <= 8.0 * np.finfo(float).eps * cond * closed_form.c0
    return MaclaurinCheck(closed_form, fd, bool(c0_ok), rel, rel <= 1e-4)


@dataclass(frozen=True)
class QuarterBound:
    value: float
    cubic_term: float  # the bound with the 1/(4(B-A)^2) term dropped
    frequency_form: float  # -(1 + omega^2) / (192 (B-A)^4)
    steps: tuple[bool, bool, bool]  # each ">=" in the chain, left to right
    hypothesis: bool  # (B - A) > omega > 1

    @property
    def above_minus_1_96(self) -> bool:
        return self.value >= -1.0 / 96.0


def quarter_interval_bound(params: HelicoidParams) -> QuarterBound:
    """Integral of the quadratic Maclaurin polynomial over ``[0, 1/4]``, with its chain."""
    params.require(Kind.RIBBON)
    a, b, w = params.A, params.B, params.omega
    d = b - a
    coeff = 2.0 + (a + b + 2.0 * a * b) * w**2
    value = 1.0 / (4.0 * d**2) - coeff / (384.0 * d**4)
    cubic = -coeff / (384.0 * d**4)
    freq = -(1.0 + w**2) / (192.0 * d**4)
    steps = (value >= cubic, cubic >= freq, freq > -1.0 / 96.0)
    return QuarterBound(value, cubic, freq, steps, d > w > 1.0)


def quarter_interval_integral(params: HelicoidParams,
                              cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """The true integral of the ribbon integrand over ``[0, 1/4]``."""
    f = lambda v: ribbon_integrand(params, v)  # noqa: E731
    return integrate_interval(f, 0.0, 0.25, cfg.with_rate(params.omega)).value


def riemann_bound(omega: float) -> float:
    """Riemann-sum estimate of the negative contribution where ``cos(omega v) < 0``, ``v < 1``.

    Negative only for ``omega > pi (22 + sqrt(1540)) / 16`` (about 12.03),
    with minimum near ``omega = 14.83``; behaves like ``-1/(3 omega^4)``.
    """
    if not omega > 0:
        raise ValueError("omega must be positive")
    pi = math.pi
    return (omega * (pi + 2.0 * omega) * (33.0 * pi**2 + 22.0 * pi * omega - 8.0 * omega**2)
            / (3.0 * (pi**2 + 4.0 * omega**4) ** 2))


def minimize_riemann_bound(lo: float = 1.0, hi: float = 100.0, scan_n: int = 10_000):
    """Global minimum of :func:`riemann_bound` on ``[lo, hi]``: scan, then golden section."""
    if not (1.0 <= lo < hi):
        raise ValueError("need 1 <= lo < hi")
    xs = np.linspace(lo, hi, scan_n)
    vals = np.array([riemann_bound(x) for x in xs])
    i = int(np.argmin(vals))
    if i == 0 or i == xs.size - 1:
        return float(xs[i]), float(vals[i])
    res = minimize_scalar(riemann_bound, bracket=(xs[i - 1], xs[i], xs[i + 1]),
                          method="golden", tol=1e-12)
    if res.fun <= vals[i]:
        return float(res.x), float(res.fun)
    return float(xs[i]), float(vals[i])


def negative_part_near_axis(params: HelicoidParams, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """Integral of ``min(integrand, 0)`` over ``{v in [0,1] : cos(omega v) < 0}``."""
    w = params.omega

    def f(v):
        v = np.asarray(v, dtype=float)
        g = ribbon_integrand(params, v)
        return np.where(np.cos(w * v) < 0, np.minimum(g, 0.0), 0.0)

    # breakpoints at the zeros of cos so the indicator never cuts a cell
    zeros = [(k + 0.5) * math.pi / w for k in range(int(w / math.pi + 1))]
    return integrate_interval(f, 0.0, 1.0, QuadratureConfig(cfg.rel_tol, cfg.abs_tol, cfg.max_cells),
                              breakpoints=zeros).value


TAIL_CLOSED_FORM = (4.0 + 3.0 * math.pi - 6.0 * math.atan(0.5)) / 32.0


@dataclass(frozen=True)
class TailCheck:
    value: float
    numeric: float
    abs_diff: float
    at_least_three_tenths: bool


def tail_closed_form(cfg: QuadratureConfig = QuadratureConfig(rel_tol=1e-12, abs_tol=1e-14)) -> TailCheck:
    """Closed form of ``int_1^inf (v^2 - 1)/(4 + v^2)^2 dv`` and its quadrature cross-check."""
    f = lambda v: (v * v - 1.0) / (4.0 + v * v) ** 2  # noqa: E731
    # (v^2-1)/(4+v^2)^2 = 1/(4+v^2) - 5/(4+v^2)^2
    numeric = integrate_half_line(f, 1.0, TailClass(4, 5.0, 4.0, 1.0, 4.0), cfg).value
    value = TAIL_CLOSED_FORM
    return TailCheck(value, numeric, abs(value - numeric), value >= 0.3)


def ribbon_tail_integral(params: HelicoidParams, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """Integral of the ribbon integrand over ``[1, inf)``."""
    f = KernelIntegrand(_kernels.RIBBON, _pvec(params))
    return integrate_half_line(f, 1.0, ribbon_tail(params), cfg.with_rate(params.omega)).value


class Extremum(enum.Enum):
    SUM_SQUARES = "SumSquares"  # inf A^2 - A + B^2 - B
    COS_COEFF = "CosCoeff"  # sup A + B - 2AB
    SUM_PRODUCT = "SumProduct"  # inf (A + B)(A + B - 2)


def triangle_grid(grid_n: int, margin: float = 1e-4):
    """Points of ``{0 < A < B, A + B < 2}`` at distance at least ``margin`` from its edges."""
    if grid_n < 100:
        raise ValueError("grid_n must be at least 100")
    a = np.linspace(margin, 1.0 - 1.5 * margin, grid_n)
    t = np.linspace(0.0, 1.0, grid_n)
    lo = a[:, None] + margin
    hi = 2.0 - margin - a[:, None]
    b = lo + (hi - lo) * t[None, :]
    return np.broadcast_to(a[:, None], b.shape), b


def triangle_extrema_oracle(which: Extremum, grid_n: int = 2000, margin: float = 1e-4) -> float:
    A, B = triangle_grid(grid_n, margin)
    if which is Extremum.SUM_SQUARES:
        return float(np.min(A * A - A + B * B - B))
    if which is Extremum.COS_COEFF:
        return float(np.max(A + B - 2.0 * A * B))
    if which is Extremum.SUM_PRODUCT:
        return float(np.min((A + B) * (A + B - 2.0)))
    raise ValueError(which)


class Case(enum.Enum):
    NONPOSITIVE_COS_COEFF = "NonpositiveCosCoeff"
    SUM_AT_LEAST_TWO = "SumAtLeastTwo"
    LOW_FREQUENCY = "LowFrequency"
    WIDE_BAND = "WideBand"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Certificate:
    case: Case
    details: dict = field(default_factory=dict)
    numeric_integral_sign: str | None = None  # "Positive" / "Negative"


def classify_case(params: HelicoidParams) -> Case:
    a, b, w = params.A, params.B, params.omega
    if a + b - 2.0 * a * b <= 0:
        return Case.NONPOSITIVE_COS_COEFF
    if a + b >= 2:
        return Case.SUM_AT_LEAST_TWO
    if w <= 1:
        return Case.LOW_FREQUENCY
    if w < b - a:
        return Case.WIDE_BAND
    return Case.INCONCLUSIVE


def positivity_certificate(params: HelicoidParams, cfg: QuadratureConfig = QuadratureConfig(),
                           v_max: float = 10.0, v_samples: int = 20001) -> Certificate:
    """Run the case analysis for one ribbon and attach numeric evidence.

    The pointwise cases report the minimum of the integrand on a v-grid
    over ``[0, v_max]``; every case reports the sign of the full integral.
    """
    params.require(Kind.RIBBON)
    a, b, w = params.A, params.B, params.omega
    case = classify_case(params)
    details = {
        "cos_coeff": a + b - 2.0 * a * b,
        "sum": a + b,
        "omega": w,
        "width": b - a,
    }
    if case in (Case.NONPOSITIVE_COS_COEFF, Case.SUM_AT_LEAST_TWO, Case.LOW_FREQUENCY):
        v = np.linspace(0.0, v_max, v_samples)
        details["integrand_min"] = float(np.min(ribbon_integrand(params, v)))
    if case is Case.WIDE_BAND:
        q = quarter_interval_bound(params)
        details["quarter_bound"] = q.value
        details["riemann_bound"] = riemann_bound(w)
        details["tail_bound"] = TAIL_CLOSED_FORM
        details["assembled_bound"] = q.value + riemann_bound(w) + TAIL_CLOSED_FORM
        # the Riemann estimate is positive for omega below ~12, where it cannot
        # bound a negative contribution; clamping it at zero keeps the sum honest
        details["assembled_bound_clamped"] = q.value + min(riemann_bound(w), 0.0) + TAIL_CLOSED_FORM
    integral = ribbon_integral(params, cfg)
    details["integral"] = integral.value
    details["integral_error"] = integral.error_estimate
    sign = "Positive" if integral.value > 0 else "Negative"
    return Certificate(case, details, sign)


@dataclass
class BoundsReport:
    checks: list[dict] = field(default_factory=list)
    findings: list[dict] = field(default_factory=list)

    def add(self, name: str, passed: bool, **values):
        self.checks.append({"name": name, "passed": bool(passed), **values})

    def note(self, name: str, holds: bool, **values):
        """Record an intermediate step that is reported but not required."""
        self.findings.append({"name": name, "holds": bool(holds), **values})

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)


def verify_bounds(params: HelicoidParams | None = None) -> BoundsReport:
    """Evaluate every closed form and inequality in the positivity argument.

    ``params`` is a ribbon used for the parameter-dependent checks; the
    default ``A=0.2, B=1.7, omega=1.2`` satisfies ``B - A > omega > 1``.
    Intermediate steps of the quarter-interval chain go to ``findings``:
    the middle step needs ``A + B + 2AB <= 2``, which the triangle does not
    guarantee.
    """
    params = params or HelicoidParams(0.2, 1.7, 1.2)
    rep = BoundsReport()

    mc = check_maclaurin(params)
    rep.add("maclaurin_c0", mc.c0_exact, closed_form=mc.closed_form.c0, finite_difference=mc.finite_difference.c0)
    rep.add("maclaurin_c2", mc.agrees, closed_form=mc.closed_form.c2, finite_difference=mc.finite_difference.c2,
            rel_diff=mc.c2_rel_diff)

    q = quarter_interval_bound(params)
    true_q = quarter_interval_integral(params)
    rep.add("quarter_interval_above_minus_1_96", q.hypothesis and q.above_minus_1_96
            and q.frequency_form > -1.0 / 96.0, value=q.value, frequency_form=q.frequency_form)
    for i, (step, holds) in enumerate(zip(("drop_leading_term", "sup_cos_coeff", "frequency_form"),
                                          q.steps)):
        rep.note(f"quarter_chain_{i + 1}_{step}", holds, value=q.value,
                 dropped_leading=q.cubic_term, frequency_form=q.frequency_form)
    rep.add("quarter_interval_lower_bound", true_q >= q.value, bound=q.value, integral=true_q)

    w_star, r_min = minimize_riemann_bound(1.0, 100.0)
    rep.add("riemann_minimum", abs(w_star - 14.8) <= 0.3 and abs(r_min / -1.77e-6 - 1) <= 0.05,
            omega_star=w_star, value=r_min)
    big = 1e4
    rep.add("riemann_large_omega", abs(big**4 * riemann_bound(big) + 1.0 / 3.0) < 1e-3,
            scaled=big**4 * riemann_bound(big))

    tc = tail_closed_form()
    rep.add("tail_closed_form", tc.abs_diff <= 1e-9 and tc.at_least_three_tenths,
            value=tc.value, numeric=tc.numeric, abs_diff=tc.abs_diff)

    targets = {Extremum.SUM_SQUARES: -0.5, Extremum.COS_COEFF: 2.0, Extremum.SUM_PRODUCT: -1.0}
    for which, target in targets.items():
        got = triangle_extrema_oracle(which)
        rep.add(f"extremum_{which.value}", abs(got - target) <= 1e-3, value=got, expected=target)

    total = q.value + r_min + tc.value
    rep.add("assembled_bound_positive", total > 0, quarter=q.value, riemann=r_min, tail=tc.value,
            total=total)
    return rep
