"""Stationarity residuals of the Moebius-Plateau energy for helix pairs.

Every residual is ``lhs - rhs`` with the equation kept in its natural
arrangement, so a parameter triple is stationary exactly when the value is
zero. Integrals are over the whole real line; the integrands are even, so
only the half line is evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from helixpair import _kernels
from helixpair.geometry import HelicoidParams, Kind
from helixpair.quadrature import (
    IntegralResult,
    KernelIntegrand,
    QuadratureConfig,
    TailClass,
    integrate_interval,
    integrate_real_line,
)


@dataclass(frozen=True)
class EnergyWeights:
    """Weights of ``E = alpha * E_Moebius + beta * E_Plateau``."""

    alpha: float
    beta: float


@dataclass(frozen=True)
class ResidualValue:
    value: float
    lhs: float
    rhs: float
    quad: IntegralResult


def _pvec(params: HelicoidParams):
    return [params.A, params.B, params.omega]


def _offsets(params: HelicoidParams):
    a, b = params.A, params.B
    return a * a + b * b, (abs(a) - abs(b)) ** 2


def _inner_scale(params: HelicoidParams) -> float:
    return params.B - params.A


def _integrate(family: int, params: HelicoidParams, tail: TailClass, cfg: QuadratureConfig):
    f = KernelIntegrand(family, _pvec(params))
    return integrate_real_line(f, "even", tail, cfg.with_rate(params.omega),
                               inner_scale=_inner_scale(params))


def gamma_tail(params: HelicoidParams, curve_id: int) -> TailClass:
    """Tail model of the curve-``curve_id`` integrand (leading term ``-+s/(A^2+B^2+v^2)``)."""
    a, b = params.A, params.B
    c, m = _offsets(params)
    s = params.speed(2 if curve_id == 1 else 1)
    lead = -s if curve_id == 1 else s
    return TailClass(4, s * (2.0 * (abs(a) + abs(b)) + 2.0 * abs(a * b)), m, lead, c)


def screw_tail(params: HelicoidParams) -> TailClass:
    _, m = _offsets(params)
    return TailClass(4, 2.0 * abs(params.A + params.B), m)


def ribbon_tail(params: HelicoidParams) -> TailClass:
    # integrand = 1/D - (A+B)(1 - cos)/D^2 and 1/D = 1/(c+v^2) + 2AB cos/((c+v^2) D)
    a, b = params.A, params.B
    c, m = _offsets(params)
    return TailClass(4, 2.0 * abs(a * b) + 2.0 * abs(a + b), m, 1.0, c)


def plateau_rhs(params: HelicoidParams, beta: float) -> float:
    """``beta * (1/|gamma2'| - 1/|gamma1'|)``, the conormal side of the summed equations."""
    return beta * (1.0 / params.speed(2) - 1.0 / params.speed(1))


def gamma1_residual(params: HelicoidParams, w: EnergyWeights,
                    cfg: QuadratureConfig = QuadratureConfig()) -> ResidualValue:
    """First component of the stationarity equation at ``gamma1(0)`` for a screw."""
    params.require(Kind.SCREW)
    quad = _integrate(_kernels.GAMMA1, params, gamma_tail(params, 1), cfg)
    lhs = 2.0 * w.alpha * quad.value
    return ResidualValue(lhs - w.beta, lhs, w.beta, quad)


def gamma2_residual(params: HelicoidParams, w: EnergyWeights,
                    cfg: QuadratureConfig = QuadratureConfig()) -> ResidualValue:
    """First component at ``gamma2(0)``; identical for screws and ribbons."""
    quad = _integrate(_kernels.GAMMA2, params, gamma_tail(params, 2), cfg)
    lhs = 2.0 * w.alpha * quad.value
    return ResidualValue(lhs + w.beta, lhs, -w.beta, quad)


def screw_residual(params: HelicoidParams, w: EnergyWeights,
                   cfg: QuadratureConfig = QuadratureConfig()) -> ResidualValue:
    """Sum of the two curve equations, each divided by the other curve's speed."""
    params.require(Kind.SCREW)
    rhs = plateau_rhs(params, w.beta)
    if params.A + params.B == 0.0:
        quad = IntegralResult(0.0, 0.0, 0, True)
    else:
        quad = _integrate(_kernels.SCREW, params, screw_tail(params), cfg)
    lhs = 4.0 * w.alpha * quad.value
    return ResidualValue(lhs - rhs, lhs, rhs, quad)


def ribbon_residual(params: HelicoidParams, w: EnergyWeights,
                    cfg: QuadratureConfig = QuadratureConfig()) -> ResidualValue:
    """Summed equation for a ribbon, where the Frenet normal at ``gamma1`` points inward."""
    params.require(Kind.RIBBON)
    rhs = plateau_rhs(params, w.beta)
    quad = ribbon_integral(params, cfg)
    lhs = 4.0 * w.alpha * quad.value
    return ResidualValue(lhs - rhs, lhs, rhs, quad)


def ribbon_integral(params: HelicoidParams, cfg: QuadratureConfig = QuadratureConfig()) -> IntegralResult:
    """Integral of :func:`ribbon_integrand` over the real line."""
    params.require(Kind.RIBBON)
    return _integrate(_kernels.RIBBON, params, ribbon_tail(params), cfg)


def ribbon_integrand(params: HelicoidParams, v):
    params.require(Kind.RIBBON)
    out = _kernels.evaluate(_kernels.RIBBON, _pvec(params), v)
    return float(out) if out.ndim == 0 else out


def odd_integrand(params: HelicoidParams, component: str, v):
    """The y- or z-component integrand of the curve-1 equation; both are odd in ``v``."""
    family = {"y": _kernels.ODD_Y, "z": _kernels.ODD_Z}[component]
    out = _kernels.evaluate(family, _pvec(params), v)
    return float(out) if out.ndim == 0 else out


def odd_component_integrals(params: HelicoidParams, cfg: QuadratureConfig = QuadratureConfig(),
                            window: float | None = None):
    """Integrate the y- and z-component integrands over a symmetric window.

    No symmetry is assumed: the window ``[-X, X]`` is integrated directly
    in half-period cells (``X`` defaults to 64 half-periods, at least 50).
    """
    w = params.omega
    x = window if window is not None else max(50.0, 64.0 * math.pi / w)
    bp = [-(params.B - params.A), params.B - params.A]
    out = []
    for family in (_kernels.ODD_Y, _kernels.ODD_Z):
        f = KernelIntegrand(family, _pvec(params))
        out.append(integrate_interval(f, -x, x, cfg.with_rate(w), breakpoints=bp))
    return out[0], out[1]
