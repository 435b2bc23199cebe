"""Link Moebius energy of a helix pair and its L2 gradient along either helix.

The energy of two infinite parallel helices diverges, so only the energy of
the window ``[-T, T] x [-T, T]`` is computed; ``density`` divides it by the
window length. The gradient integrals converge and are evaluated exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from helixpair import _kernels
from helixpair.geometry import HelicoidParams, HelixError, frame_at
from helixpair.quadrature import (
    KernelIntegrand,
    QuadratureConfig,
    TailClass,
    integrate_interval,
    integrate_real_line,
)


@dataclass(frozen=True)
class EnergyWindow:
    T: float

    def __post_init__(self):
        if not self.T > 0:
            raise HelixError(f"window half-width must be positive, got {self.T}")


def project_normal(tangent, d):
    """Component of ``d`` orthogonal to the unit vector ``tangent``."""
    tangent = np.asarray(tangent, dtype=float)
    d = np.asarray(d, dtype=float)
    return d - np.dot(d, tangent) * tangent


def gradient_at(params: HelicoidParams, curve_id: int, u: float,
                cfg: QuadratureConfig = QuadratureConfig()) -> np.ndarray:
    """The L2 gradient of the link energy at ``gamma_curve_id(u)``.

    Integrates over the other curve in the shifted variable ``w = v - u``,
    one Cartesian component at a time.
    """
    frame = frame_at(params, curve_id, u)
    rs = params.radius(curve_id)
    ro = params.radius(3 - curve_id)
    s_other = params.speed(3 - curve_id)
    c, m = rs * rs + ro * ro, (abs(rs) - abs(ro)) ** 2
    cfg = cfg.with_rate(params.omega)
    out = np.empty(3)
    for k in range(3):
        nk = frame.frenet_normal[k]
        p = [rs, ro, params.omega, u, *frame.tangent, *frame.frenet_normal, float(k)]
        tail = TailClass(
            4,
            s_other * (4.0 * (abs(rs) + abs(ro)) + 4.0 * abs(nk) * abs(rs * ro)),
            m,
            -2.0 * nk * s_other,
            c,
        )
        f = KernelIntegrand(_kernels.GRADIENT, p)
        out[k] = integrate_real_line(f, "none", tail, cfg, inner_scale=abs(ro - rs)).value
    return out


def _inner_breakpoints(u: float, scale: float, T: float):
    pts = []
    x = scale
    while x < 1.0 and len(pts) < 60:
        pts.extend([u - x, u + x])
        x *= 2.0
    return [p for p in pts + [u] if -T < p < T]


def truncated_link_energy(params: HelicoidParams, window: EnergyWindow,
                          cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """Double integral of ``|g1'||g2'| / |g1(u) - g2(v)|^2`` over the window.

    Iterated: the outer integral over ``u`` calls a full adaptive inner
    integral over ``v`` at every node.
    """
    if params.A == params.B:
        raise HelixError("the two helices coincide")
    a, b, w, T = params.A, params.B, params.omega, window.T
    scale = params.speed(1) * params.speed(2)
    inner_cfg = replace(cfg.with_rate(w), rel_tol=0.1 * cfg.rel_tol, abs_tol=0.1 * cfg.abs_tol)
    width = abs(b - a)

    def inner(us):
        us = np.asarray(us, dtype=float)
        vals = np.empty(us.shape)
        for i, u in enumerate(us.flat):
            f = KernelIntegrand(_kernels.ENERGY, [a, b, w, u, scale])
            vals.flat[i] = integrate_interval(
                f, -T, T, inner_cfg, breakpoints=_inner_breakpoints(u, width, T)
            ).value
        return vals

    return integrate_interval(inner, -T, T, cfg.with_rate(w)).value


def link_energy_density(params: HelicoidParams, window: EnergyWindow,
                        cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """Truncated energy per unit parameter length, ``energy / (2T)``."""
    return truncated_link_energy(params, window, cfg) / (2.0 * window.T)
