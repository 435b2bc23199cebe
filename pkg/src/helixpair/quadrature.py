"""Adaptive quadrature for oscillatory integrands with algebraic tails.

All cells are processed in batches through a 7/15-point Gauss-Kronrod rule
(compiled when available, see :mod:`helixpair._kernels`). Half-line
integrals are marched in cells of one half-period ``pi/omega`` until the
closed-form bound on the remaining tail is below tolerance.

Tails that decay only like ``1/v**2`` are handled by splitting off a
leading term ``L/(q + v**2)`` whose tail is integrated exactly; the
remainder must then be bounded by ``M/(m + v**2)**2``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Callable, Literal

import numpy as np

from helixpair import _kernels

_EPS = np.finfo(float).eps

Symmetry = Literal["even", "odd", "none"]


class BudgetExceeded(RuntimeWarning):
    """The cell budget ran out before the tolerance was met."""


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_cells: int = 1_000_000
    oscillation_rate: float | None = None

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("rel_tol and abs_tol must be positive")
        if self.max_cells < 1:
            raise ValueError("max_cells must be positive")
        if self.oscillation_rate is not None and not self.oscillation_rate > 0:
            raise ValueError("oscillation_rate must be positive")

    def with_rate(self, omega: float) -> "QuadratureConfig":
        return replace(self, oscillation_rate=omega)

    def tolerance(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class TailClass:
    """Decay model for ``|v|`` beyond the working window.

    ``f(v) - leading/(leading_offset + v**2)`` is bounded in magnitude by
    ``majorant / (offset + v**2)**(decay_exponent/2)``.
    """

    decay_exponent: int
    majorant: float
    offset: float = 0.0
    leading: float = 0.0
    leading_offset: float = 0.0

    def __post_init__(self):
        if self.decay_exponent not in (2, 4):
            raise ValueError("decay_exponent must be 2 or 4")
        if self.majorant < 0 or self.offset < 0 or self.leading_offset < 0:
            raise ValueError("majorant and offsets must be non-negative")

    def bound(self, x: float) -> float:
        """Upper bound on the integral of the remainder over ``[x, inf)``."""
        if self.majorant == 0.0:
            return 0.0
        m = self.offset
        if self.decay_exponent == 2:
            return self.majorant * inverse_square_integral(m, x)
        # Closed form loses accuracy once x**2 >> m; 1/(3x^3) dominates it.
        if m > 0 and x * x < 100.0 * m:
            r = math.sqrt(m)
            exact = (math.atan2(r, x) / r - x / (m + x * x)) / (2.0 * m)
            return self.majorant * exact
        return self.majorant / (3.0 * x**3)

    def cutoff(self, tol: float) -> float:
        """A point beyond which :meth:`bound` is at most ``tol``."""
        if self.majorant == 0.0:
            return 0.0
        p = self.decay_exponent
        return (self.majorant / ((p - 1) * tol)) ** (1.0 / (p - 1))

    def leading_integral(self, x0: float, x1: float = math.inf) -> float:
        if self.leading == 0.0:
            return 0.0
        q = self.leading_offset
        return self.leading * (inverse_square_integral(q, x0) - inverse_square_integral(q, x1))


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    cells_used: int
    converged: bool
    limit: str | None = None  # "budget" or "roundoff" when not converged


def inverse_square_integral(q: float, x: float) -> float:
    """Integral of ``1/(q + v**2)`` over ``[x, inf)`` for ``x > 0`` (or ``q > 0``)."""
    if math.isinf(x):
        return 0.0
    if q > 0:
        r = math.sqrt(q)
        return math.atan2(r, x) / r
    return 1.0 / x


class KernelIntegrand:
    """One of the built-in integrand families, evaluated by the kernel backend."""

    def __init__(self, family: int, params):
        self.family = family
        self.params = np.ascontiguousarray(params, dtype=float)

    def __call__(self, x):
        return _kernels.evaluate(self.family, self.params, x)

    def rule(self, a, b, fold):
        return _kernels.gk15(self.family, self.params, a, b, fold)


def _rule_for(f) -> Callable:
    rule = getattr(f, "rule", None)
    if rule is not None:
        return rule
    return lambda a, b, fold: _kernels.gk15_callable(f, a, b, fold)


class _Leaves:
    """Current partition of the integration domain with per-cell estimates."""

    def __init__(self, rule, fold: bool):
        self.rule = rule
        self.fold = fold
        self.a = np.empty(0)
        self.b = np.empty(0)
        self.res = np.empty(0)
        self.err = np.empty(0)
        self.rab = np.empty(0)

    def __len__(self):
        return self.a.size

    def add(self, edges) -> None:
        edges = np.asarray(edges, dtype=float)
        a, b = edges[:-1], edges[1:]
        res, err, rab = self.rule(a, b, self.fold)
        self._append(a, b, res, err, rab)

    def _append(self, a, b, res, err, rab):
        self.a = np.concatenate([self.a, a])
        self.b = np.concatenate([self.b, b])
        self.res = np.concatenate([self.res, res])
        self.err = np.concatenate([self.err, err])
        self.rab = np.concatenate([self.rab, rab])

    def value(self) -> float:
        return float(np.sum(self.res))

    def error(self) -> float:
        return float(np.sum(self.err))

    def refine(self, tol: float, max_cells: int) -> str:
        """Bisect the worst cells until the summed error is at most ``tol``.

        Returns ``"ok"``, ``"roundoff"`` (nothing left worth bisecting) or
        ``"budget"``.
        """
        while True:
            total = self.error()
            if total <= tol:
                return "ok"
            mid = 0.5 * (self.a + self.b)
            width = self.b - self.a
            eligible = (self.err > 1.01 * 50.0 * _EPS * self.rab) & (
                width > 1e-13 * np.maximum(1.0, np.abs(mid))
            )
            idx = np.flatnonzero(eligible)
            if idx.size == 0:
                return "roundoff"
            order = idx[np.argsort(-self.err[idx], kind="stable")]
            need = total - 0.5 * tol
            k = int(np.searchsorted(np.cumsum(self.err[order]), need)) + 1
            k = min(k, order.size)
            room = max_cells - len(self)
            if room <= 0:
                return "budget"
            k = min(k, room)
            sel = np.sort(order[:k])
            keep = np.ones(len(self), dtype=bool)
            keep[sel] = False
            sa, sb, sm = self.a[sel], self.b[sel], mid[sel]
            ca = np.concatenate([sa, sm])
            cb = np.concatenate([sm, sb])
            res, err, rab = self.rule(ca, cb, self.fold)
            for name in ("a", "b", "res", "err", "rab"):
                setattr(self, name, getattr(self, name)[keep])
            self._append(ca, cb, res, err, rab)

    def sum_from(self, x: float) -> float:
        return float(np.sum(self.res[self.a >= x]))


def _warn_budget(where: str):
    warnings.warn(f"{where}: cell budget exhausted before tolerance", BudgetExceeded, stacklevel=3)


def _initial_edges(a: float, b: float, cfg: QuadratureConfig, breakpoints=()) -> np.ndarray:
    if cfg.oscillation_rate:
        h = math.pi / cfg.oscillation_rate
        n = max(1, math.ceil((b - a) / h - 1e-12))
        n = min(n, cfg.max_cells)
        edges = np.linspace(a, b, n + 1)
    else:
        edges = np.array([a, b], dtype=float)
    extra = [x for x in breakpoints if a < x < b]
    if extra:
        edges = np.unique(np.concatenate([edges, extra]))
    return edges


def _settle(leaves: _Leaves, cfg: QuadratureConfig, offset: float = 0.0, share: float = 1.0):
    """Refine until the error meets the (value-dependent) tolerance."""
    status = "ok"
    for _ in range(8):
        tol = share * cfg.tolerance(leaves.value() + offset)
        status = leaves.refine(tol, cfg.max_cells)
        if status != "ok":
            break
        if leaves.error() <= share * cfg.tolerance(leaves.value() + offset):
            break
    return status


def integrate_interval(f, a: float, b: float, cfg: QuadratureConfig = QuadratureConfig(),
                       breakpoints=()) -> IntegralResult:
    """Integrate a vectorised ``f`` over ``[a, b]``.

    With ``cfg.oscillation_rate`` set the interval starts out split into
    half-period cells.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    leaves = _Leaves(_rule_for(f), fold=False)
    leaves.add(_initial_edges(a, b, cfg, breakpoints))
    status = _settle(leaves, cfg)
    if status == "budget":
        _warn_budget("integrate_interval")
    value, err = leaves.value(), leaves.error()
    return _result(value, err, len(leaves), status == "budget", cfg)


def _result(value, err, cells, budget, cfg):
    if budget:
        return IntegralResult(value, err, cells, False, "budget")
    if err <= cfg.tolerance(value):
        return IntegralResult(value, err, cells, True)
    return IntegralResult(value, err, cells, False, "roundoff")


def _geometric_edges(start: float, stop: float, step: float) -> list[float]:
    edges = [start]
    x = start
    while x < stop:
        x = x + max(step, abs(x))
        edges.append(x)
    return edges


def integrate_half_line(f, lower: float, tail: TailClass, cfg: QuadratureConfig = QuadratureConfig(),
                        fold: bool = False, inner_scale: float | None = None) -> IntegralResult:
    """Integrate ``f`` over ``[lower, inf)``; ``fold`` integrates its even part instead."""
    leaves = _Leaves(_rule_for(f), fold)
    if cfg.oscillation_rate:
        h = math.pi / cfg.oscillation_rate
        first = [lower + k * h for k in range(33)]
        if inner_scale is not None and 0 < inner_scale < h:
            x, pre = inner_scale, [lower]
            while x < h:
                pre.append(lower + x)
                x *= 2.0
            first = pre + first[1:]
    else:
        h = None
        step = inner_scale or 1.0
        first = _geometric_edges(lower, lower + 32.0 * step, step)
    leaves.add(first)
    x_end = first[-1]
    last_start = first[-2]
    budget = False

    while True:
        lead = tail.leading_integral(x_end)
        status = _settle(leaves, cfg, offset=lead, share=0.5)
        budget = budget or status == "budget"
        value = leaves.value() + lead
        tol = cfg.tolerance(value)
        bound = tail.bound(x_end)
        last = abs(leaves.sum_from(last_start) - tail.leading_integral(last_start, x_end))
        if (bound <= 0.25 * tol and last <= 0.25 * tol) or budget:
            break
        target = max(tail.cutoff(0.125 * tol), x_end)
        room = cfg.max_cells - len(leaves)
        if h is not None:
            n_new = max(1, math.ceil((target - x_end) / h))
            if n_new > room:
                n_new, budget = max(room, 0), True
            if n_new == 0:
                break
            edges = x_end + h * np.arange(n_new + 1)
        else:
            edges = np.asarray(_geometric_edges(x_end, max(target, x_end * 1.5), 1.0))
            if edges.size - 1 > room:
                budget = True
                break
        leaves.add(edges)
        last_start, x_end = float(edges[-2]), float(edges[-1])

    lead = tail.leading_integral(x_end)
    status = _settle(leaves, cfg, offset=lead, share=0.5)
    budget = budget or status == "budget"
    value = leaves.value() + lead
    err = leaves.error() + tail.bound(x_end)
    if budget:
        _warn_budget("integrate_half_line")
    return _result(value, err, len(leaves), budget, cfg)


def integrate_real_line(f, symmetry: Symmetry, tail: TailClass,
                        cfg: QuadratureConfig = QuadratureConfig(),
                        inner_scale: float | None = None) -> IntegralResult:
    """Integrate ``f`` over the whole real line.

    ``symmetry="odd"`` returns exactly zero without evaluating ``f``;
    ``"even"`` doubles the half-line integral; ``"none"`` doubles the
    half-line integral of the even part ``(f(v) + f(-v))/2``. ``tail``
    describes that even part.
    """
    if symmetry == "odd":
        return IntegralResult(0.0, 0.0, 0, True)
    if symmetry not in ("even", "none"):
        raise ValueError(f"unknown symmetry {symmetry!r}")
    half_cfg = replace(cfg, abs_tol=0.5 * cfg.abs_tol)
    r = integrate_half_line(f, 0.0, tail, half_cfg, fold=symmetry == "none",
                            inner_scale=inner_scale)
    return IntegralResult(2.0 * r.value, 2.0 * r.error_estimate, r.cells_used, r.converged, r.limit)
