"""Root finding for the screw and ribbon residuals, plus a Newton basin map.

Roots are found by scanning a uniform grid for sign changes and refining
each bracket with Brent's method, so the result never depends on an
initial guess. The damped Newton iteration exists only for the basin map.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from helixpair.geometry import HelicoidParams, HelixError
from helixpair.quadrature import QuadratureConfig
from helixpair.variational import EnergyWeights, ribbon_residual, screw_residual


class DegenerateWeights(HelixError):
    """``alpha = beta = 0``: every configuration is stationary."""


class Classification(enum.Enum):
    SYMMETRIC = "Symmetric"
    ASYMMETRIC = "Asymmetric"


class Outcome(enum.Enum):
    CONVERGED = "Converged"
    DIVERGED = "Diverged"
    MAX_ITER = "MaxIter"


@dataclass(frozen=True)
class SearchSpec:
    lo: float
    hi: float
    grid_n: int = 512
    root_tol: float = 1e-10
    dedupe_tol: float = 1e-8

    def __post_init__(self):
        if not self.lo < self.hi:
            raise HelixError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if self.grid_n < 2:
            raise HelixError("grid_n must be at least 2")

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.grid_n)


@dataclass(frozen=True)
class RootResult:
    value: float
    residual: float
    bracket: tuple[float, float]
    classification: Classification | None = None
    error_estimate: float = 0.0


@dataclass(frozen=True)
class BasinEntry:
    initial_guess: float
    converged_root: float | None
    iterations: int
    outcome: Outcome


@dataclass
class BasinMap:
    entries: list[BasinEntry] = field(default_factory=list)
    method: str = "damped Newton, central-difference slope (numerical experiment)"


def _map_ordered(f, xs, threads):
    if threads is None or threads <= 1 or len(xs) < 2:
        return [f(x) for x in xs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(f, xs))


def default_threads() -> int:
    return os.cpu_count() or 1


def find_roots_1d(f: Callable[[float], float], spec: SearchSpec,
                  threads: int | None = None) -> list[RootResult]:
    """Every sign change of ``f`` on ``spec``'s grid, refined by Brent's method.

    Grid points where ``f`` is exactly zero are roots themselves. Roots
    closer than ``dedupe_tol`` merge, keeping the smaller ``|f|``.
    """
    xs = spec.grid()
    fs = np.array(_map_ordered(f, list(xs), threads), dtype=float)
    found = []
    for i in range(xs.size):
        if fs[i] == 0.0:
            found.append(RootResult(float(xs[i]), 0.0, (float(xs[i]), float(xs[i]))))
    for i in range(xs.size - 1):
        a, b, fa, fb = xs[i], xs[i + 1], fs[i], fs[i + 1]
        if fa == 0.0 or fb == 0.0 or not (np.isfinite(fa) and np.isfinite(fb)):
            continue
        if (fa < 0) == (fb < 0):
            continue
        x = brentq(f, a, b, xtol=spec.root_tol, rtol=4 * np.finfo(float).eps)
        found.append(RootResult(float(x), float(f(x)), (float(a), float(b))))
    found.sort(key=lambda r: r.value)
    merged: list[RootResult] = []
    for r in found:
        if merged and r.value - merged[-1].value <= spec.dedupe_tol:
            if abs(r.residual) < abs(merged[-1].residual):
                merged[-1] = r
            continue
        merged.append(r)
    return merged


def _check_weights(w: EnergyWeights):
    if w.alpha == 0.0 and w.beta == 0.0:
        raise DegenerateWeights("alpha = beta = 0 makes every configuration stationary")


def classify(A: float, B: float, dedupe_tol: float) -> Classification:
    return Classification.SYMMETRIC if abs(B + A) <= dedupe_tol else Classification.ASYMMETRIC


def solve_screw_for_B(w: EnergyWeights, A: float, omega: float, spec: SearchSpec,
                      cfg: QuadratureConfig = QuadratureConfig(),
                      threads: int | None = None) -> list[RootResult]:
    """Outer radii ``B`` in the bracket at which the screw residual vanishes."""
    _check_weights(w)
    if not A < 0:
        raise HelixError(f"a screw needs A < 0, got {A}")
    if not spec.lo > 0:
        raise HelixError("the B bracket must lie in (0, inf)")

    def f(b):
        return screw_residual(HelicoidParams(A, b, omega), w, cfg).value

    out = []
    for r in find_roots_1d(f, spec, threads):
        res = screw_residual(HelicoidParams(A, r.value, omega), w, cfg)
        out.append(RootResult(r.value, res.value, r.bracket,
                              classify(A, r.value, spec.dedupe_tol),
                              4.0 * abs(w.alpha) * res.quad.error_estimate))
    return out


def solve_ribbon_for_omega(w: EnergyWeights, A: float, B: float, spec: SearchSpec,
                           cfg: QuadratureConfig = QuadratureConfig(),
                           threads: int | None = None) -> list[RootResult]:
    """Turn rates ``omega`` in the bracket at which the ribbon residual vanishes."""
    _check_weights(w)
    if not 0 < A < B:
        raise HelixError(f"a ribbon needs 0 < A < B, got A={A}, B={B}")
    if not spec.lo > 0:
        raise HelixError("the omega bracket must lie in (0, inf)")

    def f(om):
        return ribbon_residual(HelicoidParams(A, B, om), w, cfg).value

    out = []
    for r in find_roots_1d(f, spec, threads):
        res = ribbon_residual(HelicoidParams(A, B, r.value), w, cfg)
        out.append(RootResult(r.value, res.value, r.bracket, None,
                              4.0 * abs(w.alpha) * res.quad.error_estimate))
    return out


def newton_screw(w: EnergyWeights, A: float, omega: float, b0: float,
                 cfg: QuadratureConfig = QuadratureConfig(), max_iter: int = 100,
                 tol: float = 1e-10) -> BasinEntry:
    """Damped Newton on the screw residual in ``B`` starting from ``b0``.

    The step is halved (up to 30 times) while it would increase ``|residual|``
    or leave ``B > 0``.
    """

    def f(b):
        return screw_residual(HelicoidParams(A, b, omega), w, cfg).value

    b = float(b0)
    try:
        fb = f(b)
    except HelixError:
        return BasinEntry(b0, None, 0, Outcome.DIVERGED)
    for it in range(1, max_iter + 1):
        h = 1e-6 * max(1.0, abs(b))
        try:
            slope = (f(b + h) - f(b - h)) / (2.0 * h)
        except HelixError:
            return BasinEntry(b0, None, it, Outcome.DIVERGED)
        if slope == 0.0 or not math.isfinite(slope):
            return BasinEntry(b0, None, it, Outcome.DIVERGED)
        step = -fb / slope
        lam = 1.0
        for _ in range(30):
            trial = b + lam * step
            if trial > 0:
                ft = f(trial)
                if abs(ft) <= abs(fb):
                    break
            lam *= 0.5
        else:
            return BasinEntry(b0, None, it, Outcome.DIVERGED)
        moved = abs(trial - b)
        b, fb = trial, ft
        if moved <= tol * max(1.0, abs(b)) or fb == 0.0:
            return BasinEntry(b0, b, it, Outcome.CONVERGED)
    return BasinEntry(b0, None, max_iter, Outcome.MAX_ITER)


def basin_map(w: EnergyWeights, A: float, omega: float, initial_grid: SearchSpec,
              cfg: QuadratureConfig = QuadratureConfig(),
              threads: int | None = None) -> BasinMap:
    """Run :func:`newton_screw` from every point of ``initial_grid``.

    Converged entries are snapped to a root found by
    :func:`solve_screw_for_B` on the same bracket when one lies within
    ``dedupe_tol``; entries that converge elsewhere (outside the bracket)
    keep their own value.
    """
    _check_weights(w)
    if not A < 0:
        raise HelixError(f"a screw needs A < 0, got {A}")
    guesses = list(initial_grid.grid())
    entries = _map_ordered(lambda b0: newton_screw(w, A, omega, float(b0), cfg), guesses, threads)
    roots = [r.value for r in solve_screw_for_B(w, A, omega, initial_grid, cfg, threads)]
    snapped = []
    for e in entries:
        if e.outcome is Outcome.CONVERGED and roots:
            near = min(roots, key=lambda r: abs(r - e.converged_root))
            if abs(near - e.converged_root) <= initial_grid.dedupe_tol:
                e = BasinEntry(e.initial_guess, near, e.iterations, e.outcome)
        snapped.append(e)
    return BasinMap(snapped)
