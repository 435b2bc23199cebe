"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 a quadrature ran out of cells.
Reals are written with 12 significant digits (9 in OBJ files) so that
identical arguments give byte-identical output.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
import warnings

import numpy as np

from helixpair import _kernels
from helixpair.bounds import (
    Extremum,
    minimize_riemann_bound,
    positivity_certificate,
    tail_closed_form,
    triangle_extrema_oracle,
    verify_bounds,
)
from helixpair.geometry import HelicoidParams, HelixError, MeshSpec, helicoid_mesh
from helixpair.mobius import EnergyWindow, gradient_at, truncated_link_energy
from helixpair.quadrature import BudgetExceeded, QuadratureConfig
from helixpair.solver import (
    SearchSpec,
    _map_ordered,
    basin_map,
    default_threads,
    solve_ribbon_for_omega,
    solve_screw_for_B,
)
from helixpair.variational import (
    EnergyWeights,
    gamma1_residual,
    gamma2_residual,
    ribbon_integrand,
    ribbon_residual,
    screw_residual,
)

EXIT_OK, EXIT_USAGE, EXIT_NONCONVERGED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _finite(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"not a finite real: {text!r}")
    return x


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return n


def fmt(x) -> str:
    return format(float(x), ".12g")


def _round(obj):
    """Round every float to 12 significant digits for stable JSON."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return float(fmt(x)) if math.isfinite(x) else str(x)
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_round(v) for v in obj]
    return obj


def _json(command: str, config: dict, results) -> str:
    doc = {"command": command, "config": _round(config), "results": _round(results)}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _csv(header, rows) -> str:
    out = io.StringIO()
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(c if isinstance(c, str) else fmt(c) for c in row) + "\n")
    return out.getvalue()


# --- argument groups -------------------------------------------------------

def _weights(p, alpha=None, beta=None):
    p.add_argument("--alpha", type=_finite, required=alpha is None, default=alpha)
    p.add_argument("--beta", type=_finite, required=beta is None, default=beta)


def _shape(p, need=("A", "B", "omega"), defaults=None):
    defaults = defaults or {}
    for name in ("A", "B", "omega"):
        if name in need:
            p.add_argument(f"--{name}", dest=name, type=_finite,
                           required=name not in defaults, default=defaults.get(name))


def _quad(p):
    p.add_argument("--rel-tol", type=_finite, default=QuadratureConfig.rel_tol)
    p.add_argument("--abs-tol", type=_finite, default=QuadratureConfig.abs_tol)
    p.add_argument("--max-cells", type=_positive_int, default=QuadratureConfig.max_cells)


def _search(p, lo_name, hi_name, lo=None, hi=None):
    p.add_argument(f"--{lo_name}", type=_finite, required=lo is None, default=lo)
    p.add_argument(f"--{hi_name}", type=_finite, required=hi is None, default=hi)
    p.add_argument("--grid", type=_positive_int, default=SearchSpec.grid_n)
    p.add_argument("--root-tol", type=_finite, default=SearchSpec.root_tol)
    p.add_argument("--dedupe-tol", type=_finite, default=SearchSpec.dedupe_tol)


def _output(p, formats, default):
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--format", choices=formats, default=default)


def _threads(p):
    p.add_argument("--threads", type=_positive_int, default=default_threads())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="helixpair", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("screw-solve", help="solve the screw equation for B")
    _weights(p); _shape(p, ("A", "omega")); _search(p, "b-min", "b-max"); _quad(p); _threads(p)
    _output(p, ["json"], "json")

    p = sub.add_parser("ribbon-solve", help="solve the ribbon equation for omega")
    _weights(p); _shape(p, ("A", "B")); _search(p, "omega-min", "omega-max"); _quad(p); _threads(p)
    _output(p, ["json"], "json")

    p = sub.add_parser("residual", help="evaluate one stationarity residual")
    p.add_argument("kind", choices=["screw", "ribbon", "gamma1", "gamma2"])
    _weights(p); _shape(p); _quad(p); _output(p, ["json"], "json")

    p = sub.add_parser("gradient", help="L2 gradient of the link energy at a boundary point")
    _shape(p); p.add_argument("--curve", type=int, choices=[1, 2], default=1)
    p.add_argument("--u", type=_finite, default=0.0)
    _quad(p); _output(p, ["json"], "json")

    p = sub.add_parser("energy", help="window-truncated link energy")
    _shape(p); p.add_argument("--T", dest="T", type=_finite, required=True)
    _quad(p); _output(p, ["json"], "json")

    p = sub.add_parser("basin", help="damped-Newton basin map for the screw equation in B")
    _weights(p); _shape(p, ("A", "omega")); _search(p, "b-min", "b-max"); _quad(p); _threads(p)
    _output(p, ["csv", "json"], "csv")

    p = sub.add_parser("verify-bounds", help="check every estimate of the ribbon argument")
    _shape(p, defaults={"A": 0.2, "B": 1.7, "omega": 1.2}); _output(p, ["text", "json"], "text")

    p = sub.add_parser("certificate", help="case analysis for one ribbon")
    _shape(p); _quad(p); _output(p, ["json", "text"], "json")

    p = sub.add_parser("extrema", help="grid extrema over the triangle 0<A<B, A+B<2")
    p.add_argument("--grid", type=_positive_int, default=2000)
    p.add_argument("--margin", type=_finite, default=1e-4)
    _output(p, ["text", "json"], "text")

    p = sub.add_parser("riemann-min", help="minimum of the Riemann-sum bound")
    p.add_argument("--omega-min", type=_finite, default=1.0)
    p.add_argument("--omega-max", type=_finite, default=100.0)
    _output(p, ["text", "json"], "text")

    p = sub.add_parser("bounds-tail", help="closed form of the tail bound")
    _output(p, ["text", "json"], "text")

    p = sub.add_parser("sweep", help="residual along a one-parameter line")
    p.add_argument("--kind", choices=["screw", "ribbon", "gamma1", "gamma2"], required=True)
    p.add_argument("--param", choices=["A", "B", "omega"], required=True)
    p.add_argument("--min", dest="sweep_min", type=_finite, required=True)
    p.add_argument("--max", dest="sweep_max", type=_finite, required=True)
    p.add_argument("--n", dest="sweep_n", type=_positive_int, default=101)
    _weights(p)
    for name in ("A", "B", "omega"):
        p.add_argument(f"--{name}", dest=name, type=_finite, default=None)
    _quad(p); _threads(p); _output(p, ["csv", "json"], "csv")

    p = sub.add_parser("mesh", help="OBJ mesh of the helicoidal strip")
    _shape(p)
    p.add_argument("--t-min", type=_finite, required=True)
    p.add_argument("--t-max", type=_finite, required=True)
    p.add_argument("--ns", type=_positive_int, default=33)
    p.add_argument("--nt", type=_positive_int, default=101)
    _output(p, ["obj"], "obj")

    p = sub.add_parser("integrand-plot", help="samples of the ribbon integrand")
    _shape(p)
    p.add_argument("--v-min", type=_finite, default=-2.0)
    p.add_argument("--v-max", type=_finite, default=2.0)
    p.add_argument("--n", dest="n", type=_positive_int, default=2001)
    _output(p, ["csv"], "csv")
    return parser


# --- commands --------------------------------------------------------------

def _cfg(ns) -> QuadratureConfig:
    return QuadratureConfig(ns.rel_tol, ns.abs_tol, ns.max_cells)


def _spec(ns, lo, hi) -> SearchSpec:
    return SearchSpec(lo, hi, ns.grid, ns.root_tol, ns.dedupe_tol)


def _roots_json(roots):
    return [{"value": r.value, "residual": r.residual,
             "classification": r.classification.value if r.classification else None}
            for r in roots]


def cmd_screw_solve(ns):
    roots = solve_screw_for_B(EnergyWeights(ns.alpha, ns.beta), ns.A, ns.omega,
                              _spec(ns, ns.b_min, ns.b_max), _cfg(ns), ns.threads)
    return {"roots": _roots_json(roots)}


def cmd_ribbon_solve(ns):
    roots = solve_ribbon_for_omega(EnergyWeights(ns.alpha, ns.beta), ns.A, ns.B,
                                   _spec(ns, ns.omega_min, ns.omega_max), _cfg(ns), ns.threads)
    return {"roots": _roots_json(roots)}


_RESIDUALS = {
    "screw": screw_residual,
    "ribbon": ribbon_residual,
    "gamma1": gamma1_residual,
    "gamma2": gamma2_residual,
}


def cmd_residual(ns):
    r = _RESIDUALS[ns.kind](HelicoidParams(ns.A, ns.B, ns.omega), EnergyWeights(ns.alpha, ns.beta), _cfg(ns))
    return {"value": r.value, "lhs": r.lhs, "rhs": r.rhs,
            "error_estimate": r.quad.error_estimate, "converged": r.quad.converged,
            "cells_used": r.quad.cells_used}


def cmd_gradient(ns):
    g = gradient_at(HelicoidParams(ns.A, ns.B, ns.omega), ns.curve, ns.u, _cfg(ns))
    return {"gradient": list(g)}


def cmd_energy(ns):
    e = truncated_link_energy(HelicoidParams(ns.A, ns.B, ns.omega), EnergyWindow(ns.T), _cfg(ns))
    return {"energy": e, "density": e / (2.0 * ns.T)}


def cmd_basin(ns):
    bm = basin_map(EnergyWeights(ns.alpha, ns.beta), ns.A, ns.omega,
                   _spec(ns, ns.b_min, ns.b_max), _cfg(ns), ns.threads)
    rows = [(e.initial_guess, "" if e.converged_root is None else e.converged_root,
             str(e.iterations), e.outcome.value) for e in bm.entries]
    if ns.format == "csv":
        return _csv(["b0", "root", "iterations", "outcome"], rows)
    return {"method": bm.method,
            "entries": [{"b0": e.initial_guess, "root": e.converged_root,
                         "iterations": e.iterations, "outcome": e.outcome.value}
                        for e in bm.entries]}


def cmd_verify_bounds(ns):
    rep = verify_bounds(HelicoidParams(ns.A, ns.B, ns.omega))
    if ns.format == "json":
        return {"passed": rep.passed, "checks": rep.checks, "findings": rep.findings}
    lines = []
    for c in rep.checks:
        vals = ", ".join(f"{k}={fmt(v) if isinstance(v, float) else v}"
                         for k, v in c.items() if k not in ("name", "passed"))
        lines.append(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}: {vals}")
    for f in rep.findings:
        lines.append(f"{'holds' if f['holds'] else 'FAILS'}  (finding) {f['name']}")
    lines.append(f"overall: {'PASS' if rep.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


def cmd_certificate(ns):
    c = positivity_certificate(HelicoidParams(ns.A, ns.B, ns.omega), _cfg(ns))
    if ns.format == "text":
        return f"{c.case.value}: integral {c.numeric_integral_sign}\n"
    return {"case": c.case.value, "details": c.details, "numeric_integral_sign": c.numeric_integral_sign}


_EXTREMA_TARGETS = {Extremum.SUM_SQUARES: -0.5, Extremum.COS_COEFF: 2.0, Extremum.SUM_PRODUCT: -1.0}


def cmd_extrema(ns):
    vals = {w.value: triangle_extrema_oracle(w, ns.grid, ns.margin) for w in Extremum}
    if ns.format == "json":
        return {k: {"value": v, "expected": _EXTREMA_TARGETS[Extremum(k)]} for k, v in vals.items()}
    return "".join(f"{k}: {fmt(v)} (expected {fmt(_EXTREMA_TARGETS[Extremum(k)])})\n"
                   for k, v in vals.items())


def cmd_riemann_min(ns):
    w, v = minimize_riemann_bound(ns.omega_min, ns.omega_max)
    if ns.format == "json":
        return {"omega_star": w, "value": v}
    return f"minimum {fmt(v)} at omega = {fmt(w)}\n"


def cmd_bounds_tail(ns):
    t = tail_closed_form()
    ok = t.at_least_three_tenths and t.abs_diff <= 1e-9
    if ns.format == "json":
        return {"value": t.value, "numeric": t.numeric, "abs_diff": t.abs_diff, "passed": ok}
    return (f"{fmt(t.value)} ≥ 0.3: {'PASS' if t.at_least_three_tenths else 'FAIL'}\n"
            f"quadrature {fmt(t.numeric)} (|diff| {format(t.abs_diff, '.3g')}): "
            f"{'PASS' if t.abs_diff <= 1e-9 else 'FAIL'}\n")


def cmd_sweep(ns):
    fixed = {k: getattr(ns, k) for k in ("A", "B", "omega") if k != ns.param}
    missing = [f"--{k}" for k, v in fixed.items() if v is None]
    if missing:
        raise UsageError(f"sweep over {ns.param} needs {', '.join(missing)}")
    if ns.sweep_n < 2:
        raise UsageError("--n must be at least 2")
    values = np.linspace(ns.sweep_min, ns.sweep_max, ns.sweep_n)
    w, cfg, fn = EnergyWeights(ns.alpha, ns.beta), _cfg(ns), _RESIDUALS[ns.kind]

    def row(x):
        p = dict(fixed, **{ns.param: float(x)})
        return (ns.alpha, ns.beta, p["A"], p["B"], p["omega"],
                fn(HelicoidParams(p["A"], p["B"], p["omega"]), w, cfg).value)

    rows = _map_ordered(row, list(values), ns.threads)
    if ns.format == "csv":
        return _csv(["alpha", "beta", "A", "B", "omega", "residual"], rows)
    return {"rows": [dict(zip(["alpha", "beta", "A", "B", "omega", "residual"], r)) for r in rows]}


def cmd_mesh(ns):
    m = helicoid_mesh(MeshSpec(HelicoidParams(ns.A, ns.B, ns.omega), ns.t_min, ns.t_max, ns.ns, ns.nt))
    return write_obj(m)


def write_obj(mesh) -> str:
    out = io.StringIO()
    for x, y, z in mesh.vertices:
        out.write(f"v {x:.9g} {y:.9g} {z:.9g}\n")
    for i, j, k in mesh.triangles + 1:
        out.write(f"f {i} {j} {k}\n")
    return out.getvalue()


def cmd_integrand_plot(ns):
    if ns.n < 2 or not ns.v_min < ns.v_max:
        raise UsageError("integrand-plot needs --n >= 2 and --v-min < --v-max")
    v = np.linspace(ns.v_min, ns.v_max, ns.n)
    g = ribbon_integrand(HelicoidParams(ns.A, ns.B, ns.omega), v)
    return _csv(["v", "integrand"], zip(v, g))


COMMANDS = {
    "screw-solve": cmd_screw_solve,
    "ribbon-solve": cmd_ribbon_solve,
    "residual": cmd_residual,
    "gradient": cmd_gradient,
    "energy": cmd_energy,
    "basin": cmd_basin,
    "verify-bounds": cmd_verify_bounds,
    "certificate": cmd_certificate,
    "extrema": cmd_extrema,
    "riemann-min": cmd_riemann_min,
    "bounds-tail": cmd_bounds_tail,
    "sweep": cmd_sweep,
    "mesh": cmd_mesh,
    "integrand-plot": cmd_integrand_plot,
}


def _config(ns) -> dict:
    cfg = {k: v for k, v in sorted(vars(ns).items()) if k not in ("output", "command")}
    cfg["kernel_backend"] = _kernels.BACKEND
    return cfg


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", BudgetExceeded)
        try:
            results = COMMANDS[ns.command](ns)
        except (UsageError, HelixError) as exc:
            print(f"helixpair {ns.command}: {exc}", file=stderr)
            return EXIT_USAGE
    if not isinstance(results, str):
        results = _json(ns.command, _config(ns), results)
    if ns.output:
        with open(ns.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(results)
    else:
        stdout.write(results)
    if any(issubclass(w.category, BudgetExceeded) for w in caught):
        print(f"helixpair {ns.command}: quadrature did not converge within the cell budget",
              file=stderr)
        return EXIT_NONCONVERGED
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
