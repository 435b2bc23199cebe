import math

import pytest

from helixpair.geometry import HelixError
from helixpair.solver import (
    Classification,
    DegenerateWeights,
    Outcome,
    SearchSpec,
    basin_map,
    classify,
    find_roots_1d,
    newton_screw,
    solve_ribbon_for_omega,
    solve_screw_for_B,
)
from helixpair.variational import EnergyWeights

W = EnergyWeights(2.0, 1.0)


def test_find_roots_simple_function():
    roots = find_roots_1d(math.sin, SearchSpec(0.5, 10.0, 100))
    assert [round(r.value, 9) for r in roots] == [round(k * math.pi, 9) for k in (1, 2, 3)]


def test_find_roots_exact_grid_zero_not_duplicated():
    roots = find_roots_1d(lambda x: x - 0.5, SearchSpec(0.0, 1.0, 3))
    assert len(roots) == 1 and roots[0].value == 0.5 and roots[0].residual == 0.0


def test_find_roots_threads_deterministic():
    f = lambda x: math.cos(3 * x) - 0.2  # noqa: E731
    a = find_roots_1d(f, SearchSpec(0, 10, 200), threads=1)
    b = find_roots_1d(f, SearchSpec(0, 10, 200), threads=4)
    assert a == b


def test_search_spec_validation():
    with pytest.raises(HelixError):
        SearchSpec(1.0, 1.0)
    with pytest.raises(HelixError):
        SearchSpec(0.0, 1.0, grid_n=1)


def test_classify():
    assert classify(-1.0, 1.0 + 1e-9, 1e-8) is Classification.SYMMETRIC
    assert classify(-1.0, 1.1, 1e-8) is Classification.ASYMMETRIC


def test_screw_roots():
    roots = solve_screw_for_B(W, -1.0, 2.0, SearchSpec(0.1, 10.0))
    assert len(roots) == 2
    assert roots[0].value == pytest.approx(1.0, abs=1e-9)
    assert roots[0].classification is Classification.SYMMETRIC
    assert roots[1].value == pytest.approx(6.15375, rel=1e-5)
    assert roots[1].classification is Classification.ASYMMETRIC
    assert all(abs(r.residual) < 1e-9 for r in roots)


def test_symmetric_root_for_other_radius():
    roots = solve_screw_for_B(W, -3.0, 2.0, SearchSpec(0.5, 4.0, 64))
    assert any(abs(r.value - 3.0) < 1e-9 and r.classification is Classification.SYMMETRIC for r in roots)


def test_ribbon_root():
    roots = solve_ribbon_for_omega(EnergyWeights(1, 1), 0.001, 0.002, SearchSpec(1.0, 100.0))
    assert len(roots) == 1
    assert roots[0].value == pytest.approx(37.0171, rel=1e-4)
    assert roots[0].classification is None


def test_degenerate_weights():
    with pytest.raises(DegenerateWeights):
        solve_screw_for_B(EnergyWeights(0, 0), -1.0, 2.0, SearchSpec(0.1, 1.0))


@pytest.mark.parametrize("bad", [dict(A=0.5), dict(lo=-1.0)])
def test_screw_solve_guards(bad):
    A = bad.get("A", -1.0)
    with pytest.raises(HelixError):
        solve_screw_for_B(W, A, 2.0, SearchSpec(bad.get("lo", 0.1), 2.0, 8))


def test_ribbon_solve_guards():
    with pytest.raises(HelixError):
        solve_ribbon_for_omega(W, -0.1, 1.0, SearchSpec(1, 2, 4))
    with pytest.raises(HelixError):
        solve_ribbon_for_omega(W, 0.1, 1.0, SearchSpec(-1, 2, 4))


@pytest.mark.parametrize("b0,root", [(0.9, 1.0), (5.5, 6.153754987971088)])
def test_newton_converges(b0, root):
    e = newton_screw(W, -1.0, 2.0, b0)
    assert e.outcome is Outcome.CONVERGED
    assert e.converged_root == pytest.approx(root, abs=1e-8)


def test_basin_map_labels_and_snaps():
    spec = SearchSpec(0.5, 7.0, 8)
    bm = basin_map(W, -1.0, 2.0, spec)
    assert "Newton" in bm.method and "experiment" in bm.method
    assert [e.initial_guess for e in bm.entries] == list(spec.grid())
    roots = [r.value for r in solve_screw_for_B(W, -1.0, 2.0, spec)]
    converged = [e for e in bm.entries if e.outcome is Outcome.CONVERGED]
    assert converged
    for e in converged:
        near = min(roots, key=lambda r: abs(r - e.converged_root))
        assert e.converged_root == near or abs(e.converged_root - near) > spec.dedupe_tol
    for e in bm.entries:
        assert (e.converged_root is None) == (e.outcome is not Outcome.CONVERGED)
