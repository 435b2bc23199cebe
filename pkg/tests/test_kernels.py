import os
import subprocess
import sys

import numpy as np
import pytest

from helixpair import _kernels

PARAMS = {
    "gamma1": [-1.0, 2.0, 1.5],
    "gamma2": [-1.0, 2.0, 1.5],
    "screw": [-0.5, 3.0, 2.0],
    "ribbon": [0.1, 1.0, 10.0],
    "odd_y": [-1.0, 2.0, 1.5],
    "odd_z": [-1.0, 2.0, 1.5],
    "gradient": [-1.0, 1.3, 2.0, 0.7, 0.1, -0.2, 0.97, -0.6, 0.8, 0.0, 1.0],
    "energy": [-1.0, 1.3, 2.0, 0.4, 3.7],
}

backends = pytest.mark.skipif("cython" not in _kernels.available_backends(),
                              reason="compiled kernels not built")


@backends
@pytest.mark.parametrize("name", sorted(PARAMS))
def test_evaluate_backends_agree(name):
    c, py = _kernels.load_backend("cython"), _kernels.load_backend("python")
    fam, p = _kernels.FAMILIES[name], np.array(PARAMS[name])
    x = np.linspace(-20.0, 20.0, 4001)
    np.testing.assert_allclose(c.evaluate(fam, p, x), py.evaluate(fam, p, x), rtol=1e-13, atol=1e-15)


@backends
@pytest.mark.parametrize("name", sorted(PARAMS))
@pytest.mark.parametrize("fold", [False, True])
def test_gk15_backends_agree(name, fold):
    c, py = _kernels.load_backend("cython"), _kernels.load_backend("python")
    fam, p = _kernels.FAMILIES[name], np.array(PARAMS[name])
    edges = np.linspace(0.0, 12.0, 97)
    a, b = edges[:-1], edges[1:]
    for got, want in zip(c.gk15(fam, p, a, b, fold), py.gk15(fam, p, a, b, fold)):
        np.testing.assert_allclose(got, want, rtol=1e-12, atol=1e-16)


def test_unknown_backend():
    with pytest.raises(ValueError):
        _kernels.load_backend("fortran")


def test_scalar_evaluate_shape():
    out = _kernels.evaluate(_kernels.SCREW, np.array([-1.0, 2.0, 1.0]), np.asarray(0.5))
    assert np.ndim(out) == 0


def test_pure_python_fallback_selected_by_env():
    code = (
        "from helixpair import _kernels, KERNEL_BACKEND;"
        "from helixpair.geometry import HelicoidParams;"
        "from helixpair.variational import screw_residual, EnergyWeights;"
        "r = screw_residual(HelicoidParams(-1.0, 6.153754987971088, 2.0), EnergyWeights(2, 1));"
        "print(_kernels.BACKEND, KERNEL_BACKEND, abs(r.value) < 1e-8)"
    )
    env = dict(os.environ, HELIXPAIR_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "python", "True"]
