"""Integrand kernels with a compiled core and a NumPy fallback.

The Cython extension ``_ckernels`` is used when it imports; otherwise the
pure NumPy module ``_pykernels`` takes over. Set ``HELIXPAIR_PURE_PYTHON=1``
to force the fallback.
"""

import importlib
import os

from helixpair._kernels._pykernels import (  # noqa: F401  (family codes)
    ENERGY,
    GAMMA1,
    GAMMA2,
    GRADIENT,
    ODD_Y,
    ODD_Z,
    RIBBON,
    SCREW,
)
from helixpair._kernels import _pykernels

FAMILIES = {
    "gamma1": GAMMA1,
    "gamma2": GAMMA2,
    "screw": SCREW,
    "ribbon": RIBBON,
    "odd_y": ODD_Y,
    "odd_z": ODD_Z,
    "gradient": GRADIENT,
    "energy": ENERGY,
}


def load_backend(name):
    """Return the kernel module for ``"cython"`` or ``"python"``."""
    if name == "python":
        return _pykernels
    if name == "cython":
        return importlib.import_module("helixpair._kernels._ckernels")
    raise ValueError(f"unknown kernel backend {name!r}")


def available_backends():
    names = ["python"]
    try:
        load_backend("cython")
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


if os.environ.get("HELIXPAIR_PURE_PYTHON"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        _impl = load_backend("cython")
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

evaluate = _impl.evaluate
gk15 = _impl.gk15
gk15_callable = _pykernels.gk15_callable
