"""NumPy implementation of the integrand kernels.

Mirrors ``_ckernels.pyx`` exactly; selected at import when the compiled
extension is missing or ``HELIXPAIR_PURE_PYTHON`` is set.
"""

import numpy as np

from helixpair._kernels.gk15 import XGK, WGK, WG

GAMMA1 = 0
GAMMA2 = 1
SCREW = 2
RIBBON = 3
ODD_Y = 4
ODD_Z = 5
GRADIENT = 6
ENERGY = 7

_EPS = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny

# 15 abscissae on [-1, 1] ordered left to right, with matching weights.
_NODES = np.concatenate([-XGK[:-1], [0.0], XGK[:-1][::-1]])
_KW = np.concatenate([WGK[:-1], [WGK[-1]], WGK[:-1][::-1]])
_GW_HALF = np.zeros(8)
_GW_HALF[1::2] = WG
_GW = np.concatenate([_GW_HALF[:-1], [_GW_HALF[-1]], _GW_HALF[:-1][::-1]])


def _chord(a, b, w, v):
    return a * a - 2.0 * a * b * np.cos(w * v) + b * b + v * v


def evaluate(family, p, x):
    """Evaluate integrand ``family`` with parameter vector ``p`` at ``x``."""
    x = np.asarray(x, dtype=float)
    if family == GAMMA1:
        a, b, w = p[0], p[1], p[2]
        d = _chord(a, b, w, x)
        s = np.sqrt(w * w * b * b + 1.0)
        return (2.0 * (b * np.cos(w * x) - a) / d - 1.0) * s / d
    if family == GAMMA2:
        a, b, w = p[0], p[1], p[2]
        d = _chord(a, b, w, x)
        s = np.sqrt(w * w * a * a + 1.0)
        return (2.0 * (a * np.cos(w * x) - b) / d + 1.0) * s / d
    if family == SCREW:
        a, b, w = p[0], p[1], p[2]
        d = _chord(a, b, w, x)
        return (a + b) * (np.cos(w * x) - 1.0) / (d * d)
    if family == RIBBON:
        a, b, w = p[0], p[1], p[2]
        d = _chord(a, b, w, x)
        num = a * a - a + b * b - b + (a + b - 2.0 * a * b) * np.cos(w * x) + x * x
        return num / (d * d)
    if family == ODD_Y:
        a, b, w = p[0], p[1], p[2]
        d = _chord(a, b, w, x)
        sn = np.sin(w * x)
        q = w * w * a * a + 1.0
        return (b * sn - (x + w * w * a * a * b * sn) / q) / (d * d)
    if family == ODD_Z:
        a, b, w = p[0], p[1], p[2]
        d = _chord(a, b, w, x)
        q = w * w * a * a + 1.0
        return (x - (w * a * b * np.sin(w * x) + x) / q) / (d * d)
    if family == GRADIENT:
        rs, ro, w, u = p[0], p[1], p[2], p[3]
        tx, ty, tz, nx, ny, nz, k = p[4], p[5], p[6], p[7], p[8], p[9], int(p[10])
        dx = ro * np.cos(w * (u + x)) - rs * np.cos(w * u)
        dy = ro * np.sin(w * (u + x)) - rs * np.sin(w * u)
        dz = x
        d = dx * dx + dy * dy + dz * dz
        proj = dx * tx + dy * ty + dz * tz
        if k == 0:
            pk, nk = dx - proj * tx, nx
        elif k == 1:
            pk, nk = dy - proj * ty, ny
        else:
            pk, nk = dz - proj * tz, nz
        s = np.sqrt(w * w * ro * ro + 1.0)
        return 2.0 * (2.0 * pk / d - nk) * s / d
    if family == ENERGY:
        a, b, w, u, scale = p[0], p[1], p[2], p[3], p[4]
        return scale / _chord(a, b, w, x - u)
    raise ValueError(f"unknown integrand family {family}")


def gk15(family, p, a, b, fold):
    """Gauss-Kronrod 7/15 on every cell ``[a[i], b[i]]``.

    Returns ``(result, abserr, resabs)`` arrays with the QUADPACK error
    heuristic. With ``fold`` the integrand is replaced by its even part.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    p = np.asarray(p, dtype=float)
    centr = 0.5 * (a + b)
    hlgth = 0.5 * (b - a)
    x = centr[:, None] + hlgth[:, None] * _NODES[None, :]
    fv = evaluate(family, p, x)
    if fold:
        fv = 0.5 * (fv + evaluate(family, p, -x))
    return _combine(fv, hlgth)


def gk15_callable(f, a, b, fold):
    """Same rule as :func:`gk15` for an arbitrary vectorised callable."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    centr = 0.5 * (a + b)
    hlgth = 0.5 * (b - a)
    x = centr[:, None] + hlgth[:, None] * _NODES[None, :]
    fv = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    if fold:
        fv = 0.5 * (fv + np.asarray(f(-x.ravel()), dtype=float).reshape(x.shape))
    return _combine(fv, hlgth)


def _combine(fv, hlgth):
    resk = fv @ _KW
    resg = fv @ _GW
    reskh = 0.5 * resk
    dh = np.abs(hlgth)
    resabs = (np.abs(fv) @ _KW) * dh
    resasc = (np.abs(fv - reskh[:, None]) @ _KW) * dh
    result = resk * hlgth
    abserr = np.abs((resk - resg) * hlgth)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * abserr / resasc) ** 1.5)
    abserr = np.where((resasc != 0.0) & (abserr != 0.0), scaled, abserr)
    floor = 50.0 * _EPS * resabs
    abserr = np.where(resabs > _UFLOW / (50.0 * _EPS), np.maximum(floor, abserr), abserr)
    return result, abserr, resabs
