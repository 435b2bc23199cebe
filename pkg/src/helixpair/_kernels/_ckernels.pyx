# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integrand kernels; same contract as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, sqrt, fabs, pow

cnp.import_array()

DEF GAMMA1 = 0
DEF GAMMA2 = 1
DEF SCREW = 2
DEF RIBBON = 3
DEF ODD_Y = 4
DEF ODD_Z = 5
DEF GRADIENT = 6
DEF ENERGY = 7

cdef double EPMACH = 2.220446049250313e-16
cdef double UFLOW = 2.2250738585072014e-308

cdef double XGK[8]
cdef double WGK[8]
cdef double WG[4]
XGK[:] = [0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
          0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
          0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
          0.207784955007898467600689403773245, 0.0]
WGK[:] = [0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
          0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
          0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
          0.204432940075298892414161999234649, 0.209482141084727828012999174891714]
WG[:] = [0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
         0.381830050505118944950369775488975, 0.417959183673469387755102040816327]


cdef inline double chord(double a, double b, double w, double v) noexcept nogil:
    return a * a - 2.0 * a * b * cos(w * v) + b * b + v * v


cdef double feval(int fam, const double* p, double x) noexcept nogil:
    cdef double a, b, w, d, s, q, sn, num
    cdef double rs, ro, u, dx, dy, dz, proj, pk, nk
    cdef int k
    if fam == GAMMA1:
        a = p[0]; b = p[1]; w = p[2]
        d = chord(a, b, w, x)
        s = sqrt(w * w * b * b + 1.0)
        return (2.0 * (b * cos(w * x) - a) / d - 1.0) * s / d
    elif fam == GAMMA2:
        a = p[0]; b = p[1]; w = p[2]
        d = chord(a, b, w, x)
        s = sqrt(w * w * a * a + 1.0)
        return (2.0 * (a * cos(w * x) - b) / d + 1.0) * s / d
    elif fam == SCREW:
        a = p[0]; b = p[1]; w = p[2]
        d = chord(a, b, w, x)
        return (a + b) * (cos(w * x) - 1.0) / (d * d)
    elif fam == RIBBON:
        a = p[0]; b = p[1]; w = p[2]
        d = chord(a, b, w, x)
        num = a * a - a + b * b - b + (a + b - 2.0 * a * b) * cos(w * x) + x * x
        return num / (d * d)
    elif fam == ODD_Y:
        a = p[0]; b = p[1]; w = p[2]
        d = chord(a, b, w, x)
        sn = sin(w * x)
        q = w * w * a * a + 1.0
        return (b * sn - (x + w * w * a * a * b * sn) / q) / (d * d)
    elif fam == ODD_Z:
        a = p[0]; b = p[1]; w = p[2]
        d = chord(a, b, w, x)
        q = w * w * a * a + 1.0
        return (x - (w * a * b * sin(w * x) + x) / q) / (d * d)
    elif fam == GRADIENT:
        rs = p[0]; ro = p[1]; w = p[2]; u = p[3]
        k = <int>p[10]
        dx = ro * cos(w * (u + x)) - rs * cos(w * u)
        dy = ro * sin(w * (u + x)) - rs * sin(w * u)
        dz = x
        d = dx * dx + dy * dy + dz * dz
        proj = dx * p[4] + dy * p[5] + dz * p[6]
        if k == 0:
            pk = dx - proj * p[4]; nk = p[7]
        elif k == 1:
            pk = dy - proj * p[5]; nk = p[8]
        else:
            pk = dz - proj * p[6]; nk = p[9]
        s = sqrt(w * w * ro * ro + 1.0)
        return 2.0 * (2.0 * pk / d - nk) * s / d
    elif fam == ENERGY:
        return p[4] / chord(p[0], p[1], p[2], x - p[3])
    return 0.0


cdef inline double fpoint(int fam, const double* p, double x, bint fold) noexcept nogil:
    if fold:
        return 0.5 * (feval(fam, p, x) + feval(fam, p, -x))
    return feval(fam, p, x)


def evaluate(int family, p, x):
    """Evaluate integrand ``family`` with parameters ``p`` at ``x``."""
    if family < GAMMA1 or family > ENERGY:
        raise ValueError(f"unknown integrand family {family}")
    cdef double[::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    xa = np.asarray(x, dtype=np.float64)
    flat = np.ascontiguousarray(xa.ravel())
    out = np.empty_like(flat)
    cdef double[::1] xv = flat
    cdef double[::1] ov = out
    cdef Py_ssize_t i, n = xv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = feval(family, &pv[0], xv[i])
    return out.reshape(xa.shape)


def gk15(int family, p, a, b, bint fold):
    """Gauss-Kronrod 7/15 on every cell; returns (result, abserr, resabs)."""
    if family < GAMMA1 or family > ENERGY:
        raise ValueError(f"unknown integrand family {family}")
    cdef double[::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    cdef double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t n = av.shape[0]
    res_arr = np.empty(n)
    err_arr = np.empty(n)
    abs_arr = np.empty(n)
    cdef double[::1] res = res_arr
    cdef double[::1] err = err_arr
    cdef double[::1] rab = abs_arr
    cdef Py_ssize_t i
    cdef int j, jtw, jtwm1
    cdef double centr, hlgth, dhlgth, fc, resg, resk, resabs, resasc, reskh
    cdef double absc, f1, f2, abserr
    cdef double fv1[7]
    cdef double fv2[7]
    cdef const double* pp = &pv[0]
    with nogil:
        for i in range(n):
            centr = 0.5 * (av[i] + bv[i])
            hlgth = 0.5 * (bv[i] - av[i])
            dhlgth = fabs(hlgth)
            fc = fpoint(family, pp, centr, fold)
            resg = fc * WG[3]
            resk = fc * WGK[7]
            resabs = fabs(resk)
            for j in range(3):
                jtw = 2 * j + 1
                absc = hlgth * XGK[jtw]
                f1 = fpoint(family, pp, centr - absc, fold)
                f2 = fpoint(family, pp, centr + absc, fold)
                fv1[jtw] = f1
                fv2[jtw] = f2
                resg = resg + WG[j] * (f1 + f2)
                resk = resk + WGK[jtw] * (f1 + f2)
                resabs = resabs + WGK[jtw] * (fabs(f1) + fabs(f2))
            for j in range(4):
                jtwm1 = 2 * j
                absc = hlgth * XGK[jtwm1]
                f1 = fpoint(family, pp, centr - absc, fold)
                f2 = fpoint(family, pp, centr + absc, fold)
                fv1[jtwm1] = f1
                fv2[jtwm1] = f2
                resk = resk + WGK[jtwm1] * (f1 + f2)
                resabs = resabs + WGK[jtwm1] * (fabs(f1) + fabs(f2))
            reskh = resk * 0.5
            resasc = WGK[7] * fabs(fc - reskh)
            for j in range(7):
                resasc = resasc + WGK[j] * (fabs(fv1[j] - reskh) + fabs(fv2[j] - reskh))
            res[i] = resk * hlgth
            resabs = resabs * dhlgth
            resasc = resasc * dhlgth
            abserr = fabs((resk - resg) * hlgth)
            if resasc != 0.0 and abserr != 0.0:
                abserr = resasc * min(1.0, pow(200.0 * abserr / resasc, 1.5))
            if resabs > UFLOW / (50.0 * EPMACH):
                abserr = max(EPMACH * 50.0 * resabs, abserr)
            err[i] = abserr
            rab[i] = resabs
    return res_arr, err_arr, abs_arr
