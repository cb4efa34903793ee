# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: stationary coefficients and clock times over arrays of k1.

Element-wise twin of ``_kernels_py``; see that module for the formulas.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, sin, cos, tanh, exp, NAN, fabs

cnp.import_array()

cdef double SMALL_U = 0.5
cdef double SYMMETRY_EPS = 1e-300

cdef enum:
    PROPAGATING = 0
    EVANESCENT = 1
    BELOW_RIGHT_LEVEL = 2

N_COMPONENTS = 8

cdef double[11] H_COEFFS
cdef int _n, _j
cdef double _fact
for _n in range(1, 12):
    _fact = 1.0
    for _j in range(2, 2 * _n + 2):
        _fact *= _j
    H_COEFFS[_n - 1] = (-1.0) ** (_n + 1) * 4.0 ** _n / _fact


cdef inline double _h_series(double w) nogil:
    cdef double out = 0.0
    cdef int i
    for i in range(10, -1, -1):
        out = out * w + H_COEFFS[i]
    return out


cdef inline double _sech2(double x) nogil:
    cdef double e = exp(-2.0 * x)
    return 4.0 * e / ((1.0 + e) * (1.0 + e))


cdef inline void _propagating(double k1, double k3, double k2sq, double a,
                              double* num_p, double* den_p, double* num_m, double* den_m) nogil:
    # both kappa = +k3 and kappa = -k3; the transcendental parts depend on u only
    cdef double k2 = sqrt(k2sq)
    cdef double u = k2 * a
    cdef double w = u * u
    cdef double h, sn, s2, cc, aa, s, p
    if u < SMALL_U:
        h = _h_series(w)
    else:
        h = (1.0 - sin(2.0 * u) / (2.0 * u)) / w
    if u < 1e-4:
        sn = 1.0 - w / 6.0 + w * w / 120.0
    else:
        sn = sin(u) / u
    s2 = 1.0 - w * h
    cc = cos(u)
    cc = cc * cc
    aa = a * a * sn * sn
    s = k1 + k3
    p = k2sq + k1 * k3
    den_p[0] = s * s * cc + p * p * aa
    num_p[0] = 1.0 + s2 + k1 * k3 * a * a * h
    s = k1 - k3
    p = k2sq - k1 * k3
    den_m[0] = s * s * cc + p * p * aa
    num_m[0] = 1.0 + s2 - k1 * k3 * a * a * h


cdef inline void _evanescent(double k1, double k3, double k2sq, double a,
                             double* num_p, double* den_p, double* num_m, double* den_m,
                             double* se2_out) nogil:
    cdef double q = sqrt(-k2sq)
    cdef double x = q * a
    cdef double se2 = _sech2(x)
    cdef double tx, g, s, p, tt
    if x < 1e-4:
        tx = 1.0 - x * x / 3.0
    else:
        tx = tanh(x) / x
    if x < SMALL_U:
        g = _h_series(-x * x) * se2
    else:
        g = (tx - se2) / (x * x)
    tt = a * a * tx * tx
    s = k1 + k3
    p = k2sq + k1 * k3
    den_p[0] = s * s + p * p * tt
    num_p[0] = se2 + tx + k1 * k3 * a * a * g
    s = k1 - k3
    p = k2sq - k1 * k3
    den_m[0] = s * s + p * p * tt
    num_m[0] = se2 + tx - k1 * k3 * a * a * g
    se2_out[0] = se2


cdef void _point(double k1, double v0, double v1, double a, double hbar, double mu,
                 signed char* regime, double* T, double* R, double* t_ct,
                 double* t_0, double* t_cr, double* tau_d) nogil:
    cdef double scale = 2.0 * mu / (hbar * hbar)
    cdef double k2sq = k1 * k1 - scale * v0
    cdef double k3sq = k1 * k1 - scale * v1
    cdef double pref = mu * a / hbar
    cdef bint symmetric = fabs(v1) < SYMMETRY_EPS
    cdef double k3, num_p, den_p, num_m, den_m, se2
    cdef double q2, q3, x, th, X, Y, dX, dY

    if v1 > 0.0 and k3sq <= 0.0:
        q2 = sqrt(-k2sq)
        q3 = sqrt(-k3sq)
        x = q2 * a
        th = tanh(x)
        se2 = _sech2(x)
        X = -q2 * (q3 + q2 * th)
        Y = k1 * (q2 + q3 * th)
        dX = -q3 - 2.0 * q2 * th - q2 * q2 * a * se2
        dY = k1 + k1 * q3 * a * se2
        regime[0] = BELOW_RIGHT_LEVEL
        T[0] = 0.0
        R[0] = 1.0
        t_ct[0] = NAN
        t_0[0] = NAN
        t_cr[0] = 2.0 * mu / (hbar * q2) * (X * dY - Y * dX) / (X * X + Y * Y)
        tau_d[0] = t_cr[0]
        return

    k3 = sqrt(k3sq)
    if k2sq >= 0.0:
        regime[0] = PROPAGATING
        _propagating(k1, k3, k2sq, a, &num_p, &den_p, &num_m, &den_m)
        T[0] = 4.0 * k1 * k3 / den_p
    else:
        regime[0] = EVANESCENT
        _evanescent(k1, k3, k2sq, a, &num_p, &den_p, &num_m, &den_m, &se2)
        T[0] = 4.0 * k1 * k3 * se2 / den_p
    R[0] = den_m / den_p
    t_ct[0] = pref * (k1 + k3) * num_p / den_p
    if symmetric:
        t_0[0] = 0.0
    else:
        t_0[0] = pref * (k1 - k3) * num_m / den_m
    t_cr[0] = t_ct[0] + t_0[0]
    tau_d[0] = t_ct[0] + R[0] * t_0[0]


def barrier_times(k1, double v0, double v1, double a, double hbar=1.0, double mu=1.0):
    """Coefficients and stationary times for every entry of ``k1``.

    Returns ``(regime, T, R, t_ct, t_0, t_cr, tau_d)``.
    """
    cdef double[::1] kv = np.ascontiguousarray(k1, dtype=np.float64)
    cdef Py_ssize_t n = kv.shape[0], i
    regime_a = np.empty(n, dtype=np.int8)
    T_a = np.empty(n)
    R_a = np.empty(n)
    tct_a = np.empty(n)
    t0_a = np.empty(n)
    tcr_a = np.empty(n)
    tau_a = np.empty(n)
    cdef signed char[::1] rg = regime_a
    cdef double[::1] T = T_a, R = R_a, tct = tct_a, t0 = t0_a, tcr = tcr_a, tau = tau_a
    with nogil:
        for i in range(n):
            _point(kv[i], v0, v1, a, hbar, mu, &rg[i], &T[i], &R[i], &tct[i],
                   &t0[i], &tcr[i], &tau[i])
    return regime_a, T_a, R_a, tct_a, t0_a, tcr_a, tau_a


def ensemble_integrand(k, double k0, double sigma, double v0, double v1, double a,
                       double hbar=1.0, double mu=1.0):
    """Integrand columns for the wave-packet averages, shape ``(len(k), 8)``."""
    cdef double[::1] kv = np.ascontiguousarray(k, dtype=np.float64)
    cdef Py_ssize_t n = kv.shape[0], i
    out_a = np.empty((n, 8))
    cdef double[:, ::1] out = out_a
    cdef double norm = sqrt(2.0 / 3.141592653589793) * sigma
    cdef double d, w, wT, wR, T, R, tct, t0, tcr, tau
    cdef signed char rg
    with nogil:
        for i in range(n):
            _point(kv[i], v0, v1, a, hbar, mu, &rg, &T, &R, &tct, &t0, &tcr, &tau)
            d = kv[i] - k0
            w = norm * exp(-2.0 * sigma * sigma * d * d)
            wT = w * T
            wR = w * R
            out[i, 0] = w
            out[i, 1] = wT
            out[i, 2] = wR
            out[i, 4] = wR * tcr
            out[i, 6] = wR * tau
            if rg == BELOW_RIGHT_LEVEL:
                out[i, 3] = 0.0
                out[i, 5] = 0.0
                out[i, 7] = 0.0
            else:
                out[i, 3] = wT * tct
                out[i, 5] = wT * tau
                out[i, 7] = wT * R * t0
    return out_a
